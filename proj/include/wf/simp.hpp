#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wf/chain.hpp"
#include "wf/filt.hpp"

namespace wf {

// Finite simplicial complex on integer vertices.  Simplices are sorted
// vertex lists, stored per dimension and face-closed.
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    static SimplicialComplex from_maximal(int n_vertices,
                                          const std::vector<std::vector<int>>& maximal);

    int n_vertices() const { return n_vertices_; }
    int dim() const { return int(by_dim_.size()) - 1; }
    bool empty() const { return by_dim_.empty(); }

    std::size_t count(int d) const {
        if (d < 0 || d > dim()) return 0;
        return by_dim_[std::size_t(d)].size();
    }
    std::size_t total_count() const;

    const std::vector<int>& simplex(int d, std::size_t i) const { return by_dim_[std::size_t(d)][i]; }
    bool has(const std::vector<int>& s) const { return index_.count(s) > 0; }
    std::optional<std::pair<int, std::size_t>> find(const std::vector<int>& s) const;

    // global simplex ids: contiguous by dimension
    std::size_t global_id(int d, std::size_t i) const { return offset_[std::size_t(d)] + i; }
    std::pair<int, std::size_t> from_global(std::size_t gid) const;
    std::size_t n_simplices() const { return n_simplices_; }

    BitMatrix boundary_matrix(int d) const;
    ChainComplex chain_complex() const;

    // cofaces (all simplices strictly or weakly containing), including the
    // simplex itself
    const std::vector<std::size_t>& cofaces(std::size_t gid) const;

    // link of a simplex as a complex on the same ambient vertex set
    SimplicialComplex link(const std::vector<int>& s) const;

    // complemented homology-sphere test: all reduced homology concentrated
    // as for the d-sphere; d = -1 means the empty complex
    bool is_z2_sphere(int d) const;

    std::vector<std::size_t> homology_dims() const;

    // connected components as sets of global simplex ids
    std::vector<std::vector<std::size_t>> components() const;

    static std::string simplex_label(const std::vector<int>& s);

  private:
    int n_vertices_ = 0;
    std::vector<std::vector<std::vector<int>>> by_dim_;
    std::map<std::vector<int>, std::pair<int, std::size_t>> index_;
    std::vector<std::size_t> offset_;
    std::size_t n_simplices_ = 0;
    mutable std::vector<std::vector<std::size_t>> cofaces_;

    void build_cofaces() const;
};

// Triangulated compact variety together with the divisor subcomplexes.
struct GoodCompData {
    SimplicialComplex K;
    std::vector<std::string> divisor_names;
    // per divisor: membership flag per global simplex id
    std::vector<std::vector<char>> divisor_member;

    static GoodCompData build(SimplicialComplex k, std::vector<std::string> names,
                              const std::vector<std::vector<std::vector<int>>>& divisor_maximal);

    int dim() const { return K.dim(); }
    int divisor_count() const { return int(divisor_names.size()); }

    unsigned j_mask(std::size_t gid) const;
    bool in_divisor(std::size_t gid) const { return j_mask(gid) != 0; }

    // simplices of the intersection subcomplex for a divisor mask (mask 0
    // gives the whole complex), as global ids sorted
    std::vector<std::size_t> stratum(unsigned mask) const;
    // masks with nonempty stratum, ascending
    std::vector<unsigned> strata_masks() const;
    SimplicialComplex stratum_complex(unsigned mask) const;
};

Report validate_good_comp(const GoodCompData& g);

// Connected components of a punctured star: nodes are the cofaces that do
// not lie in any divisor outside ignore_mask, joined by the face relation.
struct StarPartition {
    std::vector<std::size_t> nodes;  // global ids
    std::vector<int> component;      // per node, canonical numbering
    int n_components = 0;
    int component_of(std::size_t gid) const;
};
StarPartition star_partition(const GoodCompData& g, std::size_t gid, unsigned ignore_mask);

Report nc_check(const GoodCompData& g);

struct SubdivisionResult {
    GoodCompData g;
    // barycentric vertex id -> the original simplex it subdivides
    std::vector<std::size_t> vertex_simplex;
};
SubdivisionResult barycentric_subdivide(const GoodCompData& g);

// full subcomplex of the subdivision spanned by the barycenters of
// non-divisor simplices; deformation retract of the divisor complement
SimplicialComplex complement_retract(const GoodCompData& g);

// Dual-block complex across all strata: basis (J, sigma) in degree
// (n - |J|) - dim sigma, with the cofacet and deeper-stratum differentials,
// filtered by |J|.
struct DualCellComplex {
    FilteredComplex fc;
    // per degree: (j_mask, global simplex id)
    std::vector<std::vector<std::pair<unsigned, std::size_t>>> basis;
    std::map<std::pair<unsigned, std::size_t>, std::pair<int, std::size_t>> where;  // -> (degree, pos)
};
DualCellComplex dual_cell_complex(const GoodCompData& g);

struct ComplexityResult {
    int complexity = 0;
    // witness: color per component, components listed per divisor
    std::vector<std::pair<std::string, int>> witness;
};
ComplexityResult divisor_complexity(const GoodCompData& g);

// staircase triangulation of |A| x |B|, divisors pulled back from both
// factors (A's divisors cross B, B's divisors cross A)
GoodCompData product_complex(const GoodCompData& a, const GoodCompData& b);

}  // namespace wf
