#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wf/gf2.hpp"

namespace wf {

// Bounded chain complex over the two-element field.  Degrees outside
// [min_degree, max_degree] are zero spaces.
struct ChainComplex {
    int min_degree = 0;
    int max_degree = -1;                          // empty complex when max < min
    std::vector<std::size_t> dims;                // dims[k - min_degree]
    std::vector<BitMatrix> boundary;              // boundary[k - min_degree]: C_k -> C_{k-1}
    std::vector<std::vector<std::string>> labels; // optional basis labels per degree

    bool empty() const { return max_degree < min_degree; }

    std::size_t dim(int k) const {
        if (k < min_degree || k > max_degree) return 0;
        return dims[std::size_t(k - min_degree)];
    }

    // Boundary C_k -> C_{k-1}; zero-shaped matrix outside the stored range.
    BitMatrix d(int k) const {
        if (k < min_degree || k > max_degree) return BitMatrix(dim(k - 1), dim(k));
        return boundary[std::size_t(k - min_degree)];
    }

    const std::string& label(int k, std::size_t i) const;

    // Degree of the first failure of the square-zero law, if any.
    std::optional<int> validate() const;

    std::size_t total_dim() const {
        std::size_t t = 0;
        for (auto d_ : dims) t += d_;
        return t;
    }
};

// Builder that assigns contiguous indices per degree.
class ComplexBuilder {
  public:
    ComplexBuilder(int min_degree, int max_degree);
    std::size_t add_cell(int degree, std::string label = "");
    void add_boundary(int degree, std::size_t cell, std::size_t face);  // face in degree-1
    ChainComplex build() const;
    std::size_t dim(int degree) const;

  private:
    int min_, max_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incid_;
};

struct HomologyData {
    int min_degree = 0;
    int max_degree = -1;
    std::vector<Quotient> classes;  // cycles mod boundaries, per degree

    std::size_t dim(int k) const {
        if (k < min_degree || k > max_degree) return 0;
        return classes[std::size_t(k - min_degree)].dim();
    }
    const Quotient& at(int k) const { return classes[std::size_t(k - min_degree)]; }
    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> v;
        for (auto& q : classes) v.push_back(q.dim());
        return v;
    }
};

// Throws std::invalid_argument naming the offending degree if d∘d ≠ 0.
HomologyData homology(const ChainComplex& c);

bool is_acyclic(const ChainComplex& c);

// Transpose all boundary maps and reflect the degree range so the result is
// again a chain complex: degree k of the dual holds the dual of degree
// (min+max-k) of the input.
ChainComplex dualize(const ChainComplex& c);

// Chain map as per-degree matrices f_k : C_k(src) -> C_k(dst).
struct ChainMap {
    std::map<int, BitMatrix> maps;

    BitMatrix at(int k, const ChainComplex& src, const ChainComplex& dst) const {
        auto it = maps.find(k);
        if (it != maps.end()) return it->second;
        return BitMatrix(dst.dim(k), src.dim(k));
    }
};

ChainMap identity_map(const ChainComplex& c);
ChainMap compose(const ChainMap& g, const ChainMap& f, const ChainComplex& src,
                 const ChainComplex& mid, const ChainComplex& dst);
// Empty if f commutes with the boundaries, else a message naming the degree.
std::optional<std::string> chain_map_defect(const ChainMap& f, const ChainComplex& src,
                                            const ChainComplex& dst);

// Matrix of the induced map on homology, in canonical representative bases.
BitMatrix induced_on_homology(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst,
                              const HomologyData& hs, const HomologyData& hd, int k);

bool is_quasi_iso(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst);

// cone(f)_k = C_{k-1}(src) ⊕ C_k(dst), with the usual differential.
ChainComplex mapping_cone(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst);

// Cubical diagram indexed by nonempty subsets of {0..directions-1}.
// Arrows go from a subset to each of its facets (one element removed);
// chain-level pushforwards of the diagram maps.
struct CubeDiagram {
    int directions = 0;
    std::map<unsigned, ChainComplex> nodes;                        // key: subset mask != 0
    std::map<std::pair<unsigned, unsigned>, ChainMap> arrows;      // (from, to), |to| = |from|-1

    const ChainComplex& node(unsigned mask) const;
    bool has_node(unsigned mask) const { return nodes.count(mask) > 0; }
};

// Empty if all squares of facet arrows commute.
std::optional<std::string> cube_defect(const CubeDiagram& d);

// Layout of the total complex: node of cardinality q+1 contributes its
// degree-l part to total degree l+q.
struct TotalLayout {
    int min_degree = 0, max_degree = -1;
    // per total degree: list of (mask, internal degree, offset, dim)
    std::vector<std::vector<std::tuple<unsigned, int, std::size_t, std::size_t>>> blocks;

    std::size_t offset(int total_deg, unsigned mask, int internal_deg) const;
};

struct TotalComplex {
    ChainComplex complex;
    TotalLayout layout;
};

TotalComplex total_complex(const CubeDiagram& d);

}  // namespace wf
