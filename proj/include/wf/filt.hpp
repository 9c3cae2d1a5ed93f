#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "wf/chain.hpp"
#include "wf/gf2.hpp"

namespace wf {

enum class FiltrationOrigin { generic, corner, weight, dual_cell, cech_homological };

// Increasing bounded filtration on a bounded chain complex.  Levels below
// pmin are zero, levels above pmax equal the whole space.
struct FilteredComplex {
    ChainComplex cx;
    int pmin = 0, pmax = 0;
    // level[k - min_degree][p - pmin]
    std::vector<std::vector<Subspace>> level;
    FiltrationOrigin origin = FiltrationOrigin::generic;
    int geom_dim = 0;  // ambient variety dimension for tagged filtrations

    Subspace F(int k, int p) const {
        std::size_t dk = cx.dim(k);
        if (p < pmin) return Subspace::zero(dk);
        if (k < cx.min_degree || k > cx.max_degree) return Subspace::zero(dk);
        if (p > pmax) return Subspace::full(dk);
        return level[std::size_t(k - cx.min_degree)][std::size_t(p - pmin)];
    }

    // Trivial filtration: everything at level 0.
    static FilteredComplex trivial(ChainComplex c);
};

struct CheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<CheckItem> items;
    bool ok() const {
        for (auto& i : items)
            if (!i.pass) return false;
        return true;
    }
    void add(std::string name, bool pass, std::string detail = "") {
        items.push_back({std::move(name), pass, std::move(detail)});
    }
    void merge(const Report& other) {
        items.insert(items.end(), other.items.begin(), other.items.end());
    }
};

// Nestedness, boundary stability, exhaustiveness; for corner-tagged inputs
// additionally the vanishing line F^{n-k+1} C_k = 0.
Report validate_filtration(const FilteredComplex& fc);

struct PageEntry {
    Quotient space;           // subquotient in chain coordinates of degree p+q
    BitMatrix d;              // to the (p-r, q+r-1) entry, in representative coordinates
    std::size_t d_rank = 0;
};

struct SpectralSequence {
    int pmin = 0, pmax = 0;
    int kmin = 0, kmax = -1;
    int max_page = 0;    // pages are computed for r = 1..max_page
    int stable_page = 0; // all differentials vanish from this page on
    std::map<std::tuple<int, int, int>, PageEntry> entries;  // (r, p, q)

    std::size_t dim(int r, int p, int q) const;
    std::size_t d_rank(int r, int p, int q) const;
    const PageEntry* entry(int r, int p, int q) const;
    // Nonzero positions on a page as (p, q, dim, d_rank), sorted.
    std::vector<std::tuple<int, int, std::size_t, std::size_t>> page(int r) const;
    std::vector<std::size_t> infinity_dims_by_degree() const;
};

SpectralSequence spectral_sequence(const FilteredComplex& fc);

// Support triangle for tagged spectral sequences; empty report when untagged.
Report check_support(const SpectralSequence& ss, FiltrationOrigin origin, int n);

// The shifted filtration: level p in degree k collects the part of level
// p+k whose boundary drops to level p+k-1.
FilteredComplex decalage(const FilteredComplex& fc);

struct WeightTable {
    // per degree: homology dimension and cumulative filtration dims.
    int kmin = 0, kmax = -1;
    std::vector<std::size_t> h_dims;
    int pmin = 0, pmax = 0;
    std::vector<std::vector<std::size_t>> w_dims;  // w_dims[k-kmin][p-pmin] = dim W_p H_k

    std::size_t h(int k) const;
    std::size_t w(int k, int p) const;  // clamped outside the stored window
    bool operator==(const WeightTable& o) const;
};

struct HomologyFiltration {
    WeightTable table;
    HomologyData hom;                       // homology of the underlying complex
    std::vector<std::vector<Subspace>> sub; // subspace of H_k coords per (k, p)
    Subspace subspace(int k, int p) const;
};

// Filtration induced on homology by images of the level subcomplexes;
// cross-checked against the spectral sequence abutment.
HomologyFiltration homology_filtration(const FilteredComplex& fc);

struct FilteredChainMap {
    ChainMap map;
};

// Empty if f maps every level into the same level of the target.
std::optional<std::string> filtered_map_defect(const FilteredChainMap& f, const FilteredComplex& src,
                                               const FilteredComplex& dst);

// Graded piece at level p as a plain chain complex, with the coordinate
// quotients used to build it.
struct GradedPiece {
    ChainComplex cx;
    std::vector<Quotient> coords;  // per degree
};
GradedPiece graded_piece(const FilteredComplex& fc, int p);

// True iff the induced map on every graded piece is a quasi-isomorphism.
bool is_filtered_quasi_iso(const FilteredChainMap& f, const FilteredComplex& src,
                           const FilteredComplex& dst);

struct FilteredCube {
    int directions = 0;
    std::map<unsigned, FilteredComplex> nodes;
    std::map<std::pair<unsigned, unsigned>, FilteredChainMap> arrows;
};

struct FilteredTotal {
    FilteredComplex fc;
    TotalLayout layout;
};

// Total complex with the levelwise direct-sum filtration.
// Throws std::invalid_argument naming a filtration-violating arrow.
FilteredTotal filtered_total_complex(const FilteredCube& cube);

FilteredComplex filtered_mapping_cone(const FilteredChainMap& f, const FilteredComplex& src,
                                      const FilteredComplex& dst);

}  // namespace wf
