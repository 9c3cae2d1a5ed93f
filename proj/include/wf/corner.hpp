#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wf/filt.hpp"
#include "wf/simp.hpp"

namespace wf {

// Regular cell complex obtained by cutting the triangulated variety along
// the divisor: cells are pairs (simplex, local component of the punctured
// star), faces follow the simplicial face relation through components.
struct CutComplex {
    GoodCompData g;
    // per degree: (global simplex id, component id), sorted
    std::vector<std::vector<std::pair<std::size_t, int>>> cells;
    std::map<std::pair<std::size_t, int>, std::pair<int, std::size_t>> where;
    std::vector<StarPartition> star;  // per global simplex id, divisors all active
    ChainComplex cx;

    std::size_t cell_pos(int degree, std::size_t gid, int comp) const;
    std::vector<int> fiber_components(std::size_t gid) const;
    // chain-level projection onto the base complex, degree by degree
    ChainMap projection(const ChainComplex& base) const;
};

CutComplex build_cut_complex(const GoodCompData& g);

// Partition of the fiber over a simplex by the coarser cut that ignores the
// divisors in j_sub (which must be contained in the simplex's own mask).
// Returns the class id per fiber component.
std::vector<int> orbit_partition(const CutComplex& cut, std::size_t gid, unsigned j_sub);

// Orbit-sum generators of the level subcomplexes.
FilteredComplex corner_filtration(const CutComplex& cut);

// Fiberwise comparison of the filtration with the powers of the augmentation
// ideal of the local discrete torus.
Report local_model_report(const CutComplex& cut, const FilteredComplex& corner);

struct GradedIso {
    Report report;
    // per degree: matrix from the stratum chain groups to the graded piece
    std::map<int, BitMatrix> matrices;
    // source basis per degree: (mask, gid)
    std::vector<std::vector<std::pair<unsigned, std::size_t>>> source_basis;
    // blockwise simplicial boundary of the stratum chain direct sum
    std::map<int, BitMatrix> source_boundary;
    ChainComplex source_complex() const;
};

// The isomorphism from the direct sum of stratum chain complexes onto the
// graded piece of the corner filtration at level p.
GradedIso graded_iso_psi(const CutComplex& cut, const FilteredComplex& corner, int p);

// Projection exactness: surjectivity and kernel = first level, degreewise.
Report pi_pushforward_exactness(const CutComplex& cut, const FilteredComplex& corner);

struct CellularPullback {
    DualCellComplex dual;
    SubdivisionResult sd;
    CutComplex cut_sd;
    FilteredComplex corner_sd;
    FilteredChainMap phi;
    Report report;
};

// The comparison map from the dual-block complex into the corner complex of
// the barycentric subdivision: a filtered chain map inducing isomorphisms on
// graded homology.
CellularPullback cellular_pullback_phi(const GoodCompData& g);

struct SimplicialMapData {
    std::vector<int> vertex_map;
    std::vector<int> apply(const std::vector<int>& simplex) const;
};

struct InducedMap {
    FilteredChainMap map;
    Report report;
};

// Cellular map of cut complexes induced by a simplicial map of pairs.
// Rejects maps sending a non-divisor simplex into the target divisor.
InducedMap induced_map(const SimplicialMapData& f, const CutComplex& src,
                       const FilteredComplex& src_corner, const CutComplex& dst,
                       const FilteredComplex& dst_corner);

}  // namespace wf
