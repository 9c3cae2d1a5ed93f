#pragma once

#include <map>
#include <string>
#include <vector>

#include "wf/cechgysin.hpp"
#include "wf/corner.hpp"
#include "wf/filt.hpp"
#include "wf/simp.hpp"

namespace wf {

struct WeightComplexResult {
    CutComplex cut;
    FilteredComplex corner;
    FilteredComplex weight;   // the shifted filtration, tagged
    HomologyFiltration hf;
    SpectralSequence pages;   // weight spectral sequence
    Report report;
};

// Cut complex, level filtration, shift, homology filtration and the bound
// checks, in one pass.
WeightComplexResult weight_complex(const GoodCompData& g);

struct HyperresolutionInput {
    int directions = 0;
    std::map<unsigned, GoodCompData> nodes;  // nonempty subset masks
    std::map<std::pair<unsigned, unsigned>, SimplicialMapData> arrows;  // facet arrows
};

struct AssembleResult {
    FilteredTotal total;
    HomologyFiltration hf;
    Report report;
};

// Nodewise shifted filtrations combined by the degreewise direct sum over
// the cube, with the arrows induced on cut complexes.
AssembleResult assemble(const HyperresolutionInput& h);

// ker[H_k(X) -> H_k(compactification)] equals the level below the top of
// the homology filtration, as subspaces.
Report kernel_characterization(const GoodCompData& g);

struct BlowupSquareData {
    int codim = 0;
    // homology dimensions per degree for E, C, Mt, M
    std::map<std::string, std::vector<std::size_t>> dims;
    // lower maps q: E->C, s: E->Mt, p: Mt->M, r: C->M (degree-preserving),
    // upper maps q_up: H_j(C)->H_{j+codim-1}(E), s_up: H_k(Mt)->H_{k-1}(E),
    // p_up: H_k(M)->H_k(Mt), r_up: H_k(M)->H_{k-codim}(C); keyed by source degree
    std::map<std::string, std::map<int, BitMatrix>> maps;

    std::size_t dim(const std::string& space, int k) const;
    BitMatrix map_at(const std::string& name, int k, const std::string& src_space,
                     const std::string& dst_space, int dst_k) const;
};

Report blowup_square_checks(const BlowupSquareData& b);

// Build the square data from triangulated manifolds and simplicial maps,
// with the upper maps derived from the intersection pairings.
BlowupSquareData blowup_square_from_triangulations(const SimplicialComplex& e,
                                                   const SimplicialComplex& c,
                                                   const SimplicialComplex& mt,
                                                   const SimplicialComplex& m,
                                                   const SimplicialMapData& q,
                                                   const SimplicialMapData& s,
                                                   const SimplicialMapData& p,
                                                   const SimplicialMapData& r);

struct BlowupTransverseInput {
    GoodCompData w, wt, y, yt;
    SimplicialMapData b;       // wt -> w
    SimplicialMapData a;       // y -> w
    SimplicialMapData q;       // yt -> y
    SimplicialMapData s;       // yt -> wt
};

// The simple filtered complex of the square of weight complexes must have a
// vanishing first page.
Report blowup_transverse_check(const BlowupTransverseInput& in);

// The map of weight complexes induced by the blowdown must be a filtered
// quasi-isomorphism.
Report blowup_contained_check(const GoodCompData& after, const GoodCompData& before,
                              const SimplicialMapData& b);

Report independence_check(const GoodCompData& g1, const GoodCompData& g2);

}  // namespace wf
