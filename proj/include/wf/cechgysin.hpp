#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "wf/corner.hpp"
#include "wf/filt.hpp"
#include "wf/simp.hpp"

namespace wf {

// Comparison data between the simplicial chains of a complex and its
// dual-block complex, through the barycentric subdivision.
struct BlockComparison {
    ChainComplex block;       // dual-block complex (divisors ignored)
    ChainComplex simp;        // simplicial chain complex
    HomologyData block_h;
    HomologyData simp_h;
    std::map<int, BitMatrix> to_block;  // iso H_k(simp) -> H_k(block)
};

BlockComparison block_comparison(const SimplicialComplex& k);

struct CechComplexes {
    // total complex of the stratum cochains, written homologically: degree h
    // holds the cochain total degree n - h; identical basis to the dual-block
    // complex of the pair
    FilteredComplex cohomological;
    // total complex of the stratum chains with the inclusion differential
    FilteredComplex homological;
    // shared basis bookkeeping: per dual degree, (mask, gid)
    std::vector<std::vector<std::pair<unsigned, std::size_t>>> basis;
};

CechComplexes cech_complexes(const GoodCompData& g);

// Gysin complex: stratum homology with the intersection differential read
// off the dual-block complex, expressed in simplicial homology coordinates.
struct GysinComplex {
    int n = 0;
    std::vector<unsigned> masks;
    std::map<unsigned, BlockComparison> strata;
    // d[(mask, mask', k)]: H_k(stratum mask) -> H_{k-1}(stratum mask'),
    // |mask'| = |mask| + 1, simplicial coordinates
    std::map<std::tuple<unsigned, unsigned, int>, BitMatrix> d;

    std::size_t dim(int p, int k) const;
    std::size_t d_rank(int p, int k) const;
    // total homology dims of the complex (G_p, d) by abutment degree k
    std::vector<std::size_t> homology_dims(int kmax) const;
    BitMatrix assembled_d(int p, int k) const;
    std::vector<unsigned> masks_of_size(int p) const;
};

GysinComplex gysin_complex(const GoodCompData& g);

// Corner first page versus the Gysin complex: equal dimensions and equal
// differential ranks in every bidegree.
Report gysin_corner_report(const GoodCompData& g);

struct DualityResult {
    Report report;
    WeightTable classical;  // weights on H_k
    WeightTable borel_moore;  // weights on H^BM_l
};

// Pairing between the weight filtration of ordinary homology and the shifted
// filtration of the closed-support theory computed from the homological
// total complex.
DualityResult duality_report(const GoodCompData& g, bool transport_check = true);

// Intersection pairing matrices of a closed triangulated manifold in
// simplicial homology coordinates; pairing[k] pairs H_k with H_{n-k}.
std::map<int, BitMatrix> manifold_intersection_pairing(const SimplicialComplex& k);

// Umkehr map of f in simplicial homology coordinates:
// H_k(dst) -> H_{k + dim src - dim dst}(src).
std::map<int, BitMatrix> gysin_of_map(const SimplicialMapData& f, const SimplicialComplex& src,
                                      const SimplicialComplex& dst);

struct GysinPushforwardSpec {
    BitMatrix exponents;  // rows: source divisors, cols: target divisors
};

struct GysinMorphism {
    Report report;
    // per (src mask, dst mask, degree): block in simplicial homology coords
    std::map<std::tuple<unsigned, unsigned, int>, BitMatrix> blocks;
};

// Weighted pushforward of Gysin complexes along a simplicial map of pairs,
// with minor-determinant coefficients from the exponent matrix.
GysinMorphism weighted_pushforward(const SimplicialMapData& f, const GoodCompData& src,
                                   const GoodCompData& dst, const GysinPushforwardSpec& spec,
                                   const GysinComplex& gsrc, const GysinComplex& gdst);

// Agreement between the weighted pushforward and the graded map induced by
// the cellular map of cut complexes, through the stratum isomorphisms.
Report pushforward_corner_consistency(const SimplicialMapData& f, const GoodCompData& src,
                                      const GoodCompData& dst, const GysinPushforwardSpec& spec);

}  // namespace wf
