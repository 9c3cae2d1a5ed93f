#include "wf/cechgysin.hpp"

#include <algorithm>
#include <stdexcept>

#include "wf/torus.hpp"

namespace wf {

namespace {

GoodCompData bare(const SimplicialComplex& k) {
    return GoodCompData::build(k, {}, {});
}

// chain map from the dual-block complex into the subdivision chains: a block
// goes to the sum of its top flags
ChainMap block_to_subdivision(const SimplicialComplex& k, const DualCellComplex& dcc,
                              const SimplicialComplex& sd) {
    int n = k.dim();
    ChainMap out;
    for (int deg = 0; deg <= n; ++deg) {
        BitMatrix m(sd.count(deg), dcc.fc.cx.dim(deg));
        for (std::size_t col = 0; col < dcc.basis[std::size_t(deg)].size(); ++col) {
            auto [mask, gid] = dcc.basis[std::size_t(deg)][col];
            if (mask != 0) throw std::logic_error("block_to_subdivision: divisors present");
            std::vector<std::vector<std::size_t>> flags;
            std::vector<std::size_t> cur = {gid};
            struct Grow {
                const SimplicialComplex& k;
                int target_len;
                std::vector<std::vector<std::size_t>>& flags;
                void go(std::vector<std::size_t>& cur) {
                    if (int(cur.size()) == target_len) {
                        flags.push_back(cur);
                        return;
                    }
                    auto [d, i] = k.from_global(cur.back());
                    (void)i;
                    for (auto cf : k.cofaces(cur.back())) {
                        auto [cd, ci] = k.from_global(cf);
                        (void)ci;
                        if (cd != d + 1) continue;
                        cur.push_back(cf);
                        go(cur);
                        cur.pop_back();
                    }
                }
            } grow{k, deg + 1, flags};
            grow.go(cur);
            for (auto& flag : flags) {
                std::vector<int> verts;
                for (auto f : flag) verts.push_back(int(f));
                std::sort(verts.begin(), verts.end());
                auto pos = sd.find(verts);
                if (!pos) throw std::logic_error("flag missing from subdivision");
                m.row(pos->second).flip(col);
            }
        }
        out.maps[deg] = std::move(m);
    }
    return out;
}

// subdivision chain map: a simplex goes to the sum of the full flags below it
ChainMap simplicial_to_subdivision(const SimplicialComplex& k, const SimplicialComplex& sd) {
    ChainMap out;
    for (int deg = 0; deg <= k.dim(); ++deg) {
        BitMatrix m(sd.count(deg), k.count(deg));
        for (std::size_t col = 0; col < k.count(deg); ++col) {
            // descending full flags ending at this simplex
            std::vector<std::vector<std::size_t>> flags;
            struct Shrink {
                const SimplicialComplex& k;
                std::vector<std::vector<std::size_t>>& flags;
                void go(const std::vector<int>& s, std::vector<std::size_t>& cur) {
                    auto pos = k.find(s);
                    cur.push_back(k.global_id(pos->first, pos->second));
                    if (s.size() == 1) {
                        flags.push_back(cur);
                    } else {
                        for (std::size_t drop = 0; drop < s.size(); ++drop) {
                            std::vector<int> face;
                            for (std::size_t t = 0; t < s.size(); ++t)
                                if (t != drop) face.push_back(s[t]);
                            go(face, cur);
                        }
                    }
                    cur.pop_back();
                }
            } shrink{k, flags};
            std::vector<std::size_t> cur;
            shrink.go(k.simplex(deg, col), cur);
            for (auto& flag : flags) {
                std::vector<int> verts;
                for (auto f : flag) verts.push_back(int(f));
                std::sort(verts.begin(), verts.end());
                auto pos = sd.find(verts);
                if (!pos) throw std::logic_error("descending flag missing from subdivision");
                m.row(pos->second).flip(col);
            }
        }
        out.maps[deg] = std::move(m);
    }
    return out;
}

}  // namespace

BlockComparison block_comparison(const SimplicialComplex& k) {
    BlockComparison out;
    GoodCompData g = bare(k);
    DualCellComplex dcc = dual_cell_complex(g);
    out.block = dcc.fc.cx;
    out.simp = k.chain_complex();
    SubdivisionResult sd = barycentric_subdivide(g);
    ChainComplex sd_cx = sd.g.K.chain_complex();

    ChainMap iota = block_to_subdivision(k, dcc, sd.g.K);
    ChainMap s = simplicial_to_subdivision(k, sd.g.K);
    if (auto msg = chain_map_defect(iota, out.block, sd_cx))
        throw std::logic_error("block inclusion is not a chain map: " + *msg);
    if (auto msg = chain_map_defect(s, out.simp, sd_cx))
        throw std::logic_error("subdivision operator is not a chain map: " + *msg);

    out.block_h = homology(out.block);
    out.simp_h = homology(out.simp);
    HomologyData sd_h = homology(sd_cx);
    for (int deg = 0; deg <= k.dim(); ++deg) {
        BitMatrix mi = induced_on_homology(iota, out.block, sd_cx, out.block_h, sd_h, deg);
        BitMatrix ms = induced_on_homology(s, out.simp, sd_cx, out.simp_h, sd_h, deg);
        if (mi.rows() != mi.cols()) throw std::logic_error("block comparison dims differ");
        auto inv = inverse(mi);
        if (!inv) throw std::logic_error("block comparison not invertible");
        out.to_block[deg] = inv->mul(ms);
        if (out.to_block[deg].rows() != out.to_block[deg].cols() ||
            out.to_block[deg].rank() != out.to_block[deg].rows())
            throw std::logic_error("homology comparison is not an isomorphism");
    }
    return out;
}

CechComplexes cech_complexes(const GoodCompData& g) {
    CechComplexes out;
    DualCellComplex dcc = dual_cell_complex(g);
    out.basis = dcc.basis;
    out.cohomological = dcc.fc;

    int n = g.dim();
    FilteredComplex hc;
    hc.cx = dualize(dcc.fc.cx);
    hc.origin = FiltrationOrigin::cech_homological;
    hc.geom_dim = n;
    int nmax = -dcc.fc.pmin;
    hc.pmin = 0;
    hc.pmax = nmax;
    for (int l = 0; l <= n; ++l) {
        // degree l of the homological complex carries the dual-degree n-l basis
        const auto& cells = dcc.basis[std::size_t(n - l)];
        std::vector<Subspace> row;
        for (int p = 0; p <= nmax; ++p) {
            std::vector<BitVector> gens;
            for (std::size_t pos = 0; pos < cells.size(); ++pos)
                if (__builtin_popcount(cells[pos].first) <= p)
                    gens.push_back(BitVector::unit(cells.size(), pos));
            row.push_back(Subspace::span(cells.size(), gens));
        }
        hc.level.push_back(std::move(row));
    }
    Report rep = validate_filtration(hc);
    if (!rep.ok()) throw std::logic_error("homological total complex failed filtration validation");
    out.homological = std::move(hc);
    return out;
}

std::size_t GysinComplex::dim(int p, int k) const {
    std::size_t total = 0;
    for (auto mask : masks)
        if (__builtin_popcount(mask) == p) total += strata.at(mask).simp_h.dim(k);
    return total;
}

std::vector<unsigned> GysinComplex::masks_of_size(int p) const {
    std::vector<unsigned> out;
    for (auto mask : masks)
        if (__builtin_popcount(mask) == p) out.push_back(mask);
    return out;
}

BitMatrix GysinComplex::assembled_d(int p, int k) const {
    auto rows_masks = masks_of_size(p + 1);
    auto cols_masks = masks_of_size(p);
    std::size_t rows = 0, cols = 0;
    std::map<unsigned, std::size_t> row_off, col_off;
    for (auto m : rows_masks) {
        row_off[m] = rows;
        rows += strata.at(m).simp_h.dim(k - 1);
    }
    for (auto m : cols_masks) {
        col_off[m] = cols;
        cols += strata.at(m).simp_h.dim(k);
    }
    BitMatrix out(rows, cols);
    for (auto cm : cols_masks) {
        for (auto rm : rows_masks) {
            auto it = d.find({cm, rm, k});
            if (it == d.end()) continue;
            const BitMatrix& b = it->second;
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    if (b.get(i, j)) out.set(row_off[rm] + i, col_off[cm] + j);
        }
    }
    return out;
}

std::size_t GysinComplex::d_rank(int p, int k) const { return assembled_d(p, k).rank(); }

std::vector<std::size_t> GysinComplex::homology_dims(int kmax) const {
    std::vector<std::size_t> out(std::size_t(kmax + 1), 0);
    for (int k = 0; k <= kmax; ++k) {
        // homology at column p in abutment degree k: classes in G_{p,k}
        for (int p = 0; p <= n; ++p) {
            std::size_t dim_here = dim(p, k);
            if (dim_here == 0) continue;
            std::size_t rk_out = d_rank(p, k);
            std::size_t rk_in = p > 0 ? d_rank(p - 1, k + 1) : 0;
            out[std::size_t(k)] += dim_here - rk_out - rk_in;
        }
    }
    return out;
}

GysinComplex gysin_complex(const GoodCompData& g) {
    GysinComplex out;
    out.n = g.dim();
    out.masks = g.strata_masks();
    std::map<unsigned, SimplicialComplex> stratum_cx;
    for (auto mask : out.masks) {
        SimplicialComplex kj = g.stratum_complex(mask);
        out.strata.emplace(mask, block_comparison(kj));
        stratum_cx.emplace(mask, std::move(kj));
    }
    // intersection differential between dual-block complexes on homology
    for (auto mask : out.masks) {
        const BlockComparison& bc = out.strata.at(mask);
        const SimplicialComplex& kj = stratum_cx.at(mask);
        for (int b = 0; b < g.divisor_count(); ++b) {
            if (mask & (1u << b)) continue;
            unsigned mask2 = mask | (1u << b);
            if (!std::binary_search(out.masks.begin(), out.masks.end(), mask2)) continue;
            const BlockComparison& bc2 = out.strata.at(mask2);
            const SimplicialComplex& kj2 = stratum_cx.at(mask2);
            for (int k = 0; k <= out.n; ++k) {
                std::size_t rows = bc2.block_h.dim(k - 1);
                std::size_t cols = bc.block_h.dim(k);
                BitMatrix m(rows, cols);
                if (rows && cols) {
                    for (std::size_t j = 0; j < cols; ++j) {
                        const BitVector& rep = bc.block_h.at(k).reps()[j];
                        // intersection: keep block cells whose simplex lies in
                        // the deeper stratum
                        BitVector img(bc2.block.dim(k - 1));
                        for (std::size_t pos = 0; pos < rep.size(); ++pos) {
                            if (!rep.get(pos)) continue;
                            // block cell pos in degree k of stratum mask:
                            // dual basis is (0, local gid) sorted by local gid
                            // and block degree k holds simplices of dim
                            // (dim kj) - k
                            int d_simp = kj.dim() - k;
                            const auto& s = kj.simplex(d_simp, pos);
                            auto p2 = kj2.find(s);
                            if (!p2) continue;
                            // in the deeper block complex the same simplex has
                            // dual degree (dim kj2) - d_simp = k - 1
                            img.flip(p2->second);
                        }
                        BitVector co = bc2.block_h.at(k - 1).coords(img);
                        for (std::size_t i = 0; i < rows; ++i)
                            if (co.get(i)) m.set(i, j);
                    }
                }
                // transport to simplicial coordinates on both sides
                BitMatrix tsrc = bc.to_block.count(k) ? bc.to_block.at(k)
                                                      : BitMatrix(cols, bc.simp_h.dim(k));
                BitMatrix tdst = bc2.to_block.count(k - 1)
                                     ? bc2.to_block.at(k - 1)
                                     : BitMatrix(rows, bc2.simp_h.dim(k - 1));
                BitMatrix msimp(bc2.simp_h.dim(k - 1), bc.simp_h.dim(k));
                if (bc.simp_h.dim(k) && bc2.simp_h.dim(k - 1)) {
                    auto inv = inverse(tdst);
                    if (!inv) throw std::logic_error("transport not invertible");
                    msimp = inv->mul(m).mul(tsrc);
                }
                out.d[{mask, mask2, k}] = std::move(msimp);
            }
        }
    }
    return out;
}

Report gysin_corner_report(const GoodCompData& g) {
    Report rep;
    GysinComplex gys = gysin_complex(g);
    CutComplex cut = build_cut_complex(g);
    FilteredComplex corner = corner_filtration(cut);
    SpectralSequence ss = spectral_sequence(corner);
    bool dims_ok = true, rank_ok = true;
    std::string at;
    int n = g.dim();
    for (int p = 0; p <= n; ++p) {
        for (int k = 0; k <= n; ++k) {
            // first page entry at filtration level -p, abutment degree k
            std::size_t corner_dim = ss.dim(1, -p, k + p);
            if (corner_dim != gys.dim(p, k)) {
                dims_ok = false;
                at = "(p=" + std::to_string(p) + ",k=" + std::to_string(k) + ")";
            }
            std::size_t corner_rank = ss.d_rank(1, -p, k + p);
            if (corner_rank != gys.d_rank(p, k)) {
                rank_ok = false;
                at = "(p=" + std::to_string(p) + ",k=" + std::to_string(k) + ")";
            }
        }
    }
    rep.add("first-page-dims-match-gysin", dims_ok, dims_ok ? "" : at);
    rep.add("first-page-ranks-match-gysin", rank_ok, rank_ok ? "" : at);
    return rep;
}

std::map<int, BitMatrix> manifold_intersection_pairing(const SimplicialComplex& k) {
    BlockComparison bc = block_comparison(k);
    int n = k.dim();
    std::map<int, BitMatrix> out;
    for (int deg = 0; deg <= n; ++deg) {
        std::size_t rows = bc.simp_h.dim(deg);
        std::size_t cols = bc.simp_h.dim(n - deg);
        BitMatrix p(rows, cols);
        for (std::size_t a = 0; a < rows; ++a) {
            const BitVector& u = bc.simp_h.at(deg).reps()[a];
            for (std::size_t b = 0; b < cols; ++b) {
                // dual-side representative: block degree n-deg is indexed by
                // the dimension-deg simplices, the same index set as u
                BitVector bco = bc.to_block.at(n - deg).apply(BitVector::unit(cols, b));
                BitVector v(bc.block.dim(n - deg));
                const auto& breps = bc.block_h.at(n - deg).reps();
                for (std::size_t i = 0; i < bco.size(); ++i)
                    if (bco.get(i)) v.xor_with(breps[i]);
                if (u.size() != v.size()) throw std::logic_error("pairing index mismatch");
                if (u.dot(v)) p.set(a, b);
            }
        }
        out[deg] = std::move(p);
    }
    return out;
}

std::map<int, BitMatrix> gysin_of_map(const SimplicialMapData& f, const SimplicialComplex& src,
                                      const SimplicialComplex& dst) {
    int m = src.dim(), n = dst.dim();
    ChainComplex csrc = src.chain_complex();
    ChainComplex cdst = dst.chain_complex();
    HomologyData hsrc = homology(csrc);
    HomologyData hdst = homology(cdst);
    // chain-level pushforward
    ChainMap push;
    for (int k = 0; k <= m; ++k) {
        BitMatrix mk(cdst.dim(k), csrc.dim(k));
        for (std::size_t j = 0; j < src.count(k); ++j) {
            std::vector<int> img = f.apply(src.simplex(k, j));
            if (int(img.size()) != k + 1) continue;
            auto pos = dst.find(img);
            if (!pos) throw std::invalid_argument("gysin_of_map: map is not simplicial");
            mk.set(pos->second, j);
        }
        push.maps[k] = std::move(mk);
    }
    if (auto msg = chain_map_defect(push, csrc, cdst))
        throw std::invalid_argument("gysin_of_map: " + *msg);
    auto psrc = manifold_intersection_pairing(src);
    auto pdst = manifold_intersection_pairing(dst);
    std::map<int, BitMatrix> out;
    for (int k = 0; k <= n; ++k) {
        int ks = k + m - n;  // target degree in the source
        std::size_t rows = ks >= 0 && ks <= m ? hsrc.dim(ks) : 0;
        std::size_t cols = hdst.dim(k);
        BitMatrix a(rows, cols);
        if (rows && cols) {
            BitMatrix fstar = induced_on_homology(push, csrc, cdst, hsrc, hdst, n - k);
            auto pm_inv = inverse(psrc.at(ks));
            if (!pm_inv) throw std::logic_error("source pairing singular");
            // A^T P_src = P_dst F  =>  A = (P_dst F P_src^{-1})^T
            a = pdst.at(k).mul(fstar).mul(*pm_inv).transpose();
        }
        out[k] = std::move(a);
    }
    return out;
}

DualityResult duality_report(const GoodCompData& g, bool transport_check) {
    DualityResult out;
    int n = g.dim();
    CechComplexes cech = cech_complexes(g);

    // classical side: shifted filtration of the dual-block total complex
    FilteredComplex wdual = decalage(cech.cohomological);
    HomologyFiltration hf_cls = homology_filtration(wdual);
    out.classical = hf_cls.table;

    // closed-support side: shifted filtration of the homological total complex
    FilteredComplex wbm = decalage(cech.homological);
    HomologyFiltration hf_bm = homology_filtration(wbm);
    out.borel_moore = hf_bm.table;

    // chain pairing: dual degree k against homological degree n-k is the
    // identity on the shared (mask, simplex) basis, so the homology pairing
    // evaluates representatives directly
    bool nonsing = true, annih = true, dims_ok = true;
    std::string at;
    for (int k = 0; k <= n; ++k) {
        std::size_t rows = hf_cls.hom.dim(k);
        std::size_t cols = hf_bm.hom.dim(n - k);
        if (rows != cols) {
            nonsing = false;
            at = "degree " + std::to_string(k) + " rank mismatch";
            continue;
        }
        BitMatrix p(rows, cols);
        for (std::size_t a = 0; a < rows; ++a)
            for (std::size_t b = 0; b < cols; ++b)
                if (hf_cls.hom.at(k).reps()[a].dot(hf_bm.hom.at(n - k).reps()[b])) p.set(a, b);
        if (p.rank() != rows) {
            nonsing = false;
            at = "degree " + std::to_string(k);
            continue;
        }
        for (int pp = out.classical.pmin - 1; pp <= out.classical.pmax + 1; ++pp) {
            Subspace w_cls = hf_cls.subspace(k, pp);
            Subspace w_bm = hf_bm.subspace(n - k, -pp - n - 1);
            Subspace ann = annihilator(w_bm, p);
            if (!(ann == w_cls)) {
                annih = false;
                at = "(p=" + std::to_string(pp) + ",k=" + std::to_string(k) + ")";
            }
            if (w_cls.dim() + w_bm.dim() != rows) {
                dims_ok = false;
                at = "(p=" + std::to_string(pp) + ",k=" + std::to_string(k) + ")";
            }
        }
    }
    out.report.add("pairing-nonsingular", nonsing, nonsing ? "" : at);
    out.report.add("annihilator-identity", annih, annih ? "" : at);
    out.report.add("complementary-dimensions", dims_ok, dims_ok ? "" : at);

    if (transport_check) {
        // the corner route must produce the same weight table
        CutComplex cut = build_cut_complex(g);
        FilteredComplex corner = corner_filtration(cut);
        FilteredComplex wc = decalage(corner);
        HomologyFiltration hf_corner = homology_filtration(wc);
        out.report.add("corner-route-table-agrees", hf_corner.table == out.classical);
    }
    return out;
}

namespace {

bool minor_det_bits(const BitMatrix& mat, unsigned rows_mask, unsigned cols_mask) {
    std::vector<std::size_t> ri, cj;
    for (std::size_t i = 0; i < mat.rows(); ++i)
        if (rows_mask & (1u << i)) ri.push_back(i);
    for (std::size_t j = 0; j < mat.cols(); ++j)
        if (cols_mask & (1u << j)) cj.push_back(j);
    if (ri.size() != cj.size()) return false;
    BitMatrix sub(ri.size(), cj.size());
    for (std::size_t i = 0; i < ri.size(); ++i)
        for (std::size_t j = 0; j < cj.size(); ++j)
            if (mat.get(ri[i], cj[j])) sub.set(i, j);
    return sub.rank() == ri.size();
}

}  // namespace

GysinMorphism weighted_pushforward(const SimplicialMapData& f, const GoodCompData& src,
                                   const GoodCompData& dst, const GysinPushforwardSpec& spec,
                                   const GysinComplex& gsrc, const GysinComplex& gdst) {
    GysinMorphism out;
    if (spec.exponents.rows() != std::size_t(src.divisor_count()) ||
        spec.exponents.cols() != std::size_t(dst.divisor_count())) {
        out.report.add("spec-shape", false, "exponent matrix shape mismatch");
        return out;
    }
    out.report.add("spec-shape", true);

    // per source stratum: component decomposition and the chain-level maps
    for (auto imask : gsrc.masks) {
        int p = __builtin_popcount(imask);
        SimplicialComplex ki = src.stratum_complex(imask);
        auto comps = ki.components();
        // component id per global simplex of ki
        std::vector<int> comp_of(ki.n_simplices(), -1);
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (auto gid : comps[c]) comp_of[gid] = int(c);
        // does f map component c into the stratum of jmask?
        for (auto jmask : gdst.masks) {
            if (__builtin_popcount(jmask) != p) continue;
            SimplicialComplex kj = dst.stratum_complex(jmask);
            std::vector<char> comp_maps_in(comps.size(), 1);
            for (std::size_t c = 0; c < comps.size(); ++c) {
                for (auto gid : comps[c]) {
                    auto [d, i] = ki.from_global(gid);
                    std::vector<int> img = f.apply(ki.simplex(d, i));
                    if (!kj.has(img)) {
                        comp_maps_in[c] = 0;
                        break;
                    }
                }
            }
            // minors: subsets of divisor indices
            bool coeff = p == 0 ? true : minor_det_bits(spec.exponents, imask, jmask);
            // chain map with the component gates
            ChainComplex ci = gsrc.strata.at(imask).simp;
            ChainComplex cj = gdst.strata.at(jmask).simp;
            ChainMap push;
            for (int k = 0; k <= ki.dim(); ++k) {
                BitMatrix m(cj.dim(k), ci.dim(k));
                for (std::size_t col = 0; col < ki.count(k); ++col) {
                    std::size_t gid = ki.global_id(k, col);
                    if (!coeff || !comp_maps_in[std::size_t(comp_of[gid])]) continue;
                    std::vector<int> img = f.apply(ki.simplex(k, col));
                    if (int(img.size()) != k + 1) continue;
                    auto pos = kj.find(img);
                    if (!pos) continue;
                    m.set(pos->second, col);
                }
                push.maps[k] = std::move(m);
            }
            if (auto msg = chain_map_defect(push, ci, cj)) {
                out.report.add("block-chain-map", false,
                               "stratum pair (" + std::to_string(imask) + "," +
                                   std::to_string(jmask) + "): " + *msg);
                return out;
            }
            for (int k = 0; k <= ki.dim(); ++k) {
                out.blocks[{imask, jmask, k}] =
                    induced_on_homology(push, ci, cj, gsrc.strata.at(imask).simp_h,
                                        gdst.strata.at(jmask).simp_h, k);
            }
        }
    }
    out.report.add("block-chain-map", true);

    // hypotheses for the morphism to be the plain pushforward: each stratum
    // pair either maps in wholly with unit minor, or meets the preimage in
    // smaller dimension
    bool hypotheses = true;
    for (auto imask : gsrc.masks) {
        int p = __builtin_popcount(imask);
        if (p == 0) continue;
        SimplicialComplex ki = src.stratum_complex(imask);
        for (auto jmask : gdst.masks) {
            if (__builtin_popcount(jmask) != p) continue;
            SimplicialComplex kj = dst.stratum_complex(jmask);
            bool whole = true;
            int meet_dim = -1;
            for (std::size_t gid = 0; gid < ki.n_simplices(); ++gid) {
                auto [d, i] = ki.from_global(gid);
                std::vector<int> img = f.apply(ki.simplex(d, i));
                if (kj.has(img))
                    meet_dim = std::max(meet_dim, d);
                else
                    whole = false;
            }
            bool cond1 = whole && minor_det_bits(spec.exponents, imask, jmask);
            bool cond2 = meet_dim < ki.dim();
            if (!cond1 && !cond2) hypotheses = false;
        }
    }
    out.report.add("plain-pushforward-hypotheses", true,
                   hypotheses ? "all stratum pairs qualify" : "general weighted case");

    // the morphism must intertwine the two intersection differentials
    bool commute = true;
    std::string at;
    int n = std::max(gsrc.n, gdst.n);
    for (auto imask : gsrc.masks) {
        int p = __builtin_popcount(imask);
        for (int k = 0; k <= n; ++k) {
            // paths: d then push vs push then d, summed over intermediates
            for (auto jmask2 : gdst.masks) {
                if (__builtin_popcount(jmask2) != p + 1) continue;
                std::size_t rows = gdst.strata.at(jmask2).simp_h.dim(k - 1);
                std::size_t cols = gsrc.strata.at(imask).simp_h.dim(k);
                BitMatrix lhs(rows, cols), rhs(rows, cols);
                for (auto imask2 : gsrc.masks) {
                    if (__builtin_popcount(imask2) != p + 1) continue;
                    auto itd = gsrc.d.find({imask, imask2, k});
                    auto itb = out.blocks.find({imask2, jmask2, k - 1});
                    if (itd == gsrc.d.end() || itb == out.blocks.end()) continue;
                    lhs = lhs.add(itb->second.mul(itd->second));
                }
                for (auto jmask : gdst.masks) {
                    if (__builtin_popcount(jmask) != p) continue;
                    auto itb = out.blocks.find({imask, jmask, k});
                    auto itd = gdst.d.find({jmask, jmask2, k});
                    if (itb == out.blocks.end() || itd == gdst.d.end()) continue;
                    rhs = rhs.add(itd->second.mul(itb->second));
                }
                if (!(lhs == rhs)) {
                    commute = false;
                    at = "(src=" + std::to_string(imask) + ",dst=" + std::to_string(jmask2) +
                         ",k=" + std::to_string(k) + ")";
                }
            }
        }
    }
    out.report.add("gysin-chain-map", commute, commute ? "" : at);
    return out;
}

Report pushforward_corner_consistency(const SimplicialMapData& f, const GoodCompData& src,
                                      const GoodCompData& dst, const GysinPushforwardSpec& spec) {
    Report rep;
    GysinComplex gsrc = gysin_complex(src);
    GysinComplex gdst = gysin_complex(dst);
    GysinMorphism mor = weighted_pushforward(f, src, dst, spec, gsrc, gdst);
    rep.merge(mor.report);
    if (!mor.report.ok()) return rep;

    CutComplex cs = build_cut_complex(src);
    CutComplex cd = build_cut_complex(dst);
    FilteredComplex fs = corner_filtration(cs);
    FilteredComplex fd = corner_filtration(cd);
    InducedMap ind = induced_map(f, cs, fs, cd, fd);
    rep.merge(ind.report);
    if (!ind.report.ok()) return rep;

    bool agree = true;
    std::string at;
    int pmaxs = -fs.pmin;
    for (int p = 0; p <= pmaxs; ++p) {
        GradedIso psi_s = graded_iso_psi(cs, fs, p);
        GradedIso psi_d = graded_iso_psi(cd, fd, p);
        if (!psi_s.report.ok() || !psi_d.report.ok()) {
            rep.add("stratum-isomorphisms", false, "graded isomorphism failed");
            return rep;
        }
        GradedPiece gs = graded_piece(fs, -p);
        GradedPiece gd = graded_piece(fd, -p);
        ChainComplex src_sum = psi_s.source_complex();
        ChainComplex dst_sum = psi_d.source_complex();
        HomologyData hs = homology(src_sum);
        HomologyData hd = homology(dst_sum);

        // graded chain map of the cellular map, conjugated into stratum chains
        ChainMap conj;
        for (int k = 0; k <= std::max(cs.cx.max_degree, cd.cx.max_degree); ++k) {
            std::size_t scols = src_sum.dim(k);
            std::size_t drows = dst_sum.dim(k);
            BitMatrix m(drows, scols);
            if (scols && k <= cs.cx.max_degree) {
                const Quotient& qs = gs.coords[std::size_t(k)];
                const Quotient& qd = gd.coords[std::size_t(k)];
                auto md_inv = drows ? inverse(psi_d.matrices.at(k))
                                    : std::optional<BitMatrix>(BitMatrix(0, 0));
                if (!md_inv) {
                    rep.add("stratum-isomorphisms", false, "target graded iso singular");
                    return rep;
                }
                BitMatrix graded_f(qd.dim(), qs.dim());
                BitMatrix fk = ind.map.map.at(k, cs.cx, cd.cx);
                for (std::size_t j = 0; j < qs.dim(); ++j) {
                    BitVector co = qd.coords(fk.apply(qs.reps()[j]));
                    for (std::size_t i = 0; i < qd.dim(); ++i)
                        if (co.get(i)) graded_f.set(i, j);
                }
                m = md_inv->mul(graded_f).mul(psi_s.matrices.at(k));
            }
            conj.maps[k] = std::move(m);
        }
        if (auto msg = chain_map_defect(conj, src_sum, dst_sum)) {
            rep.add("corner-consistency", false, "conjugated map not a chain map: " + *msg);
            return rep;
        }

        for (int k = 0; k <= src_sum.max_degree; ++k) {
            if (hs.dim(k) == 0) continue;
            BitMatrix actual = induced_on_homology(conj, src_sum, dst_sum, hs, hd, k);
            // expected: decompose classes into stratum blocks and apply the
            // weighted pushforward blockwise
            BitMatrix expected(hd.dim(k), hs.dim(k));
            for (std::size_t j = 0; j < hs.dim(k); ++j) {
                const BitVector& z = hs.at(k).reps()[j];
                BitVector out_chain(dst_sum.dim(k));
                for (auto imask : gsrc.masks) {
                    if (__builtin_popcount(imask) != p) continue;
                    // extract the stratum component of the cycle in the
                    // stratum's own simplex numbering
                    const auto& sb = psi_s.source_basis[std::size_t(k)];
                    const ChainComplex& ci = gsrc.strata.at(imask).simp;
                    BitVector zi(ci.dim(k));
                    std::size_t local = 0;
                    for (std::size_t pos = 0; pos < sb.size(); ++pos) {
                        if (sb[pos].first != imask) continue;
                        if (z.get(pos)) zi.set(local);
                        ++local;
                    }
                    if (zi.is_zero()) continue;
                    BitVector zi_h = gsrc.strata.at(imask).simp_h.at(k).coords(zi);
                    for (auto jmask : gdst.masks) {
                        if (__builtin_popcount(jmask) != p) continue;
                        auto itb = mor.blocks.find({imask, jmask, k});
                        if (itb == mor.blocks.end()) continue;
                        BitVector wj = itb->second.apply(zi_h);
                        // lift to a cycle and inject into the direct sum
                        const auto& jreps = gdst.strata.at(jmask).simp_h.at(k).reps();
                        BitVector chain(gdst.strata.at(jmask).simp.dim(k));
                        for (std::size_t t = 0; t < wj.size(); ++t)
                            if (wj.get(t)) chain.xor_with(jreps[t]);
                        const auto& dbasis = psi_d.source_basis[std::size_t(k)];
                        std::size_t dlocal = 0;
                        for (std::size_t pos = 0; pos < dbasis.size(); ++pos) {
                            if (dbasis[pos].first != jmask) continue;
                            if (chain.get(dlocal)) out_chain.flip(pos);
                            ++dlocal;
                        }
                    }
                }
                BitVector expect_h = hd.at(k).coords(out_chain);
                for (std::size_t i = 0; i < hd.dim(k); ++i)
                    if (expect_h.get(i)) expected.set(i, j);
            }
            if (!(actual == expected)) {
                agree = false;
                at = "(p=" + std::to_string(p) + ",k=" + std::to_string(k) + ")";
            }
        }
    }
    rep.add("corner-consistency", agree, agree ? "" : at);
    return rep;
}

}  // namespace wf
