#include "wf/corner.hpp"

#include <algorithm>
#include <stdexcept>

#include "wf/torus.hpp"

namespace wf {

std::size_t CutComplex::cell_pos(int degree, std::size_t gid, int comp) const {
    auto it = where.find({gid, comp});
    if (it == where.end() || it->second.first != degree)
        throw std::invalid_argument("cell_pos: no such cell");
    return it->second.second;
}

std::vector<int> CutComplex::fiber_components(std::size_t gid) const {
    std::vector<int> out;
    const StarPartition& sp = star[gid];
    for (int c = 0; c < sp.n_components; ++c) out.push_back(c);
    return out;
}

ChainMap CutComplex::projection(const ChainComplex& base) const {
    ChainMap pi;
    for (int k = 0; k <= cx.max_degree; ++k) {
        BitMatrix m(base.dim(k), cx.dim(k));
        for (std::size_t col = 0; col < cells[std::size_t(k)].size(); ++col) {
            auto [gid, comp] = cells[std::size_t(k)][col];
            (void)comp;
            auto [d, i] = g.K.from_global(gid);
            (void)d;
            m.set(i, col);
        }
        pi.maps[k] = std::move(m);
    }
    return pi;
}

CutComplex build_cut_complex(const GoodCompData& g) {
    Report nc = nc_check(g);
    if (!nc.ok()) throw std::invalid_argument("build_cut_complex: " + nc.items[0].detail);
    CutComplex cut;
    cut.g = g;
    int n = g.dim();
    cut.cells.resize(std::size_t(n + 1));
    cut.star.reserve(g.K.n_simplices());
    for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid)
        cut.star.push_back(star_partition(g, gid, 0));
    for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid) {
        auto [d, i] = g.K.from_global(gid);
        (void)i;
        std::size_t expect = std::size_t(1) << __builtin_popcount(g.j_mask(gid));
        if (std::size_t(cut.star[gid].n_components) != expect)
            throw std::logic_error("fiber cardinality violated");
        for (int c = 0; c < cut.star[gid].n_components; ++c)
            cut.cells[std::size_t(d)].push_back({gid, c});
    }
    for (int k = 0; k <= n; ++k) {
        std::sort(cut.cells[std::size_t(k)].begin(), cut.cells[std::size_t(k)].end());
        for (std::size_t pos = 0; pos < cut.cells[std::size_t(k)].size(); ++pos)
            cut.where[cut.cells[std::size_t(k)][pos]] = {k, pos};
    }

    ChainComplex c;
    c.min_degree = 0;
    c.max_degree = n;
    for (int k = 0; k <= n; ++k) {
        c.dims.push_back(cut.cells[std::size_t(k)].size());
        std::vector<std::string> lab;
        for (auto& [gid, comp] : cut.cells[std::size_t(k)]) {
            auto [d, i] = g.K.from_global(gid);
            lab.push_back(SimplicialComplex::simplex_label(g.K.simplex(d, i)) + ":" +
                          std::to_string(comp));
        }
        c.labels.push_back(std::move(lab));
    }
    for (int k = 0; k <= n; ++k) {
        BitMatrix m(c.dim(k - 1), c.dim(k));
        if (k > 0) {
            for (std::size_t col = 0; col < cut.cells[std::size_t(k)].size(); ++col) {
                auto [gid, comp] = cut.cells[std::size_t(k)][col];
                auto [d, i] = g.K.from_global(gid);
                const auto& s = g.K.simplex(d, i);
                // a node of the component, used to locate the image component
                std::size_t node = 0;
                bool found = false;
                for (std::size_t t = 0; t < cut.star[gid].nodes.size(); ++t) {
                    if (cut.star[gid].component[t] == comp) {
                        node = cut.star[gid].nodes[t];
                        found = true;
                        break;
                    }
                }
                if (!found) throw std::logic_error("component without nodes");
                for (std::size_t drop = 0; drop < s.size(); ++drop) {
                    std::vector<int> face;
                    for (std::size_t t = 0; t < s.size(); ++t)
                        if (t != drop) face.push_back(s[t]);
                    auto pos = g.K.find(face);
                    std::size_t fgid = g.K.global_id(pos->first, pos->second);
                    int fcomp = cut.star[fgid].component_of(node);
                    if (fcomp < 0) throw std::logic_error("face component not found");
                    m.row(cut.cell_pos(k - 1, fgid, fcomp)).flip(col);
                }
            }
        }
        c.boundary.push_back(std::move(m));
    }
    if (auto bad = c.validate())
        throw std::logic_error("cut complex: boundary square nonzero at degree " + std::to_string(*bad));
    cut.cx = std::move(c);
    return cut;
}

std::vector<int> orbit_partition(const CutComplex& cut, std::size_t gid, unsigned j_sub) {
    unsigned jm = cut.g.j_mask(gid);
    if ((j_sub & ~jm) != 0)
        throw std::invalid_argument("orbit_partition: subset not contained in the simplex mask");
    StarPartition coarse = star_partition(cut.g, gid, j_sub);
    const StarPartition& fine = cut.star[gid];
    std::vector<int> klass(std::size_t(fine.n_components), -1);
    for (std::size_t t = 0; t < fine.nodes.size(); ++t) {
        int fc = fine.component[t];
        if (klass[std::size_t(fc)] < 0) klass[std::size_t(fc)] = coarse.component_of(fine.nodes[t]);
    }
    return klass;
}

FilteredComplex corner_filtration(const CutComplex& cut) {
    FilteredComplex fc;
    fc.cx = cut.cx;
    fc.origin = FiltrationOrigin::corner;
    fc.geom_dim = cut.g.dim();
    int nmax = 0;
    for (std::size_t gid = 0; gid < cut.g.K.n_simplices(); ++gid)
        nmax = std::max(nmax, __builtin_popcount(cut.g.j_mask(gid)));
    fc.pmin = -nmax;
    fc.pmax = 0;
    for (int k = 0; k <= cut.cx.max_degree; ++k) {
        std::size_t dk = cut.cx.dim(k);
        std::vector<Subspace> row(std::size_t(nmax + 1), Subspace::zero(dk));
        row[std::size_t(nmax)] = Subspace::full(dk);  // level 0
        for (int p = 1; p <= nmax; ++p) {
            std::vector<BitVector> gens;
            for (std::size_t col = 0; col < cut.cells[std::size_t(k)].size(); ++col) {
                auto [gid, comp] = cut.cells[std::size_t(k)][col];
                if (comp != 0) continue;  // handle each simplex once
                unsigned jm = cut.g.j_mask(gid);
                if (__builtin_popcount(jm) < p) continue;
                // all p-element sub-masks of jm
                std::vector<int> bits;
                for (int b = 0; b < cut.g.divisor_count(); ++b)
                    if (jm & (1u << b)) bits.push_back(b);
                // enumerate p-element combinations of the active bits
                std::vector<std::size_t> idx;
                idx.resize(static_cast<std::size_t>(p));
                for (int t = 0; t < p; ++t) idx[std::size_t(t)] = std::size_t(t);
                while (true) {
                    unsigned sub = 0;
                    for (int t = 0; t < p; ++t) sub |= (1u << bits[idx[std::size_t(t)]]);
                    std::vector<int> klass = orbit_partition(cut, gid, sub);
                    int nclass = 0;
                    for (auto c : klass) nclass = std::max(nclass, c + 1);
                    for (int cl = 0; cl < nclass; ++cl) {
                        BitVector v(dk);
                        for (int c = 0; c < int(klass.size()); ++c)
                            if (klass[std::size_t(c)] == cl) v.flip(cut.cell_pos(k, gid, c));
                        gens.push_back(std::move(v));
                    }
                    // next combination
                    int t = p - 1;
                    while (t >= 0 && idx[std::size_t(t)] == bits.size() - std::size_t(p - t)) --t;
                    if (t < 0) break;
                    ++idx[std::size_t(t)];
                    for (int u = t + 1; u < p; ++u) idx[std::size_t(u)] = idx[std::size_t(u - 1)] + 1;
                }
            }
            row[std::size_t(nmax - p)] = Subspace::span(dk, gens);
        }
        fc.level.push_back(std::move(row));
    }
    Report rep = validate_filtration(fc);
    if (!rep.ok()) throw std::logic_error("corner filtration failed validation");
    return fc;
}

Report local_model_report(const CutComplex& cut, const FilteredComplex& corner) {
    Report rep;
    bool torsor_ok = true, model_ok = true;
    std::string at;
    for (std::size_t gid = 0; gid < cut.g.K.n_simplices(); ++gid) {
        unsigned jm = cut.g.j_mask(gid);
        int rank = __builtin_popcount(jm);
        auto [d, i] = cut.g.K.from_global(gid);
        (void)i;
        const StarPartition& sp = cut.star[gid];
        // group element of each fiber component relative to component 0
        std::vector<int> bits;
        for (int b = 0; b < cut.g.divisor_count(); ++b)
            if (jm & (1u << b)) bits.push_back(b);
        std::vector<std::uint32_t> label(std::size_t(sp.n_components), 0);
        for (std::size_t t = 0; t < bits.size(); ++t) {
            std::vector<int> klass = orbit_partition(cut, gid, jm & ~(1u << bits[t]));
            for (int c = 0; c < sp.n_components; ++c)
                if (klass[std::size_t(c)] != klass[0]) label[std::size_t(c)] |= (1u << t);
        }
        std::vector<char> seen(std::size_t(1) << rank, 0);
        for (auto l : label) {
            if (seen[l]) torsor_ok = false;
            seen[l] = 1;
        }
        // the filtration restricted to the fiber matches the ideal powers
        std::size_t dk = cut.cx.dim(d);
        std::vector<BitVector> fiber_units;
        for (int c = 0; c < sp.n_components; ++c)
            fiber_units.push_back(BitVector::unit(dk, cut.cell_pos(d, gid, c)));
        Subspace fiber_span = Subspace::span(dk, fiber_units);
        for (int p = 0; p <= rank + 1; ++p) {
            Subspace restricted = intersect(corner.F(d, -p), fiber_span);
            Subspace ideal = ideal_power_basis(rank, p);
            std::vector<BitVector> transported;
            for (auto& w : ideal.basis()) {
                BitVector v(dk);
                for (int c = 0; c < sp.n_components; ++c)
                    if (w.get(label[std::size_t(c)])) v.flip(cut.cell_pos(d, gid, c));
                transported.push_back(std::move(v));
            }
            if (!(restricted == Subspace::span(dk, transported))) {
                model_ok = false;
                at = "simplex id " + std::to_string(gid) + " level " + std::to_string(p);
            }
        }
    }
    rep.add("fiber-torsor-labels", torsor_ok);
    rep.add("fiber-filtration-matches-ideal-powers", model_ok, at);
    return rep;
}

GradedIso graded_iso_psi(const CutComplex& cut, const FilteredComplex& corner, int p) {
    GradedIso out;
    int n = cut.g.dim();
    out.source_basis.resize(std::size_t(n + 1));
    for (unsigned mask : cut.g.strata_masks()) {
        if (__builtin_popcount(mask) != p) continue;
        for (auto gid : cut.g.stratum(mask)) {
            auto [d, i] = cut.g.K.from_global(gid);
            (void)i;
            out.source_basis[std::size_t(d)].push_back({mask, gid});
        }
    }
    for (auto& level : out.source_basis) std::sort(level.begin(), level.end());

    bool section_ok = true, chain_ok = true, bij_ok = true;
    std::string at;
    GradedPiece gr = graded_piece(corner, -p);

    for (int k = 0; k <= n; ++k) {
        const Quotient& q = gr.coords[std::size_t(k)];
        BitMatrix m(q.dim(), out.source_basis[std::size_t(k)].size());
        for (std::size_t col = 0; col < out.source_basis[std::size_t(k)].size(); ++col) {
            auto [mask, gid] = out.source_basis[std::size_t(k)][col];
            std::vector<int> klass = orbit_partition(cut, gid, mask);
            int nclass = 0;
            for (auto c : klass) nclass = std::max(nclass, c + 1);
            BitVector first_coords;
            for (int cl = 0; cl < nclass; ++cl) {
                BitVector v(cut.cx.dim(k));
                for (int c = 0; c < int(klass.size()); ++c)
                    if (klass[std::size_t(c)] == cl) v.flip(cut.cell_pos(k, gid, c));
                if (!corner.F(k, -p).contains(v)) {
                    section_ok = false;
                    at = "orbit sum not in level, simplex id " + std::to_string(gid);
                    continue;
                }
                BitVector co = q.coords(v);
                if (cl == 0)
                    first_coords = co;
                else if (!(co == first_coords)) {
                    section_ok = false;
                    at = "section choice changes the class, simplex id " + std::to_string(gid);
                }
            }
            for (std::size_t r = 0; r < first_coords.size(); ++r)
                if (first_coords.get(r)) m.set(r, col);
        }
        if (m.rows() != m.cols() || m.rank() != m.rows()) {
            bij_ok = false;
            at = "degree " + std::to_string(k) + ": graded dimension " + std::to_string(m.rows()) +
                 " vs stratum chains " + std::to_string(m.cols());
        }
        out.matrices[k] = std::move(m);
    }
    // chain map: boundary of strata chains vs graded boundary
    out.source_boundary[0] = BitMatrix(0, out.source_basis[0].size());
    for (int k = 1; k <= n; ++k) {
        // source boundary: simplicial within each stratum
        BitMatrix db(out.source_basis[std::size_t(k - 1)].size(),
                     out.source_basis[std::size_t(k)].size());
        for (std::size_t col = 0; col < out.source_basis[std::size_t(k)].size(); ++col) {
            auto [mask, gid] = out.source_basis[std::size_t(k)][col];
            auto [d, i] = cut.g.K.from_global(gid);
            const auto& s = cut.g.K.simplex(d, i);
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<int> face;
                for (std::size_t t = 0; t < s.size(); ++t)
                    if (t != drop) face.push_back(s[t]);
                auto pos = cut.g.K.find(face);
                std::size_t fgid = cut.g.K.global_id(pos->first, pos->second);
                auto it = std::lower_bound(out.source_basis[std::size_t(k - 1)].begin(),
                                           out.source_basis[std::size_t(k - 1)].end(),
                                           std::make_pair(mask, fgid));
                db.row(std::size_t(it - out.source_basis[std::size_t(k - 1)].begin())).flip(col);
            }
        }
        out.source_boundary[k] = db;
        const BitMatrix& mk = out.matrices[k];
        const BitMatrix& mk1 = out.matrices[k - 1];
        if (!(mk1.mul(db) == gr.cx.d(k).mul(mk))) {
            chain_ok = false;
            at = "degree " + std::to_string(k);
        }
    }
    out.report.add("section-independence", section_ok, section_ok ? "" : at);
    out.report.add("graded-iso-bijective", bij_ok, bij_ok ? "" : at);
    out.report.add("graded-iso-chain-map", chain_ok, chain_ok ? "" : at);
    return out;
}

Report pi_pushforward_exactness(const CutComplex& cut, const FilteredComplex& corner) {
    Report rep;
    ChainComplex base = cut.g.K.chain_complex();
    ChainMap pi = cut.projection(base);
    if (auto msg = chain_map_defect(pi, cut.cx, base)) {
        rep.add("projection-chain-map", false, *msg);
        return rep;
    }
    rep.add("projection-chain-map", true);
    bool surj_ok = true, ker_ok = true;
    std::string at;
    for (int k = 0; k <= cut.cx.max_degree; ++k) {
        const BitMatrix& m = pi.maps.at(k);
        if (m.rank() != base.dim(k)) {
            surj_ok = false;
            at = "degree " + std::to_string(k);
        }
        Subspace ker = Subspace::kernel(m);
        if (!(ker == corner.F(k, -1))) {
            ker_ok = false;
            at = "degree " + std::to_string(k);
        }
    }
    rep.add("projection-surjective", surj_ok, surj_ok ? "" : at);
    rep.add("kernel-equals-first-level", ker_ok, ker_ok ? "" : at);
    return rep;
}

CellularPullback cellular_pullback_phi(const GoodCompData& g) {
    CellularPullback out;
    out.dual = dual_cell_complex(g);
    out.sd = barycentric_subdivide(g);
    out.cut_sd = build_cut_complex(out.sd.g);
    out.corner_sd = corner_filtration(out.cut_sd);

    int n = g.dim();
    for (int k = 0; k <= n; ++k) {
        BitMatrix m(out.cut_sd.cx.dim(k), out.dual.fc.cx.dim(k));
        for (std::size_t col = 0; col < out.dual.basis[std::size_t(k)].size(); ++col) {
            auto [mask, gid] = out.dual.basis[std::size_t(k)][col];
            // top flags of the dual block: chains rising one dimension at a
            // time inside the stratum, starting at the simplex
            std::vector<std::vector<std::size_t>> flags;
            std::vector<std::size_t> cur = {gid};
            struct Grow {
                const GoodCompData& g;
                unsigned mask;
                int target_len;
                std::vector<std::vector<std::size_t>>& flags;
                void go(std::vector<std::size_t>& cur) {
                    if (int(cur.size()) == target_len) {
                        flags.push_back(cur);
                        return;
                    }
                    std::size_t top = cur.back();
                    auto [d, i] = g.K.from_global(top);
                    (void)i;
                    for (auto cf : g.K.cofaces(top)) {
                        auto [cd, ci] = g.K.from_global(cf);
                        (void)ci;
                        if (cd != d + 1) continue;
                        if ((g.j_mask(cf) & mask) != mask) continue;
                        cur.push_back(cf);
                        go(cur);
                        cur.pop_back();
                    }
                }
            } grow{g, mask, k + 1, flags};
            grow.go(cur);
            for (auto& flag : flags) {
                std::vector<int> verts;
                for (auto f : flag) verts.push_back(int(f));
                std::sort(verts.begin(), verts.end());
                auto pos = out.sd.g.K.find(verts);
                if (!pos) throw std::logic_error("flag missing from the subdivision");
                std::size_t sd_gid = out.sd.g.K.global_id(pos->first, pos->second);
                for (int c = 0; c < out.cut_sd.star[sd_gid].n_components; ++c)
                    m.row(out.cut_sd.cell_pos(k, sd_gid, c)).flip(col);
            }
        }
        out.phi.map.maps[k] = std::move(m);
    }
    auto defect = filtered_map_defect(out.phi, out.dual.fc, out.corner_sd);
    out.report.add("comparison-filtered-chain-map", !defect.has_value(), defect.value_or(""));
    bool qis = false;
    if (!defect) qis = is_filtered_quasi_iso(out.phi, out.dual.fc, out.corner_sd);
    out.report.add("comparison-graded-quasi-iso", qis);
    return out;
}

ChainComplex GradedIso::source_complex() const {
    ChainComplex c;
    c.min_degree = 0;
    c.max_degree = int(source_basis.size()) - 1;
    for (std::size_t k = 0; k < source_basis.size(); ++k) c.dims.push_back(source_basis[k].size());
    for (int k = 0; k <= c.max_degree; ++k) {
        auto it = source_boundary.find(k);
        if (it != source_boundary.end())
            c.boundary.push_back(it->second);
        else
            c.boundary.push_back(BitMatrix(c.dim(k - 1), c.dim(k)));
    }
    c.labels.resize(c.dims.size());
    return c;
}

std::vector<int> SimplicialMapData::apply(const std::vector<int>& simplex) const {
    std::vector<int> img;
    for (int v : simplex) {
        if (v < 0 || v >= int(vertex_map.size()))
            throw std::invalid_argument("vertex map does not cover the source");
        img.push_back(vertex_map[std::size_t(v)]);
    }
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
}

InducedMap induced_map(const SimplicialMapData& f, const CutComplex& src,
                       const FilteredComplex& src_corner, const CutComplex& dst,
                       const FilteredComplex& dst_corner) {
    InducedMap out;
    // simplicial and pair conditions
    for (std::size_t gid = 0; gid < src.g.K.n_simplices(); ++gid) {
        auto [d, i] = src.g.K.from_global(gid);
        std::vector<int> img = f.apply(src.g.K.simplex(d, i));
        auto pos = dst.g.K.find(img);
        if (!pos) {
            out.report.add("simplicial", false,
                           "image of " + SimplicialComplex::simplex_label(src.g.K.simplex(d, i)) +
                               " is not a simplex");
            return out;
        }
        std::size_t igid = dst.g.K.global_id(pos->first, pos->second);
        if (src.g.j_mask(gid) == 0 && dst.g.j_mask(igid) != 0) {
            out.report.add("pair-condition", false,
                           "non-divisor simplex " +
                               SimplicialComplex::simplex_label(src.g.K.simplex(d, i)) +
                               " lands in the target divisor");
            return out;
        }
    }
    out.report.add("simplicial", true);
    out.report.add("pair-condition", true);

    for (int k = 0; k <= src.cx.max_degree; ++k) {
        BitMatrix m(dst.cx.dim(k), src.cx.dim(k));
        for (std::size_t col = 0; col < src.cells[std::size_t(k)].size(); ++col) {
            auto [gid, comp] = src.cells[std::size_t(k)][col];
            auto [d, i] = src.g.K.from_global(gid);
            std::vector<int> img = f.apply(src.g.K.simplex(d, i));
            if (int(img.size()) != d + 1) continue;  // degenerate, pushforward zero
            auto pos = dst.g.K.find(img);
            std::size_t igid = dst.g.K.global_id(pos->first, pos->second);
            // carry the component through a node
            std::size_t node = 0;
            bool found = false;
            for (std::size_t t = 0; t < src.star[gid].nodes.size(); ++t)
                if (src.star[gid].component[t] == comp) {
                    node = src.star[gid].nodes[t];
                    found = true;
                    break;
                }
            if (!found) throw std::logic_error("component without nodes");
            auto [nd, ni] = src.g.K.from_global(node);
            std::vector<int> nimg = f.apply(src.g.K.simplex(nd, ni));
            auto npos = dst.g.K.find(nimg);
            if (!npos) throw std::logic_error("node image missing");
            std::size_t ngid = dst.g.K.global_id(npos->first, npos->second);
            int icomp = dst.star[igid].component_of(ngid);
            if (icomp < 0) {
                out.report.add("component-image", false,
                               "image component undefined over simplex id " + std::to_string(gid));
                return out;
            }
            m.row(dst.cell_pos(k, igid, icomp)).flip(col);
        }
        out.map.map.maps[k] = std::move(m);
    }
    auto defect = filtered_map_defect(out.map, src_corner, dst_corner);
    out.report.add("induced-filtered-chain-map", !defect.has_value(), defect.value_or(""));
    return out;
}

}  // namespace wf
