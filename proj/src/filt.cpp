#include "wf/filt.hpp"

#include <algorithm>
#include <stdexcept>

namespace wf {

FilteredComplex FilteredComplex::trivial(ChainComplex c) {
    FilteredComplex fc;
    fc.cx = std::move(c);
    fc.pmin = 0;
    fc.pmax = 0;
    for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
        fc.level.push_back({Subspace::full(fc.cx.dim(k))});
    }
    return fc;
}

Report validate_filtration(const FilteredComplex& fc) {
    Report rep;
    bool nested = true, stable = true, exhaustive = true;
    std::string nested_at, stable_at, exhaustive_at;
    for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
        for (int p = fc.pmin; p <= fc.pmax; ++p) {
            Subspace cur = fc.F(k, p);
            if (p < fc.pmax && !fc.F(k, p + 1).contains(cur)) {
                nested = false;
                nested_at = "(p=" + std::to_string(p) + ",k=" + std::to_string(k) + ")";
            }
            Subspace target = fc.F(k - 1, p);
            for (auto& b : cur.basis()) {
                if (!target.contains(fc.cx.d(k).apply(b))) {
                    stable = false;
                    stable_at = "(p=" + std::to_string(p) + ",k=" + std::to_string(k) + ")";
                    break;
                }
            }
        }
        if (fc.F(k, fc.pmax).dim() != fc.cx.dim(k)) {
            exhaustive = false;
            exhaustive_at = "(k=" + std::to_string(k) + ")";
        }
    }
    rep.add("nested", nested, nested_at);
    rep.add("boundary-stable", stable, stable_at);
    rep.add("exhaustive", exhaustive, exhaustive_at);
    if (fc.origin == FiltrationOrigin::corner || fc.origin == FiltrationOrigin::dual_cell) {
        bool bound = true;
        std::string at;
        int n = fc.geom_dim;
        for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
            // decreasing level n-k+1 must vanish, i.e. increasing level k-n-1
            if (fc.F(k, k - n - 1).dim() != 0) {
                bound = false;
                at = "(k=" + std::to_string(k) + ")";
            }
        }
        rep.add("corner-vanishing-bound", bound, at);
    }
    return rep;
}

namespace {

// Z^r_{p,k} = F_p C_k ∩ d^{-1}(F_{p-r} C_{k-1}); r may exceed the window.
Subspace cycle_space(const FilteredComplex& fc, int p, int k, int r) {
    Subspace zp = fc.F(k, p);
    if (zp.dim() == 0) return zp;
    Subspace pre = preimage(fc.cx.d(k), fc.F(k - 1, p - r));
    return intersect(zp, pre);
}

}  // namespace

std::size_t SpectralSequence::dim(int r, int p, int q) const {
    auto* e = entry(r, p, q);
    return e ? e->space.dim() : 0;
}

std::size_t SpectralSequence::d_rank(int r, int p, int q) const {
    auto* e = entry(r, p, q);
    return e ? e->d_rank : 0;
}

const PageEntry* SpectralSequence::entry(int r, int p, int q) const {
    if (r > max_page) r = max_page;  // pages are constant from max_page on
    auto it = entries.find({r, p, q});
    return it == entries.end() ? nullptr : &it->second;
}

std::vector<std::tuple<int, int, std::size_t, std::size_t>> SpectralSequence::page(int r) const {
    std::vector<std::tuple<int, int, std::size_t, std::size_t>> out;
    if (r > max_page) r = max_page;
    for (auto& [key, e] : entries) {
        auto [rr, p, q] = key;
        if (rr != r) continue;
        if (e.space.dim() == 0 && e.d_rank == 0) continue;
        out.push_back({p, q, e.space.dim(), e.d_rank});
    }
    return out;
}

std::vector<std::size_t> SpectralSequence::infinity_dims_by_degree() const {
    std::vector<std::size_t> out(std::size_t(kmax - kmin + 1), 0);
    for (auto& [key, e] : entries) {
        auto [r, p, q] = key;
        if (r != max_page) continue;
        int k = p + q;
        if (k < kmin || k > kmax) continue;
        out[std::size_t(k - kmin)] += e.space.dim();
    }
    return out;
}

SpectralSequence spectral_sequence(const FilteredComplex& fc) {
    SpectralSequence ss;
    ss.pmin = fc.pmin;
    ss.pmax = fc.pmax;
    ss.kmin = fc.cx.min_degree;
    ss.kmax = fc.cx.max_degree;
    int width = fc.pmax - fc.pmin + 1;
    ss.max_page = width + 1;
    if (fc.cx.empty()) {
        ss.stable_page = 1;
        return ss;
    }
    for (int r = 1; r <= ss.max_page; ++r) {
        for (int p = fc.pmin; p <= fc.pmax; ++p) {
            for (int k = ss.kmin; k <= ss.kmax; ++k) {
                int q = k - p;
                Subspace z = cycle_space(fc, p, k, r);
                Subspace below = cycle_space(fc, p - 1, k, r - 1);
                // boundaries: d of Z^{r-1}_{p+r-1} in degree k+1
                Subspace zin = cycle_space(fc, p + r - 1, k + 1, r - 1);
                std::vector<BitVector> bd;
                for (auto& b : zin.basis()) bd.push_back(fc.cx.d(k + 1).apply(b));
                Subspace bnd = Subspace::span(fc.cx.dim(k), bd);
                Subspace den = sum(below, bnd);
                PageEntry e{Quotient(std::move(z), std::move(den)), BitMatrix(), 0};
                ss.entries.emplace(std::make_tuple(r, p, q), std::move(e));
            }
        }
        // differentials d^r : (p,q) -> (p-r, q+r-1)
        for (int p = fc.pmin; p <= fc.pmax; ++p) {
            for (int k = ss.kmin; k <= ss.kmax; ++k) {
                int q = k - p;
                auto its = ss.entries.find({r, p, q});
                if (its == ss.entries.end()) continue;
                PageEntry& src = its->second;
                int tp = p - r, tq = q + r - 1;
                auto itt = ss.entries.find({r, tp, tq});
                std::size_t tdim = itt == ss.entries.end() ? 0 : itt->second.space.dim();
                BitMatrix m(tdim, src.space.dim());
                if (tdim > 0 && src.space.dim() > 0) {
                    for (std::size_t j = 0; j < src.space.dim(); ++j) {
                        BitVector img = fc.cx.d(k).apply(src.space.reps()[j]);
                        BitVector co = itt->second.space.coords(img);
                        for (std::size_t i = 0; i < tdim; ++i)
                            if (co.get(i)) m.set(i, j);
                    }
                }
                src.d_rank = m.rank();
                src.d = std::move(m);
            }
        }
    }
    // first page from which every differential vanishes
    ss.stable_page = 1;
    for (int r = ss.max_page; r >= 1; --r) {
        bool all_zero = true;
        for (auto& [key, e] : ss.entries) {
            if (std::get<0>(key) == r && e.d_rank != 0) {
                all_zero = false;
                break;
            }
        }
        if (!all_zero) {
            ss.stable_page = std::min(r + 1, ss.max_page);
            break;
        }
        ss.stable_page = r;
    }
    return ss;
}

Report check_support(const SpectralSequence& ss, FiltrationOrigin origin, int n) {
    Report rep;
    if (origin != FiltrationOrigin::corner && origin != FiltrationOrigin::weight) return rep;
    bool ok = true;
    std::string at;
    for (auto& [key, e] : ss.entries) {
        auto [r, p, q] = key;
        if (e.space.dim() == 0) continue;
        bool inside;
        if (origin == FiltrationOrigin::corner) {
            // triangle (0,0), (0,n), (-n,n)
            inside = p <= 0 && q <= n && q >= -p;
        } else {
            // triangle (0,0), (-n,2n), (-n,n)
            inside = p <= 0 && p >= -n && q >= -p && q <= -2 * p;
        }
        if (!inside) {
            ok = false;
            at = "(r=" + std::to_string(r) + ",p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")";
        }
    }
    rep.add(origin == FiltrationOrigin::corner ? "corner-support-triangle" : "weight-support-triangle",
            ok, at);
    return rep;
}

FilteredComplex decalage(const FilteredComplex& fc) {
    FilteredComplex out;
    out.cx = fc.cx;
    out.origin = fc.origin == FiltrationOrigin::corner ? FiltrationOrigin::weight : FiltrationOrigin::generic;
    out.geom_dim = fc.geom_dim;
    if (fc.cx.empty()) {
        out.pmin = out.pmax = 0;
        return out;
    }
    out.pmin = fc.pmin - fc.cx.max_degree;
    out.pmax = fc.pmax - std::min(fc.cx.min_degree, 0);
    for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
        std::vector<Subspace> row;
        for (int p = out.pmin; p <= out.pmax; ++p) {
            Subspace base = fc.F(k, p + k);
            Subspace pre = preimage(fc.cx.d(k), fc.F(k - 1, p + k - 1));
            row.push_back(intersect(base, pre));
        }
        out.level.push_back(std::move(row));
    }
    // trim constant levels at the bottom
    while (out.pmin < out.pmax) {
        bool all_zero = true;
        for (int k = out.cx.min_degree; k <= out.cx.max_degree && all_zero; ++k)
            if (out.F(k, out.pmin).dim() != 0) all_zero = false;
        if (!all_zero) break;
        for (auto& row : out.level) row.erase(row.begin());
        ++out.pmin;
    }
    return out;
}

std::size_t WeightTable::h(int k) const {
    if (k < kmin || k > kmax) return 0;
    return h_dims[std::size_t(k - kmin)];
}

std::size_t WeightTable::w(int k, int p) const {
    if (k < kmin || k > kmax) return 0;
    if (p < pmin) return 0;
    if (p > pmax) return h(k);
    return w_dims[std::size_t(k - kmin)][std::size_t(p - pmin)];
}

bool WeightTable::operator==(const WeightTable& o) const {
    int klo = std::min(kmin, o.kmin), khi = std::max(kmax, o.kmax);
    int plo = std::min(pmin, o.pmin), phi = std::max(pmax, o.pmax);
    for (int k = klo; k <= khi; ++k) {
        if (h(k) != o.h(k)) return false;
        for (int p = plo; p <= phi; ++p)
            if (w(k, p) != o.w(k, p)) return false;
    }
    return true;
}

Subspace HomologyFiltration::subspace(int k, int p) const {
    if (k < table.kmin || k > table.kmax) return Subspace::zero(0);
    std::size_t hk = hom.dim(k);
    if (p < table.pmin) return Subspace::zero(hk);
    if (p > table.pmax) return Subspace::full(hk);
    return sub[std::size_t(k - table.kmin)][std::size_t(p - table.pmin)];
}

HomologyFiltration homology_filtration(const FilteredComplex& fc) {
    HomologyFiltration out;
    out.hom = homology(fc.cx);
    out.table.kmin = fc.cx.min_degree;
    out.table.kmax = fc.cx.max_degree;
    out.table.pmin = fc.pmin;
    out.table.pmax = fc.pmax;
    for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
        const Quotient& hq = out.hom.at(k);
        out.table.h_dims.push_back(hq.dim());
        Subspace cycles = Subspace::kernel(fc.cx.d(k));
        std::vector<Subspace> row;
        std::vector<std::size_t> dims;
        for (int p = fc.pmin; p <= fc.pmax; ++p) {
            Subspace zc = intersect(fc.F(k, p), cycles);
            std::vector<BitVector> gens;
            for (auto& b : zc.basis()) gens.push_back(hq.coords(b));
            Subspace img = Subspace::span(hq.dim(), gens);
            dims.push_back(img.dim());
            row.push_back(std::move(img));
        }
        out.sub.push_back(std::move(row));
        out.table.w_dims.push_back(std::move(dims));
    }
    // cross-check against the abutment of the spectral sequence
    SpectralSequence ss = spectral_sequence(fc);
    for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
        for (int p = fc.pmin; p <= fc.pmax; ++p) {
            std::size_t jump = out.table.w(k, p) - out.table.w(k, p - 1);
            if (jump != ss.dim(ss.max_page, p, k - p))
                throw std::logic_error("homology_filtration: abutment mismatch at (p=" +
                                       std::to_string(p) + ",k=" + std::to_string(k) + ")");
        }
    }
    return out;
}

std::optional<std::string> filtered_map_defect(const FilteredChainMap& f, const FilteredComplex& src,
                                               const FilteredComplex& dst) {
    if (auto msg = chain_map_defect(f.map, src.cx, dst.cx)) return msg;
    for (int k = src.cx.min_degree; k <= src.cx.max_degree; ++k) {
        BitMatrix fk = f.map.at(k, src.cx, dst.cx);
        for (int p = std::min(src.pmin, dst.pmin); p <= std::max(src.pmax, dst.pmax); ++p) {
            Subspace from = src.F(k, p);
            Subspace to = dst.F(k, p);
            for (auto& b : from.basis()) {
                if (!to.contains(fk.apply(b)))
                    return "filtration not preserved at (p=" + std::to_string(p) +
                           ",k=" + std::to_string(k) + ")";
            }
        }
    }
    return std::nullopt;
}

GradedPiece graded_piece(const FilteredComplex& fc, int p) {
    GradedPiece g;
    g.cx.min_degree = fc.cx.min_degree;
    g.cx.max_degree = fc.cx.max_degree;
    if (fc.cx.empty()) return g;
    for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
        g.coords.emplace_back(fc.F(k, p), fc.F(k, p - 1));
        g.cx.dims.push_back(g.coords.back().dim());
    }
    g.cx.labels.resize(g.cx.dims.size());
    for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
        const Quotient& qk = g.coords[std::size_t(k - fc.cx.min_degree)];
        std::size_t rows = g.cx.dim(k - 1);
        BitMatrix m(rows, qk.dim());
        if (rows) {
            const Quotient& qk1 = g.coords[std::size_t(k - 1 - fc.cx.min_degree)];
            for (std::size_t j = 0; j < qk.dim(); ++j) {
                BitVector img = fc.cx.d(k).apply(qk.reps()[j]);
                BitVector co = qk1.coords(img);
                for (std::size_t i = 0; i < rows; ++i)
                    if (co.get(i)) m.set(i, j);
            }
        }
        g.cx.boundary.push_back(std::move(m));
    }
    return g;
}

bool is_filtered_quasi_iso(const FilteredChainMap& f, const FilteredComplex& src,
                           const FilteredComplex& dst) {
    if (auto msg = filtered_map_defect(f, src, dst))
        throw std::invalid_argument("is_filtered_quasi_iso: " + *msg);
    int plo = std::min(src.pmin, dst.pmin), phi = std::max(src.pmax, dst.pmax);
    for (int p = plo; p <= phi; ++p) {
        GradedPiece gs = graded_piece(src, p);
        GradedPiece gd = graded_piece(dst, p);
        // induced map on graded pieces
        ChainMap gf;
        for (int k = src.cx.min_degree; k <= src.cx.max_degree; ++k) {
            const Quotient& qs = gs.coords[std::size_t(k - src.cx.min_degree)];
            std::size_t rows = gd.cx.dim(k);
            BitMatrix m(rows, qs.dim());
            if (qs.dim() > 0 && rows > 0 && k >= dst.cx.min_degree && k <= dst.cx.max_degree) {
                const Quotient& qd = gd.coords[std::size_t(k - dst.cx.min_degree)];
                BitMatrix fk = f.map.at(k, src.cx, dst.cx);
                for (std::size_t j = 0; j < qs.dim(); ++j) {
                    BitVector co = qd.coords(fk.apply(qs.reps()[j]));
                    for (std::size_t i = 0; i < rows; ++i)
                        if (co.get(i)) m.set(i, j);
                }
            }
            gf.maps[k] = std::move(m);
        }
        if (!is_quasi_iso(gf, gs.cx, gd.cx)) return false;
    }
    return true;
}

FilteredTotal filtered_total_complex(const FilteredCube& cube) {
    CubeDiagram plain;
    plain.directions = cube.directions;
    for (auto& [mask, fc] : cube.nodes) plain.nodes[mask] = fc.cx;
    for (auto& [key, f] : cube.arrows) {
        auto itf = cube.nodes.find(key.first);
        auto itt = cube.nodes.find(key.second);
        if (itf == cube.nodes.end() || itt == cube.nodes.end())
            throw std::invalid_argument("filtered_total_complex: arrow endpoints missing");
        if (auto msg = filtered_map_defect(f, itf->second, itt->second))
            throw std::invalid_argument("filtered_total_complex: arrow (" + std::to_string(key.first) +
                                        "->" + std::to_string(key.second) + "): " + *msg);
        plain.arrows[key] = f.map;
    }
    TotalComplex tc = total_complex(plain);
    FilteredTotal out;
    out.layout = tc.layout;
    out.fc.cx = std::move(tc.complex);
    int plo = 0, phi = 0;
    bool first = true;
    for (auto& [mask, fc] : cube.nodes) {
        if (fc.cx.empty()) continue;
        if (first) {
            plo = fc.pmin;
            phi = fc.pmax;
            first = false;
        } else {
            plo = std::min(plo, fc.pmin);
            phi = std::max(phi, fc.pmax);
        }
    }
    out.fc.pmin = plo;
    out.fc.pmax = phi;
    for (int k = out.fc.cx.min_degree; k <= out.fc.cx.max_degree; ++k) {
        std::size_t dk = out.fc.cx.dim(k);
        std::vector<Subspace> row;
        for (int p = plo; p <= phi; ++p) {
            std::vector<BitVector> gens;
            for (auto& [mask, l, off, dm] : out.layout.blocks[std::size_t(k - out.fc.cx.min_degree)]) {
                const FilteredComplex& node = cube.nodes.at(mask);
                Subspace part = node.F(l, p);
                for (auto& b : part.basis()) {
                    BitVector v(dk);
                    for (std::size_t i = 0; i < b.size(); ++i)
                        if (b.get(i)) v.set(off + i);
                    gens.push_back(std::move(v));
                }
            }
            row.push_back(Subspace::span(dk, gens));
        }
        out.fc.level.push_back(std::move(row));
    }
    return out;
}

FilteredComplex filtered_mapping_cone(const FilteredChainMap& f, const FilteredComplex& src,
                                      const FilteredComplex& dst) {
    if (auto msg = filtered_map_defect(f, src, dst))
        throw std::invalid_argument("filtered_mapping_cone: " + *msg);
    FilteredComplex out;
    out.cx = mapping_cone(f.map, src.cx, dst.cx);
    out.pmin = std::min(src.pmin, dst.pmin);
    out.pmax = std::max(src.pmax, dst.pmax);
    for (int k = out.cx.min_degree; k <= out.cx.max_degree; ++k) {
        std::size_t dk = out.cx.dim(k);
        std::size_t sa = src.cx.dim(k - 1);
        std::vector<Subspace> row;
        for (int p = out.pmin; p <= out.pmax; ++p) {
            std::vector<BitVector> gens;
            Subspace src_part = src.F(k - 1, p);
            Subspace dst_part = dst.F(k, p);
            for (auto& b : src_part.basis()) {
                BitVector v(dk);
                for (std::size_t i = 0; i < b.size(); ++i)
                    if (b.get(i)) v.set(i);
                gens.push_back(std::move(v));
            }
            for (auto& b : dst_part.basis()) {
                BitVector v(dk);
                for (std::size_t i = 0; i < b.size(); ++i)
                    if (b.get(i)) v.set(sa + i);
                gens.push_back(std::move(v));
            }
            row.push_back(Subspace::span(dk, gens));
        }
        out.level.push_back(std::move(row));
    }
    return out;
}

}  // namespace wf
