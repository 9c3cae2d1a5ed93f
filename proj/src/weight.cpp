#include "wf/weight.hpp"

#include <algorithm>
#include <stdexcept>

namespace wf {

WeightComplexResult weight_complex(const GoodCompData& g) {
    WeightComplexResult out;
    Report val = validate_good_comp(g);
    out.report.merge(val);
    Report nc = nc_check(g);
    out.report.merge(nc);
    if (!val.ok() || !nc.ok()) return out;

    out.cut = build_cut_complex(g);
    out.corner = corner_filtration(out.cut);
    int n = g.dim();

    SpectralSequence corner_ss = spectral_sequence(out.corner);
    out.report.merge(check_support(corner_ss, FiltrationOrigin::corner, n));

    out.weight = decalage(out.corner);
    out.weight.origin = FiltrationOrigin::weight;
    out.weight.geom_dim = n;
    out.hf = homology_filtration(out.weight);
    out.pages = spectral_sequence(out.weight);
    out.report.merge(check_support(out.pages, FiltrationOrigin::weight, n));

    bool bottom_ok = true, top_ok = true;
    for (int k = 0; k <= out.weight.cx.max_degree; ++k) {
        if (out.weight.F(k, -n - 1).dim() != 0) bottom_ok = false;
        if (out.hf.table.w(k, -k) != out.hf.table.h(k)) top_ok = false;
    }
    out.report.add("weight-vanishes-below", bottom_ok);
    out.report.add("weight-full-at-minus-degree", top_ok);
    return out;
}

AssembleResult assemble(const HyperresolutionInput& h) {
    AssembleResult out;
    std::map<unsigned, WeightComplexResult> nodes;
    for (auto& [mask, g] : h.nodes) {
        WeightComplexResult wc = weight_complex(g);
        if (!wc.report.ok()) {
            out.report.add("node-" + std::to_string(mask), false, "node failed validation");
            return out;
        }
        nodes.emplace(mask, std::move(wc));
    }
    out.report.add("nodes-valid", true);

    FilteredCube cube;
    cube.directions = h.directions;
    for (auto& [mask, wc] : nodes) cube.nodes[mask] = wc.weight;
    for (auto& [key, f] : h.arrows) {
        auto its = nodes.find(key.first);
        auto itt = nodes.find(key.second);
        if (its == nodes.end() || itt == nodes.end()) {
            out.report.add("arrows-resolve", false, "arrow endpoint missing");
            return out;
        }
        InducedMap ind = induced_map(f, its->second.cut, its->second.corner, itt->second.cut,
                                     itt->second.corner);
        if (!ind.report.ok()) {
            out.report.merge(ind.report);
            return out;
        }
        // the same cellular map respects the shifted filtrations
        FilteredChainMap wmap{ind.map.map};
        if (auto msg = filtered_map_defect(wmap, its->second.weight, itt->second.weight)) {
            out.report.add("arrow-weight-filtered", false, *msg);
            return out;
        }
        cube.arrows[key] = wmap;
    }
    out.report.add("arrows-filtered", true);

    out.total = filtered_total_complex(cube);
    out.hf = homology_filtration(out.total.fc);

    int n = 0;
    for (auto& [mask, wc] : nodes)
        n = std::max(n, wc.cut.g.dim() + __builtin_popcount(mask) - 1);
    bool bounds_ok = true;
    for (int k = out.total.fc.cx.min_degree; k <= out.total.fc.cx.max_degree; ++k) {
        if (out.total.fc.F(k, -n - 1).dim() != 0) bounds_ok = false;
        if (out.hf.table.w(k, 0) != out.hf.table.h(k)) bounds_ok = false;
    }
    out.report.add("assembled-weight-bounds", bounds_ok);
    return out;
}

Report kernel_characterization(const GoodCompData& g) {
    Report rep;
    WeightComplexResult wc = weight_complex(g);
    rep.merge(wc.report);
    if (!wc.report.ok()) return rep;
    ChainComplex base = g.K.chain_complex();
    ChainMap pi = wc.cut.projection(base);
    HomologyData hx = homology(wc.cut.cx);
    HomologyData hbar = homology(base);
    bool ok = true;
    std::string at;
    for (int k = 0; k <= wc.cut.cx.max_degree; ++k) {
        BitMatrix m = induced_on_homology(pi, wc.cut.cx, base, hx, hbar, k);
        Subspace ker = Subspace::kernel(m);
        Subspace w = wc.hf.subspace(k, -k - 1);
        if (!(ker == w)) {
            ok = false;
            at = "degree " + std::to_string(k);
        }
    }
    rep.add("kernel-equals-deep-weight", ok, ok ? "" : at);
    return rep;
}

std::size_t BlowupSquareData::dim(const std::string& space, int k) const {
    auto it = dims.find(space);
    if (it == dims.end()) return 0;
    if (k < 0 || k >= int(it->second.size())) return 0;
    return it->second[std::size_t(k)];
}

BitMatrix BlowupSquareData::map_at(const std::string& name, int k, const std::string& src_space,
                                   const std::string& dst_space, int dst_k) const {
    auto it = maps.find(name);
    if (it != maps.end()) {
        auto jt = it->second.find(k);
        if (jt != it->second.end()) return jt->second;
    }
    return BitMatrix(dim(dst_space, dst_k), dim(src_space, k));
}

Report blowup_square_checks(const BlowupSquareData& b) {
    Report rep;
    if (b.codim < 1) {
        rep.add("codimension-positive", false, "the center must have smaller dimension");
        return rep;
    }
    rep.add("codimension-positive", true);
    int m = b.codim;
    int kmax = 0;
    for (auto& [space, dd] : b.dims) kmax = std::max(kmax, int(dd.size()));

    bool degree_one = true, commute = true, exact = true, split1 = true, split2 = true;
    bool tq_exists = true, tq_unique = true, tq_square = true, tq_acyclic = true;
    std::string at;

    for (int k = 0; k <= kmax; ++k) {
        BitMatrix p = b.map_at("p", k, "Mt", "M", k);
        BitMatrix p_up = b.map_at("p_up", k, "M", "Mt", k);
        BitMatrix comp = p.mul(p_up);
        if (!(comp == BitMatrix::identity(b.dim("M", k)))) {
            degree_one = false;
            at = "degree " + std::to_string(k);
        }
        // lower square commutes: r q = p s
        BitMatrix rq = b.map_at("r", k, "C", "M", k).mul(b.map_at("q", k, "E", "C", k));
        BitMatrix ps = p.mul(b.map_at("s", k, "E", "Mt", k));
        if (!(rq == ps)) {
            commute = false;
            at = "degree " + std::to_string(k);
        }
    }
    rep.add("pushforward-section", degree_one, degree_one ? "" : at);
    rep.add("square-commutes", commute, commute ? "" : at);

    for (int k = 1; k <= kmax; ++k) {
        // 0 -> H_k(E) -> H_k(C) + H_k(Mt) -> H_k(M) -> 0
        std::size_t de = b.dim("E", k), dc = b.dim("C", k), dmt = b.dim("Mt", k), dm = b.dim("M", k);
        BitMatrix q = b.map_at("q", k, "E", "C", k);
        BitMatrix s = b.map_at("s", k, "E", "Mt", k);
        BitMatrix r = b.map_at("r", k, "C", "M", k);
        BitMatrix p = b.map_at("p", k, "Mt", "M", k);
        BitMatrix i(dc + dmt, de), j(dm, dc + dmt);
        for (std::size_t a = 0; a < dc; ++a)
            for (std::size_t t = 0; t < de; ++t)
                if (q.get(a, t)) i.set(a, t);
        for (std::size_t a = 0; a < dmt; ++a)
            for (std::size_t t = 0; t < de; ++t)
                if (s.get(a, t)) i.set(dc + a, t);
        for (std::size_t a = 0; a < dm; ++a) {
            for (std::size_t t = 0; t < dc; ++t)
                if (r.get(a, t)) j.set(a, t);
            for (std::size_t t = 0; t < dmt; ++t)
                if (p.get(a, t)) j.set(a, dc + t);
        }
        bool inj = rank_kernel_image(i).kernel.dim() == 0;
        bool surj = rank_kernel_image(j).rank == dm;
        bool middle = Subspace::kernel(j) == Subspace::column_space(i);
        if (!(inj && surj && middle)) {
            exact = false;
            at = "degree " + std::to_string(k);
        }
    }
    rep.add("short-exact-sequence", exact, exact ? "" : at);

    std::map<int, BitMatrix> tq;  // H_{k-1}(E) -> H_{k-m}(C), keyed by source degree k-1
    for (int k = 0; k <= kmax + 1; ++k) {
        // splittings in H_k(Mt) and H_{k-1}(E)
        BitMatrix p = b.map_at("p", k, "Mt", "M", k);
        BitMatrix p_up = b.map_at("p_up", k, "M", "Mt", k);
        Subspace kerp = Subspace::kernel(p);
        Subspace imp = Subspace::column_space(p_up);
        if (intersect(kerp, imp).dim() != 0 || sum(kerp, imp).dim() != b.dim("Mt", k)) {
            split1 = false;
            at = "degree " + std::to_string(k);
        }
        BitMatrix q_up = b.map_at("q_up", k - m, "C", "E", k - 1);
        BitMatrix s_up = b.map_at("s_up", k, "Mt", "E", k - 1);
        Subspace imq = Subspace::column_space(q_up);
        std::vector<BitVector> sk;
        for (auto& v : kerp.basis()) sk.push_back(s_up.apply(v));
        Subspace skerp = Subspace::span(b.dim("E", k - 1), sk);
        if (intersect(imq, skerp).dim() != 0 || sum(imq, skerp).dim() != b.dim("E", k - 1)) {
            split2 = false;
            at = "degree " + std::to_string(k);
        }
        // the unique retraction: q_up beta + s_up gamma -> beta
        std::size_t de = b.dim("E", k - 1), dc = b.dim("C", k - m);
        if (q_up.rank() != dc) {
            tq_exists = false;  // retraction needs an injective section
            at = "degree " + std::to_string(k);
        }
        SpanSolver solver(de);
        std::vector<std::size_t> gen_cols;
        for (std::size_t t = 0; t < dc; ++t) {
            gen_cols.push_back(solver.generator_count());
            solver.add(q_up.column(t));
        }
        for (auto& v : sk) solver.add(v);
        BitMatrix tqk(dc, de);
        for (std::size_t col = 0; col < de; ++col) {
            auto combo = solver.express(BitVector::unit(de, col));
            if (!combo) {
                tq_exists = false;
                at = "degree " + std::to_string(k);
                continue;
            }
            for (std::size_t t = 0; t < dc; ++t)
                if (combo->get(gen_cols[t])) tqk.set(t, col);
        }
        tq[k - 1] = tqk;
        // uniqueness comes from the splitting being direct
        if (!split2) tq_unique = false;
    }
    rep.add("homology-splittings", split1 && split2, (split1 && split2) ? "" : at);
    rep.add("retraction-exists", tq_exists, tq_exists ? "" : at);
    rep.add("retraction-unique", tq_unique, tq_unique ? "" : at);

    for (int k = 0; k <= kmax; ++k) {
        // commutativity: tq . s_up = r_up . p on H_k(Mt)
        BitMatrix lhs = tq.count(k - 1) ? tq[k - 1].mul(b.map_at("s_up", k, "Mt", "E", k - 1))
                                        : BitMatrix(b.dim("C", k - m), b.dim("Mt", k));
        BitMatrix rhs =
            b.map_at("r_up", k, "M", "C", k - m).mul(b.map_at("p", k, "Mt", "M", k));
        if (!(lhs == rhs)) {
            tq_square = false;
            at = "degree " + std::to_string(k);
        }
        // acyclicity: 0 -> H_k(Mt) -> H_{k-1}(E) + H_k(M) -> H_{k-m}(C) -> 0
        std::size_t dmt = b.dim("Mt", k), de = b.dim("E", k - 1), dm = b.dim("M", k),
                    dc = b.dim("C", k - m);
        BitMatrix first(de + dm, dmt), second(dc, de + dm);
        BitMatrix s_up = b.map_at("s_up", k, "Mt", "E", k - 1);
        BitMatrix p = b.map_at("p", k, "Mt", "M", k);
        for (std::size_t a = 0; a < de; ++a)
            for (std::size_t t = 0; t < dmt; ++t)
                if (s_up.get(a, t)) first.set(a, t);
        for (std::size_t a = 0; a < dm; ++a)
            for (std::size_t t = 0; t < dmt; ++t)
                if (p.get(a, t)) first.set(de + a, t);
        BitMatrix r_up = b.map_at("r_up", k, "M", "C", k - m);
        const BitMatrix& tqe = tq[k - 1];
        for (std::size_t a = 0; a < dc; ++a) {
            for (std::size_t t = 0; t < de; ++t)
                if (tqe.get(a, t)) second.set(a, t);
            for (std::size_t t = 0; t < dm; ++t)
                if (r_up.get(a, t)) second.set(a, de + t);
        }
        bool inj = rank_kernel_image(first).kernel.dim() == 0;
        bool surj = rank_kernel_image(second).rank == dc;
        bool middle = Subspace::kernel(second) == Subspace::column_space(first);
        if (!(inj && surj && middle)) {
            tq_acyclic = false;
            at = "degree " + std::to_string(k);
        }
    }
    rep.add("retraction-square-commutes", tq_square, tq_square ? "" : at);
    rep.add("retraction-square-acyclic", tq_acyclic, tq_acyclic ? "" : at);
    return rep;
}

BlowupSquareData blowup_square_from_triangulations(const SimplicialComplex& e,
                                                   const SimplicialComplex& c,
                                                   const SimplicialComplex& mt,
                                                   const SimplicialComplex& m,
                                                   const SimplicialMapData& q,
                                                   const SimplicialMapData& s,
                                                   const SimplicialMapData& p,
                                                   const SimplicialMapData& r) {
    BlowupSquareData out;
    out.codim = m.dim() - c.dim();

    auto push_of = [](const SimplicialMapData& f, const SimplicialComplex& src,
                      const SimplicialComplex& dst, std::map<int, BitMatrix>& store) {
        ChainComplex cs = src.chain_complex();
        ChainComplex cd = dst.chain_complex();
        HomologyData hs = homology(cs);
        HomologyData hd = homology(cd);
        ChainMap push;
        for (int k = 0; k <= src.dim(); ++k) {
            BitMatrix mk(cd.dim(k), cs.dim(k));
            for (std::size_t j = 0; j < src.count(k); ++j) {
                std::vector<int> img = f.apply(src.simplex(k, j));
                if (int(img.size()) != k + 1) continue;
                auto pos = dst.find(img);
                if (!pos) throw std::invalid_argument("square map is not simplicial");
                mk.set(pos->second, j);
            }
            push.maps[k] = std::move(mk);
        }
        if (auto msg = chain_map_defect(push, cs, cd))
            throw std::invalid_argument("square map: " + *msg);
        for (int k = 0; k <= std::max(src.dim(), dst.dim()); ++k)
            store[k] = induced_on_homology(push, cs, cd, hs, hd, k);
        return std::pair<HomologyData, HomologyData>(std::move(hs), std::move(hd));
    };

    auto he = push_of(q, e, c, out.maps["q"]).first;
    push_of(s, e, mt, out.maps["s"]);
    auto hm = push_of(p, mt, m, out.maps["p"]);
    push_of(r, c, m, out.maps["r"]);

    auto fill_dims = [&out](const std::string& name, const HomologyData& h) {
        std::vector<std::size_t> d;
        for (int k = 0; k <= h.max_degree; ++k) d.push_back(h.dim(k));
        out.dims[name] = d;
    };
    fill_dims("E", he);
    fill_dims("Mt", hm.first);
    fill_dims("M", hm.second);
    fill_dims("C", homology(c.chain_complex()));

    // upper maps through the intersection pairings
    auto up_q = gysin_of_map(q, e, c);
    auto up_s = gysin_of_map(s, e, mt);
    auto up_p = gysin_of_map(p, mt, m);
    auto up_r = gysin_of_map(r, c, m);
    out.maps["q_up"] = up_q;
    out.maps["s_up"] = up_s;
    out.maps["p_up"] = up_p;
    out.maps["r_up"] = up_r;
    return out;
}

namespace {

struct SquareWeights {
    WeightComplexResult w, wt, y, yt;
};

FilteredChainMap induced_weight_map(const SimplicialMapData& f, WeightComplexResult& src,
                                    WeightComplexResult& dst, Report& rep, const std::string& name) {
    InducedMap ind = induced_map(f, src.cut, src.corner, dst.cut, dst.corner);
    if (!ind.report.ok()) {
        rep.add("arrow-" + name, false, "cellular map rejected");
        rep.merge(ind.report);
        return {};
    }
    FilteredChainMap wmap{ind.map.map};
    if (auto msg = filtered_map_defect(wmap, src.weight, dst.weight)) {
        rep.add("arrow-" + name, false, *msg);
        return {};
    }
    rep.add("arrow-" + name, true);
    return wmap;
}

}  // namespace

Report blowup_transverse_check(const BlowupTransverseInput& in) {
    Report rep;
    SquareWeights sw;
    sw.w = weight_complex(in.w);
    sw.wt = weight_complex(in.wt);
    sw.y = weight_complex(in.y);
    sw.yt = weight_complex(in.yt);
    for (auto* wc : {&sw.w, &sw.wt, &sw.y, &sw.yt}) {
        if (!wc->report.ok()) {
            rep.add("nodes-valid", false);
            rep.merge(wc->report);
            return rep;
        }
    }
    rep.add("nodes-valid", true);

    FilteredChainMap fb = induced_weight_map(in.b, sw.wt, sw.w, rep, "blowdown");
    FilteredChainMap fa = induced_weight_map(in.a, sw.y, sw.w, rep, "center");
    FilteredChainMap fq = induced_weight_map(in.q, sw.yt, sw.y, rep, "exceptional-projection");
    FilteredChainMap fs = induced_weight_map(in.s, sw.yt, sw.wt, rep, "exceptional-inclusion");
    if (!rep.ok()) return rep;

    // commutativity at the cellular level
    ChainMap path1 = compose(fb.map, fs.map, sw.yt.cut.cx, sw.wt.cut.cx, sw.w.cut.cx);
    ChainMap path2 = compose(fa.map, fq.map, sw.yt.cut.cx, sw.y.cut.cx, sw.w.cut.cx);
    bool comm = true;
    for (int k = 0; k <= sw.yt.cut.cx.max_degree; ++k)
        if (!(path1.at(k, sw.yt.cut.cx, sw.w.cut.cx) == path2.at(k, sw.yt.cut.cx, sw.w.cut.cx)))
            comm = false;
    rep.add("square-commutes", comm);
    if (!comm) return rep;

    FilteredCube cube;
    cube.directions = 2;
    cube.nodes[1u] = sw.y.weight;   // {0}
    cube.nodes[2u] = sw.wt.weight;  // {1}
    cube.nodes[3u] = sw.yt.weight;  // {0,1}
    cube.arrows[{3u, 1u}] = fq;
    cube.arrows[{3u, 2u}] = fs;
    FilteredTotal total = filtered_total_complex(cube);

    // augmentation into the corner of the square
    FilteredChainMap eps;
    for (int k = total.fc.cx.min_degree; k <= total.fc.cx.max_degree; ++k) {
        BitMatrix m(sw.w.weight.cx.dim(k), total.fc.cx.dim(k));
        for (auto& [mask, l, off, dm] : total.layout.blocks[std::size_t(k - total.fc.cx.min_degree)]) {
            if (__builtin_popcount(mask) != 1 || l != k) continue;
            BitMatrix block = mask == 1u ? fa.map.at(k, sw.y.cut.cx, sw.w.cut.cx)
                                         : fb.map.at(k, sw.wt.cut.cx, sw.w.cut.cx);
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < dm; ++j)
                    if (block.get(i, j)) m.set(i, off + j);
        }
        eps.map.maps[k] = std::move(m);
    }
    FilteredComplex cone = filtered_mapping_cone(eps, total.fc, sw.w.weight);
    SpectralSequence ss = spectral_sequence(cone);
    bool page_zero = true;
    for (auto& [pq1, pq2, dim, rank] : ss.page(1)) {
        (void)pq1;
        (void)pq2;
        (void)rank;
        if (dim != 0) page_zero = false;
    }
    rep.add("simple-complex-first-page-vanishes", page_zero);
    rep.add("simple-complex-acyclic", is_acyclic(cone.cx));
    return rep;
}

Report blowup_contained_check(const GoodCompData& after, const GoodCompData& before,
                              const SimplicialMapData& b) {
    Report rep;
    WeightComplexResult src = weight_complex(after);
    WeightComplexResult dst = weight_complex(before);
    if (!src.report.ok() || !dst.report.ok()) {
        rep.add("nodes-valid", false);
        return rep;
    }
    rep.add("nodes-valid", true);
    FilteredChainMap wmap = induced_weight_map(b, src, dst, rep, "blowdown");
    if (!rep.ok()) return rep;
    rep.add("filtered-quasi-isomorphism", is_filtered_quasi_iso(wmap, src.weight, dst.weight));
    return rep;
}

Report independence_check(const GoodCompData& g1, const GoodCompData& g2) {
    Report rep;
    WeightComplexResult a = weight_complex(g1);
    WeightComplexResult b = weight_complex(g2);
    rep.add("first-input-valid", a.report.ok());
    rep.add("second-input-valid", b.report.ok());
    if (!a.report.ok() || !b.report.ok()) return rep;
    rep.add("weight-tables-equal", a.hf.table == b.hf.table);
    return rep;
}

}  // namespace wf
