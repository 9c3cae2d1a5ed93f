#include "doctest.h"

#include "wf/fixtures.hpp"
#include "wf/simp.hpp"
#include "test_util.hpp"

using namespace wf;

TEST_CASE("basic complexes validate and have the right homology") {
    GoodCompData s1xr = fixtures::s1xrstar();
    CHECK(validate_good_comp(s1xr).ok());
    CHECK(nc_check(s1xr).ok());
    CHECK(s1xr.K.homology_dims() == std::vector<std::size_t>{1, 2, 1});

    GoodCompData pp = fixtures::projective_plane();
    CHECK(validate_good_comp(pp).ok());
    CHECK(pp.K.homology_dims() == std::vector<std::size_t>{1, 1, 1});

    GoodCompData sph = fixtures::sphere();
    CHECK(sph.K.homology_dims() == std::vector<std::size_t>{1, 0, 1});

    GoodCompData kl = fixtures::r2minus0();
    CHECK(validate_good_comp(kl).ok());
    CHECK(kl.K.homology_dims() == std::vector<std::size_t>{1, 2, 1});

    GoodCompData k2 = fixtures::klein2();
    CHECK(validate_good_comp(k2).ok());
    CHECK(nc_check(k2).ok());
    CHECK(k2.K.homology_dims() == std::vector<std::size_t>{1, 2, 1});

    GoodCompData p2l = fixtures::rstar2_p2();
    CHECK(validate_good_comp(p2l).ok());
    CHECK(nc_check(p2l).ok());
    CHECK(p2l.K.homology_dims() == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("the whole corpus validates with crossing counts") {
    for (auto& name : fixtures::corpus_names()) {
        GoodCompData g = fixtures::by_name(name);
        INFO(name);
        CHECK(validate_good_comp(g).ok());
        CHECK(nc_check(g).ok());
    }
}

TEST_CASE("purity failure is detected") {
    // a circle divisor on the sphere with a stray isolated vertex attached
    std::vector<std::vector<int>> tri;
    for (int i = 0; i < 6; ++i) {
        int a = 2 + i, b = 2 + (i + 1) % 6;
        tri.push_back({0, a, b});
        tri.push_back({1, a, b});
    }
    std::vector<std::vector<int>> div;
    for (int i = 0; i < 6; ++i) {
        std::vector<int> e = {2 + i, 2 + (i + 1) % 6};
        std::sort(e.begin(), e.end());
        div.push_back(e);
    }
    div.push_back({0});  // stray vertex: the divisor is no longer pure
    GoodCompData bad = GoodCompData::build(SimplicialComplex::from_maximal(8, tri), {"equator"}, {div});
    Report rep = validate_good_comp(bad);
    CHECK(!rep.ok());
    bool found = false;
    for (auto& item : rep.items)
        if (item.name == "strata-pure" && !item.pass) found = true;
    CHECK(found);
}

TEST_CASE("crossing counts: transverse passes, nodal curve fails") {
    // one divisor circle in a surface: two local components along it
    GoodCompData one = fixtures::p1xr();
    CHECK(nc_check(one).ok());

    // transverse crossing: four local components at the crossing vertex
    GoodCompData four = fixtures::rstar2_torus();
    CHECK(nc_check(four).ok());
    // find a crossing vertex and check its count directly
    bool saw_crossing = false;
    for (std::size_t gid = 0; gid < four.K.n_simplices(); ++gid) {
        if (__builtin_popcount(four.j_mask(gid)) == 2) {
            StarPartition sp = star_partition(four, gid, 0);
            CHECK(sp.n_components == 4);
            saw_crossing = true;
        }
    }
    CHECK(saw_crossing);

    // a figure-eight divisor: one divisor label passing twice through a
    // vertex; the local count then exceeds the expected two
    GoodCompData fig8 = GoodCompData::build(
        fixtures::torus().K, {"loop"},
        {{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {4, 8}, {0, 12}, {8, 12}}});
    Report rep = nc_check(fig8);
    CHECK(!rep.ok());
}

TEST_CASE("three concurrent circles are rejected by purity") {
    // three divisor circles through one vertex on the torus: the triple
    // stratum is nonempty below dimension zero
    GoodCompData bad = GoodCompData::build(
        fixtures::torus().K, {"a", "b", "c"},
        {{{0, 1}, {1, 2}, {2, 3}, {0, 3}},
         {{0, 4}, {4, 8}, {8, 12}, {0, 12}},
         {{0, 5}, {5, 10}, {10, 15}, {0, 15}}});
    CHECK(!validate_good_comp(bad).ok());
}

TEST_CASE("barycentric subdivision preserves labels, homology and crossings") {
    for (auto& name : {"point", "circle", "rstar", "s1xrstar", "rstar2-torus"}) {
        GoodCompData g = fixtures::by_name(name);
        SubdivisionResult sd = barycentric_subdivide(g);
        INFO(name);
        CHECK(validate_good_comp(sd.g).ok());
        CHECK(nc_check(sd.g).ok() == nc_check(g).ok());
        CHECK(sd.g.K.homology_dims() == g.K.homology_dims());
        CHECK(sd.g.divisor_names == g.divisor_names);
    }
    GoodCompData c = fixtures::circle();
    SubdivisionResult sd = barycentric_subdivide(c);
    CHECK(sd.g.K.count(0) == 8);
    CHECK(sd.g.K.count(1) == 8);
    GoodCompData pt = fixtures::point();
    CHECK(barycentric_subdivide(pt).g.K.count(0) == 1);
}

TEST_CASE("complement retract computes the open part") {
    GoodCompData r = fixtures::rstar();
    SimplicialComplex ret = complement_retract(r);
    CHECK(ret.homology_dims() == std::vector<std::size_t>{2, 0});

    GoodCompData t2 = fixtures::s1xrstar();
    SimplicialComplex ret2 = complement_retract(t2);
    auto h = ret2.homology_dims();
    CHECK(h[0] == 2);
    CHECK(h[1] == 2);

    GoodCompData t4 = fixtures::rstar2_torus();
    auto h4 = complement_retract(t4).homology_dims();
    CHECK(h4[0] == 4);
    if (h4.size() > 1) CHECK(h4[1] == 0);
}

TEST_CASE("dual cell complex: dimensions, square-zero, duality") {
    // empty divisor: homology dims of the blocks equal the reversed
    // simplicial dims
    for (auto& name : {"sphere", "torus", "projective-plane"}) {
        GoodCompData g = fixtures::by_name(name);
        DualCellComplex dcc = dual_cell_complex(g);
        INFO(name);
        REQUIRE(!dcc.fc.cx.validate().has_value());
        auto hdual = homology(dcc.fc.cx).dims();
        auto hsimp = g.K.homology_dims();
        int n = g.dim();
        for (int k = 0; k <= n; ++k)
            CHECK(hdual[std::size_t(k)] == hsimp[std::size_t(n - k)]);
    }

    // bookkeeping: cells in bidegree (p,k) count the stratum simplices of
    // dimension n-p-k
    GoodCompData g = fixtures::rstar2_torus();
    DualCellComplex dcc = dual_cell_complex(g);
    int n = g.dim();
    for (int k = 0; k <= n; ++k) {
        std::map<int, std::size_t> by_p;
        for (auto& [mask, gid] : dcc.basis[std::size_t(k)]) by_p[__builtin_popcount(mask)]++;
        for (auto& [p, cnt] : by_p) {
            std::size_t expect = 0;
            for (unsigned mask : g.strata_masks()) {
                if (__builtin_popcount(mask) != p) continue;
                for (auto gid : g.stratum(mask)) {
                    auto [d, i] = g.K.from_global(gid);
                    (void)i;
                    if (d == n - p - k) ++expect;
                }
            }
            CHECK(cnt == expect);
        }
    }

    // one-jump filtration for a single divisor
    DualCellComplex one = dual_cell_complex(fixtures::p1xr());
    CHECK(one.fc.pmin == -1);
    CHECK(one.fc.pmax == 0);

    // relative homology across all fixtures: total dual homology in degree k
    // equals relative homology in degree n-k
    for (auto& name : {"rstar", "s1xrstar", "rstar2-torus", "r2minus0"}) {
        GoodCompData gg = fixtures::by_name(name);
        DualCellComplex dd = dual_cell_complex(gg);
        auto hdual = homology(dd.fc.cx).dims();
        // relative complex: chains of K modulo chains of the divisor union
        ChainComplex ck = gg.K.chain_complex();
        int nn = gg.dim();
        std::vector<std::size_t> rel;
        {
            // quotient complex by the divisor subcomplex
            std::vector<Quotient> q;
            ChainComplex relc;
            relc.min_degree = 0;
            relc.max_degree = nn;
            for (int k = 0; k <= nn; ++k) {
                std::vector<BitVector> dgens;
                for (std::size_t i = 0; i < gg.K.count(k); ++i)
                    if (gg.in_divisor(gg.K.global_id(k, i)))
                        dgens.push_back(BitVector::unit(gg.K.count(k), i));
                q.emplace_back(Subspace::full(gg.K.count(k)), Subspace::span(gg.K.count(k), dgens));
                relc.dims.push_back(q.back().dim());
            }
            relc.labels.resize(q.size());
            for (int k = 0; k <= nn; ++k) {
                BitMatrix m(relc.dim(k - 1), relc.dim(k));
                if (k > 0)
                    for (std::size_t j = 0; j < q[std::size_t(k)].dim(); ++j) {
                        BitVector img = ck.d(k).apply(q[std::size_t(k)].reps()[j]);
                        BitVector co = q[std::size_t(k - 1)].coords(img);
                        for (std::size_t i = 0; i < co.size(); ++i)
                            if (co.get(i)) m.set(i, j);
                    }
                relc.boundary.push_back(std::move(m));
            }
            rel = homology(relc).dims();
        }
        INFO(name);
        for (int k = 0; k <= nn; ++k)
            CHECK(hdual[std::size_t(k)] == rel[std::size_t(nn - k)]);
    }
}

TEST_CASE("divisor complexity") {
    CHECK(divisor_complexity(fixtures::torus()).complexity == 0);
    CHECK(divisor_complexity(fixtures::s1xrstar()).complexity == 1);
    CHECK(divisor_complexity(fixtures::rstar2_torus()).complexity == 2);
    ComplexityResult three = divisor_complexity(fixtures::rstar2_p2());
    CHECK(three.complexity == 3);
    // oracle: the intersection graph of the three lines is a triangle, and a
    // triangle admits no proper 2-coloring
    CHECK(three.witness.size() == 3);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b)
            CHECK(three.witness[a].second != three.witness[b].second);
}

TEST_CASE("products: point, circle, Kuenneth") {
    GoodCompData pt = fixtures::point();
    GoodCompData r = fixtures::rstar();
    GoodCompData prod = product_complex(pt, r);
    CHECK(prod.K.homology_dims() == r.K.homology_dims());
    CHECK(validate_good_comp(prod).ok());

    GoodCompData c = fixtures::circle();
    GoodCompData t = product_complex(c, r);
    CHECK(validate_good_comp(t).ok());
    CHECK(nc_check(t).ok());
    CHECK(t.K.homology_dims() == std::vector<std::size_t>{1, 2, 1});
    CHECK(t.divisor_count() == 2);

    GoodCompData t2 = product_complex(c, fixtures::circle());
    auto ha = c.K.homology_dims();
    auto hb = fixtures::circle().K.homology_dims();
    auto hp = t2.K.homology_dims();
    for (std::size_t k = 0; k < hp.size(); ++k) {
        std::size_t expect = 0;
        for (std::size_t i = 0; i <= k; ++i)
            if (i < ha.size() && k - i < hb.size()) expect += ha[i] * hb[k - i];
        CHECK(hp[k] == expect);
    }
}
