#include "doctest.h"

#include "wf/fixtures.hpp"
#include "wf/weight.hpp"
#include "test_util.hpp"

using namespace wf;

TEST_CASE("compact fixtures have pure one-step weight tables") {
    for (auto& name : {"point", "circle", "sphere", "torus", "projective-plane"}) {
        GoodCompData g = fixtures::by_name(name);
        WeightComplexResult wc = weight_complex(g);
        INFO(name);
        REQUIRE(wc.report.ok());
        auto h = g.K.homology_dims();
        for (int k = 0; k <= g.dim(); ++k) {
            CHECK(wc.hf.table.h(k) == h[std::size_t(k)]);
            CHECK(wc.hf.table.w(k, -k) == h[std::size_t(k)]);
            CHECK(wc.hf.table.w(k, -k - 1) == 0);
        }
    }
}

TEST_CASE("weight table of the punctured projective line") {
    WeightComplexResult wc = weight_complex(fixtures::rstar());
    REQUIRE(wc.report.ok());
    CHECK(wc.hf.table.h(0) == 2);
    CHECK(wc.hf.table.w(0, 0) == 2);
    CHECK(wc.hf.table.w(0, -1) == 1);
    CHECK(wc.hf.table.w(0, -2) == 0);
    CHECK(wc.hf.table.h(1) == 0);
}

TEST_CASE("weight tables separate the two cylinders") {
    WeightComplexResult a = weight_complex(fixtures::p1xr());
    REQUIRE(a.report.ok());
    CHECK(a.hf.table.h(1) == 1);
    CHECK(a.hf.table.w(1, -1) == 1);
    CHECK(a.hf.table.w(1, -2) == 0);

    WeightComplexResult b = weight_complex(fixtures::r2minus0());
    REQUIRE(b.report.ok());
    CHECK(b.hf.table.h(1) == 1);
    CHECK(b.hf.table.w(1, -2) == 1);
}

TEST_CASE("both presentations of the doubly punctured plane agree") {
    WeightComplexResult a = weight_complex(fixtures::rstar2_torus());
    REQUIRE(a.report.ok());
    CHECK(a.hf.table.h(0) == 4);
    CHECK(a.hf.table.w(0, 0) == 4);
    CHECK(a.hf.table.w(0, -1) == 3);
    CHECK(a.hf.table.w(0, -2) == 1);

    WeightComplexResult b = weight_complex(fixtures::rstar2_p2());
    REQUIRE(b.report.ok());
    CHECK(a.hf.table == b.hf.table);
    CHECK(independence_check(fixtures::rstar2_torus(), fixtures::rstar2_p2()).ok());
}

TEST_CASE("three punctures in a line give a different table") {
    WeightComplexResult wc = weight_complex(fixtures::xline3());
    REQUIRE(wc.report.ok());
    CHECK(wc.hf.table.h(0) == 4);
    CHECK(wc.hf.table.w(0, 0) == 4);
    CHECK(wc.hf.table.w(0, -1) == 3);
    CHECK(wc.hf.table.w(0, -2) == 0);
    CHECK(!independence_check(fixtures::xline3(), fixtures::rstar2_torus()).ok());
}

TEST_CASE("weight first page equals the homology of the gysin complex") {
    for (auto& name : {"rstar", "s1xrstar", "rstar2-torus", "r2minus0", "klein2"}) {
        GoodCompData g = fixtures::by_name(name);
        WeightComplexResult wc = weight_complex(g);
        REQUIRE(wc.report.ok());
        GysinComplex gys = gysin_complex(g);
        INFO(name);
        for (int c = 0; c <= g.dim(); ++c) {
            for (int k = 0; k <= g.dim(); ++k) {
                std::size_t dim_here = gys.dim(c, k);
                std::size_t rk_out = gys.d_rank(c, k);
                std::size_t rk_in = c > 0 ? gys.d_rank(c - 1, k + 1) : 0;
                std::size_t gh = dim_here - rk_out - rk_in;
                CHECK(wc.pages.dim(1, -k - c, 2 * k + c) == gh);
            }
        }
    }
}

TEST_CASE("kernel characterization on the corpus examples") {
    CHECK(kernel_characterization(fixtures::torus()).ok());
    CHECK(kernel_characterization(fixtures::rstar()).ok());
    CHECK(kernel_characterization(fixtures::r2minus0()).ok());
    CHECK(kernel_characterization(fixtures::s1xrstar()).ok());
}

TEST_CASE("closed-support and classical tables coincide on compact fixtures") {
    for (auto& name : {"circle", "sphere", "torus", "projective-plane"}) {
        GoodCompData g = fixtures::by_name(name);
        DualityResult res = duality_report(g, false);
        REQUIRE(res.report.ok());
        int n = g.dim();
        INFO(name);
        for (int k = 0; k <= n; ++k) {
            CHECK(res.classical.h(k) == res.borel_moore.h(k));
            for (int p = -n - 1; p <= 0; ++p)
                CHECK(res.classical.w(k, p) == res.borel_moore.w(k, p));
        }
    }
}

TEST_CASE("single-node assembly is the weight complex of the node") {
    HyperresolutionInput h;
    h.directions = 1;
    h.nodes[1u] = fixtures::rstar();
    AssembleResult res = assemble(h);
    REQUIRE(res.report.ok());
    WeightComplexResult wc = weight_complex(fixtures::rstar());
    // same filtration subspaces degree by degree
    for (int k = 0; k <= 1; ++k)
        for (int p = wc.weight.pmin - 1; p <= wc.weight.pmax + 1; ++p)
            CHECK(res.total.fc.F(k, p) == wc.weight.F(k, p));
    CHECK(res.hf.table == wc.hf.table);
}

TEST_CASE("lemniscate assembly") {
    AssembleResult res = assemble(fixtures::lemniscate());
    REQUIRE(res.report.ok());
    CHECK(res.hf.table.h(0) == 1);
    CHECK(res.hf.table.h(1) == 2);
    CHECK(res.hf.table.w(1, -1) == 1);
    CHECK(res.hf.table.w(1, 0) == 2);
    CHECK(res.hf.table.w(1, -2) == 0);
}

TEST_CASE("lemniscate times punctured line") {
    AssembleResult res = assemble(fixtures::lemniscate_rstar());
    REQUIRE(res.report.ok());
    CHECK(res.hf.table.h(1) == 4);
    CHECK(res.hf.table.w(1, -1) == 3);
    CHECK(res.hf.table.w(1, -2) == 1);
    CHECK(res.hf.table.w(1, -3) == 0);
}

TEST_CASE("blowup square data from the sphere fixture passes all checks") {
    BlowupSquareData sq = fixtures::sphere_blowup_square();
    CHECK(sq.codim == 2);
    Report rep = blowup_square_checks(sq);
    CHECK(rep.ok());
}

TEST_CASE("degenerate blowup square is rejected") {
    BlowupSquareData sq;
    sq.codim = 0;
    Report rep = blowup_square_checks(sq);
    CHECK(!rep.ok());
}

TEST_CASE("blowup square checks detect corrupted maps") {
    BlowupSquareData sq = fixtures::sphere_blowup_square();
    // corrupt the degree-one property
    sq.maps["p_up"][2] = BitMatrix(sq.dim("Mt", 2), sq.dim("M", 2));
    Report rep = blowup_square_checks(sq);
    CHECK(!rep.ok());
}

TEST_CASE("blowup with center off the divisor: the square is acyclic") {
    Report rep = blowup_transverse_check(fixtures::blowup_transverse());
    CHECK(rep.ok());
}

TEST_CASE("blowup with center inside the divisor: filtered quasi-isomorphism") {
    fixtures::ContainedInput in = fixtures::blowup_contained();
    Report rep = blowup_contained_check(in.after, in.before, in.b);
    CHECK(rep.ok());
    // the two presentations of the plane also share one weight table
    CHECK(independence_check(in.after, in.before).ok());
}

TEST_CASE("identity blowup convention: the cone over an isomorphism") {
    GoodCompData g = fixtures::rstar();
    Report rep = blowup_contained_check(g, g, SimplicialMapData{{0, 1, 2, 3}});
    CHECK(rep.ok());
}

TEST_CASE("independence of a fixture with itself") {
    CHECK(independence_check(fixtures::rstar(), fixtures::rstar()).ok());
}

TEST_CASE("staircase product agrees with the grid presentation") {
    GoodCompData prod = product_complex(fixtures::circle(), fixtures::rstar());
    CHECK(independence_check(prod, fixtures::s1xrstar()).ok());
}
