#include "doctest.h"

#include <random>

#include "wf/filt.hpp"
#include "test_util.hpp"

using namespace wf;
using namespace wftest;

namespace {

FilteredComplex circle_filtered() {
    ComplexBuilder b(0, 1);
    for (int i = 0; i < 3; ++i) b.add_cell(0);
    for (int i = 0; i < 3; ++i) {
        std::size_t e = b.add_cell(1);
        b.add_boundary(1, e, std::size_t(i));
        b.add_boundary(1, e, std::size_t((i + 1) % 3));
    }
    return FilteredComplex::trivial(b.build());
}

}  // namespace

TEST_CASE("trivial filtration validates") {
    FilteredComplex fc = circle_filtered();
    Report rep = validate_filtration(fc);
    CHECK(rep.ok());
}

TEST_CASE("boundary-instability is reported at the offending level") {
    // one edge, two vertices; filtration level 0 contains the edge but not
    // its boundary
    ComplexBuilder b(0, 1);
    b.add_cell(0);
    b.add_cell(0);
    std::size_t e = b.add_cell(1);
    b.add_boundary(1, e, 0);
    b.add_boundary(1, e, 1);
    FilteredComplex fc;
    fc.cx = b.build();
    fc.pmin = 0;
    fc.pmax = 1;
    fc.level.push_back({Subspace::zero(2), Subspace::full(2)});
    fc.level.push_back({Subspace::full(1), Subspace::full(1)});
    Report rep = validate_filtration(fc);
    CHECK(!rep.ok());
    bool found = false;
    for (auto& item : rep.items)
        if (item.name == "boundary-stable" && !item.pass && item.detail == "(p=0,k=1)") found = true;
    CHECK(found);
}

TEST_CASE("zero-differential complex: first page equals graded pieces and survives") {
    std::mt19937_64 rng(11);
    ChainComplex c;
    c.min_degree = 0;
    c.max_degree = 2;
    c.dims = {2, 3, 1};
    c.labels.resize(3);
    c.boundary = {BitMatrix(0, 2), BitMatrix(2, 3), BitMatrix(3, 1)};
    FilteredComplex fc;
    fc.cx = c;
    fc.pmin = 0;
    fc.pmax = 1;
    for (int k = 0; k <= 2; ++k) {
        std::size_t d = c.dim(k);
        std::vector<BitVector> gens;
        for (std::size_t i = 0; i < d / 2 + (d == 1 ? 1 : 0); ++i) gens.push_back(random_vector(rng, d));
        fc.level.push_back({Subspace::span(d, gens), Subspace::full(d)});
    }
    SpectralSequence ss = spectral_sequence(fc);
    for (int p = 0; p <= 1; ++p)
        for (int k = 0; k <= 2; ++k) {
            std::size_t graded = fc.F(k, p).dim() - fc.F(k, p - 1).dim();
            CHECK(ss.dim(1, p, k - p) == graded);
            CHECK(ss.dim(ss.max_page, p, k - p) == graded);
            CHECK(ss.d_rank(1, p, k - p) == 0);
        }
    CHECK(ss.stable_page == 1);

    // decalage of a zero-differential complex is the shifted filtration
    FilteredComplex dec = decalage(fc);
    for (int k = 0; k <= 2; ++k)
        for (int p = dec.pmin - 1; p <= dec.pmax + 1; ++p) CHECK(dec.F(k, p) == fc.F(k, p + k));
}

TEST_CASE("first page equals graded-piece homology, independently computed") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 25; ++trial) {
        FilteredComplex fc = random_filtered_complex(rng, 3, 18, 3);
        REQUIRE(validate_filtration(fc).ok());
        SpectralSequence ss = spectral_sequence(fc);
        for (int p = fc.pmin; p <= fc.pmax; ++p) {
            GradedPiece g = graded_piece(fc, p);
            HomologyData h = homology(g.cx);
            for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k)
                CHECK(ss.dim(1, p, k - p) == h.dim(k));
        }
    }
}

TEST_CASE("abutment dimensions sum to homology") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 25; ++trial) {
        FilteredComplex fc = random_filtered_complex(rng, 3, 18, 3);
        SpectralSequence ss = spectral_sequence(fc);
        HomologyData h = homology(fc.cx);
        auto inf = ss.infinity_dims_by_degree();
        for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k)
            CHECK(inf[std::size_t(k - fc.cx.min_degree)] == h.dim(k));
    }
}

TEST_CASE("decalage page identity with differential ranks") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 25; ++trial) {
        FilteredComplex fc = random_filtered_complex(rng, 3, 16, 3);
        FilteredComplex dec = decalage(fc);
        REQUIRE(validate_filtration(dec).ok());
        SpectralSequence a = spectral_sequence(fc);
        SpectralSequence b = spectral_sequence(dec);
        for (int r = 1; r <= b.max_page; ++r) {
            for (int p = b.pmin - 1; p <= b.pmax + 1; ++p) {
                for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
                    int q = k - p;
                    CHECK(b.dim(r, p, q) == a.dim(r + 1, 2 * p + q, -p));
                    CHECK(b.d_rank(r, p, q) == a.d_rank(r + 1, 2 * p + q, -p));
                }
            }
        }
    }
}

TEST_CASE("homology filtration equals abutment and is monotone") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 25; ++trial) {
        FilteredComplex fc = random_filtered_complex(rng, 3, 16, 3);
        // homology_filtration raises internally if the direct image
        // filtration disagrees with the spectral sequence abutment
        HomologyFiltration hf = homology_filtration(fc);
        HomologyData h = homology(fc.cx);
        for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
            CHECK(hf.table.h(k) == h.dim(k));
            CHECK(hf.table.w(k, fc.pmax) == h.dim(k));
            for (int p = fc.pmin; p <= fc.pmax; ++p)
                CHECK(hf.table.w(k, p) >= hf.table.w(k, p - 1));
        }
    }
}

TEST_CASE("filtered quasi-isomorphism detection") {
    FilteredComplex fc = circle_filtered();
    FilteredChainMap id{identity_map(fc.cx)};
    CHECK(is_filtered_quasi_iso(id, fc, fc));

    // inclusion of a subcomplex with nontrivial graded quotient: a single
    // vertex inside the circle
    ComplexBuilder b(0, 0);
    b.add_cell(0);
    FilteredComplex sub = FilteredComplex::trivial(b.build());
    FilteredChainMap incl;
    {
        BitMatrix m(3, 1);
        m.set(0, 0);
        incl.map.maps[0] = m;
    }
    CHECK(!is_filtered_quasi_iso(incl, sub, fc));
}

TEST_CASE("filtered map defect reports non-filtered maps") {
    // two-level filtration on two points; swap map breaks it
    ComplexBuilder b(0, 0);
    b.add_cell(0);
    b.add_cell(0);
    ChainComplex two = b.build();
    FilteredComplex fc;
    fc.cx = two;
    fc.pmin = 0;
    fc.pmax = 1;
    fc.level.push_back({Subspace::span(2, {BitVector::unit(2, 0)}), Subspace::full(2)});
    FilteredChainMap swap;
    BitMatrix m(2, 2);
    m.set(0, 1);
    m.set(1, 0);
    swap.map.maps[0] = m;
    CHECK(filtered_map_defect(swap, fc, fc).has_value());
    CHECK_THROWS_AS(is_filtered_quasi_iso(swap, fc, fc), std::invalid_argument);
}

TEST_CASE("filtered total complex of a single node is the node") {
    FilteredComplex fc = circle_filtered();
    FilteredCube cube;
    cube.directions = 1;
    cube.nodes[1u] = fc;
    FilteredTotal t = filtered_total_complex(cube);
    CHECK(t.fc.cx.dim(0) == 3);
    CHECK(t.fc.cx.dim(1) == 3);
    for (int k = 0; k <= 1; ++k)
        for (int p = t.fc.pmin; p <= t.fc.pmax; ++p)
            CHECK(t.fc.F(k, p).dim() == fc.F(k, p).dim());
    Report rep = validate_filtration(t.fc);
    CHECK(rep.ok());
}

TEST_CASE("filtration-violating arrows are rejected") {
    ComplexBuilder b(0, 0);
    b.add_cell(0);
    b.add_cell(0);
    ChainComplex two = b.build();
    FilteredComplex fine;
    fine.cx = two;
    fine.pmin = 0;
    fine.pmax = 1;
    fine.level.push_back({Subspace::span(2, {BitVector::unit(2, 0)}), Subspace::full(2)});
    FilteredComplex coarse;
    coarse.cx = two;
    coarse.pmin = 0;
    coarse.pmax = 1;
    coarse.level.push_back({Subspace::zero(2), Subspace::full(2)});
    FilteredCube cube;
    cube.directions = 2;
    cube.nodes[1u] = coarse;
    cube.nodes[3u] = fine;
    FilteredChainMap idm{identity_map(two)};
    cube.arrows[{3u, 1u}] = idm;
    CHECK_THROWS_AS(filtered_total_complex(cube), std::invalid_argument);
}

TEST_CASE("filtered mapping cone of the identity has acyclic graded pieces") {
    std::mt19937_64 rng(66);
    FilteredComplex fc = random_filtered_complex(rng, 2, 10, 2);
    FilteredChainMap id{identity_map(fc.cx)};
    FilteredComplex cone = filtered_mapping_cone(id, fc, fc);
    REQUIRE(validate_filtration(cone).ok());
    SpectralSequence ss = spectral_sequence(cone);
    for (auto& [p, q, dim, rank] : ss.page(ss.max_page)) {
        (void)p;
        (void)q;
        (void)rank;
        CHECK(dim == 0);
    }
    CHECK(is_acyclic(cone.cx));
}
