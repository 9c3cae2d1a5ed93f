#include "doctest.h"

#include <random>

#include "wf/gf2.hpp"
#include "test_util.hpp"

using namespace wf;
using namespace wftest;

TEST_CASE("rank_kernel_image on identity and zero") {
    auto id = rank_kernel_image(BitMatrix::identity(4));
    CHECK(id.rank == 4);
    CHECK(id.kernel.dim() == 0);
    CHECK(id.image.dim() == 4);

    auto z = rank_kernel_image(BitMatrix(3, 5));
    CHECK(z.rank == 0);
    CHECK(z.kernel.dim() == 5);
    CHECK(z.image.dim() == 0);
}

TEST_CASE("rank matches an independent elimination oracle") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 1000; ++trial) {
        BitMatrix m = random_matrix(rng, 8, 8);
        auto rki = rank_kernel_image(m);
        CHECK(rki.rank == naive_rank(m));
        CHECK(rki.rank + rki.kernel.dim() == m.cols());
        // kernel members really die
        for (auto& v : rki.kernel.basis()) CHECK(m.apply(v).is_zero());
        // image really is the column span
        for (std::size_t j = 0; j < m.cols(); ++j) CHECK(rki.image.contains(m.column(j)));
    }
}

TEST_CASE("canonical echelon form is spanning-set independent") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 10;
        std::vector<BitVector> gens;
        for (int i = 0; i < 5; ++i) gens.push_back(random_vector(rng, n));
        Subspace u = Subspace::span(n, gens);
        // a different spanning set of the same space
        std::vector<BitVector> gens2;
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        for (int i = 0; i < 9; ++i) {
            BitVector v(n);
            v.xor_with(gens[pick(rng)]);
            v.xor_with(gens[pick(rng)]);
            gens2.push_back(v);
        }
        for (auto& g : gens) gens2.push_back(g);
        CHECK(Subspace::span(n, gens2) == u);
    }
}

TEST_CASE("subspace_algebra trivial cases") {
    std::mt19937_64 rng(99);
    Subspace u = Subspace::span(6, {random_vector(rng, 6), random_vector(rng, 6)});
    auto same = subspace_algebra(u, u);
    CHECK(same.sum == u);
    CHECK(same.intersection == u);
    CHECK(same.quotient_reps.empty());

    Subspace a = Subspace::span(4, {BitVector::unit(4, 0), BitVector::unit(4, 1)});
    Subspace b = Subspace::span(4, {BitVector::unit(4, 2), BitVector::unit(4, 3)});
    auto comp = subspace_algebra(a, b);
    CHECK(comp.intersection.dim() == 0);
    CHECK(comp.sum.dim() == 4);
}

TEST_CASE("subspace_algebra against exhaustive membership oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 9;
        std::vector<BitVector> gu, gv;
        for (int i = 0; i < 4; ++i) gu.push_back(random_vector(rng, n));
        for (int i = 0; i < 4; ++i) gv.push_back(random_vector(rng, n));
        Subspace u = Subspace::span(n, gu), v = Subspace::span(n, gv);
        auto alg = subspace_algebra(u, v);
        CHECK(alg.sum.dim() + alg.intersection.dim() == u.dim() + v.dim());
        // exhaustive: every pairwise xor lies in the sum; every common vector
        // lies in the intersection and conversely
        auto eu = enumerate_span(u);
        auto ev = enumerate_span(v);
        std::size_t common = 0;
        for (auto& x : eu) {
            for (auto& y : ev) {
                BitVector s = x;
                s.xor_with(y);
                CHECK(alg.sum.contains(s));
            }
            if (v.contains(x)) {
                ++common;
                CHECK(alg.intersection.contains(x));
            }
        }
        CHECK(common == (std::size_t(1) << alg.intersection.dim()));
        // coset representatives cover u modulo the intersection
        Subspace covered = alg.intersection;
        for (auto& r : alg.quotient_reps) {
            CHECK(u.contains(r));
            CHECK(!covered.contains(r));
            std::vector<BitVector> gens = covered.basis();
            gens.push_back(r);
            covered = Subspace::span(n, gens);
        }
        CHECK(covered == u);
    }
}

TEST_CASE("subspace_algebra rejects mismatched ambient dimensions") {
    Subspace a(3), b(4);
    CHECK_THROWS_AS(subspace_algebra(a, b), std::invalid_argument);
}

TEST_CASE("annihilator trivial cases") {
    BitMatrix p = BitMatrix::identity(5);
    CHECK(annihilator(Subspace::zero(5), p).dim() == 5);
    CHECK(annihilator(Subspace::full(5), p).dim() == 0);
}

TEST_CASE("annihilator against exhaustive pairing oracle") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 8;
        BitMatrix p = random_invertible(rng, n);
        std::vector<BitVector> gu;
        for (int i = 0; i < 3; ++i) gu.push_back(random_vector(rng, n));
        Subspace u = Subspace::span(n, gu);
        Subspace ann = annihilator(u, p);
        CHECK(ann.dim() == n - u.dim());
        // exhaustive check over the whole space
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            BitVector a(n);
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1u) a.set(i);
            bool kills = true;
            for (auto& b : u.basis())
                if (a.dot(p.apply(b))) kills = false;
            CHECK(kills == ann.contains(a));
        }
        // double annihilator with the transposed pairing returns u
        CHECK(annihilator(ann, p.transpose()) == u);
    }
}

TEST_CASE("preimage of a subspace") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 100; ++trial) {
        BitMatrix m = random_matrix(rng, 7, 9);
        std::vector<BitVector> gv;
        for (int i = 0; i < 3; ++i) gv.push_back(random_vector(rng, 7));
        Subspace v = Subspace::span(7, gv);
        Subspace pre = preimage(m, v);
        for (auto& x : pre.basis()) CHECK(v.contains(m.apply(x)));
        // exhaustive converse on a subsample
        for (int i = 0; i < 50; ++i) {
            BitVector x = random_vector(rng, 9);
            if (v.contains(m.apply(x))) CHECK(pre.contains(x));
        }
    }
}

TEST_CASE("quotient coordinates and lifts") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 10;
        std::vector<BitVector> gd, gt;
        for (int i = 0; i < 3; ++i) gd.push_back(random_vector(rng, n));
        Subspace den = Subspace::span(n, gd);
        gt = den.basis();
        for (int i = 0; i < 4; ++i) gt.push_back(random_vector(rng, n));
        Subspace tot = Subspace::span(n, gt);
        Quotient q(tot, den);
        CHECK(q.dim() == tot.dim() - den.dim());
        for (int i = 0; i < 20; ++i) {
            // random member of the total space
            BitVector x(n);
            for (auto& b : tot.basis())
                if (rng() & 1u) x.xor_with(b);
            BitVector c = q.coords(x);
            BitVector lifted = q.lift(c);
            lifted.xor_with(x);
            CHECK(den.contains(lifted));
        }
    }
}

TEST_CASE("solve and inverse") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        BitMatrix m = random_invertible(rng, 8);
        auto inv = inverse(m);
        REQUIRE(inv.has_value());
        CHECK(m.mul(*inv) == BitMatrix::identity(8));
        BitVector b = random_vector(rng, 8);
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(m.apply(*x) == b);
    }
    BitMatrix sing(3, 3);
    CHECK(!inverse(sing).has_value());
}
