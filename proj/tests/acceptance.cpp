// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wf/cechgysin.hpp"
#include "wf/fixtures.hpp"
#include "wf/torus.hpp"
#include "wf/weight.hpp"
#include "../tests/test_util.hpp"

using namespace wf;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double time_limit_s,
               const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string note;
    try {
        pass = body();
    } catch (const std::exception& e) {
        note = std::string(" [exception: ") + e.what() + "]";
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = time_limit_s <= 0 || elapsed <= time_limit_s;
    if (!in_time) note += " [time limit " + std::to_string(time_limit_s) + "s exceeded]";
    bool ok = pass && in_time;
    if (!ok) ++failures;
    std::printf("%s criterion %2d (%6.2fs) %s%s\n", ok ? "PASS" : "FAIL", number, elapsed,
                label.c_str(), note.c_str());
    std::fflush(stdout);
}

std::size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r = r * std::size_t(n - i) / std::size_t(i + 1);
    return r;
}

}  // namespace

int main() {
    criterion(1, "group algebra filtration: graded ranks and minor matrices", 5.0, [] {
        for (int n = 1; n <= 6; ++n) {
            for (int p = 0; p <= n; ++p) {
                std::size_t graded = ideal_power_basis(n, p).dim() - ideal_power_basis(n, p + 1).dim();
                if (graded != binom(n, p)) return false;
            }
            if (ideal_power_basis(n, n + 1).dim() != 0) return false;
        }
        for (int n = 1; n <= 3; ++n)
            for (int m = 1; m <= 3; ++m)
                for (std::uint32_t bits = 0; bits < (1u << (n * m)); ++bits) {
                    TorusHom hom{n, m, BitMatrix(std::size_t(m), std::size_t(n))};
                    for (int i = 0; i < m; ++i)
                        for (int j = 0; j < n; ++j)
                            if ((bits >> (i * n + j)) & 1u) hom.mat.set(std::size_t(i), std::size_t(j));
                    for (int p = 1; p <= std::min(n, m); ++p)
                        if (!(graded_matrix(hom, p) == graded_matrix_bruteforce(hom, p))) return false;
                }
        return true;
    });

    criterion(2, "punctured projective line: weights (2, 1)", 1.0, [] {
        WeightComplexResult wc = weight_complex(fixtures::rstar());
        return wc.report.ok() && wc.hf.table.w(0, 0) == 2 && wc.hf.table.w(0, -1) == 1 &&
               wc.hf.table.h(0) == 2;
    });

    criterion(3, "doubly punctured plane: (4;3;1) from both presentations", 10.0, [] {
        WeightComplexResult a = weight_complex(fixtures::rstar2_torus());
        WeightComplexResult b = weight_complex(fixtures::rstar2_p2());
        if (!a.report.ok() || !b.report.ok()) return false;
        bool table = a.hf.table.w(0, 0) == 4 && a.hf.table.w(0, -1) == 3 && a.hf.table.w(0, -2) == 1;
        return table && a.hf.table == b.hf.table &&
               independence_check(fixtures::rstar2_torus(), fixtures::rstar2_p2()).ok();
    });

    criterion(4, "three punctures in a line: (4;3;0), distinct table", 0, [] {
        WeightComplexResult wc = weight_complex(fixtures::xline3());
        if (!wc.report.ok()) return false;
        bool table = wc.hf.table.w(0, 0) == 4 && wc.hf.table.w(0, -1) == 3 && wc.hf.table.w(0, -2) == 0;
        WeightComplexResult other = weight_complex(fixtures::rstar2_torus());
        return table && !(wc.hf.table == other.hf.table);
    });

    criterion(5, "cylinder against punctured plane: deep weight 0 against 1", 0, [] {
        WeightComplexResult a = weight_complex(fixtures::p1xr());
        WeightComplexResult b = weight_complex(fixtures::r2minus0());
        return a.report.ok() && b.report.ok() && a.hf.table.w(1, -2) == 0 && b.hf.table.w(1, -2) == 1;
    });

    criterion(6, "nodal cubic assemblies: (1,2) and (1,3,4)", 0, [] {
        AssembleResult lem = assemble(fixtures::lemniscate());
        if (!lem.report.ok()) return false;
        if (!(lem.hf.table.w(1, -1) == 1 && lem.hf.table.h(1) == 2)) return false;
        AssembleResult prod = assemble(fixtures::lemniscate_rstar());
        if (!prod.report.ok()) return false;
        return prod.hf.table.w(1, -2) == 1 && prod.hf.table.w(1, -1) == 3 && prod.hf.table.h(1) == 4;
    });

    criterion(7, "first page of the level filtration is the stratum complex, corpus-wide", 0, [] {
        for (auto& name : fixtures::corpus_names())
            if (!gysin_corner_report(fixtures::by_name(name)).ok()) return false;
        return true;
    });

    criterion(8, "dual-block comparison map: filtered graded quasi-isomorphism, corpus-wide", 0, [] {
        for (auto& name : fixtures::corpus_names())
            if (!cellular_pullback_phi(fixtures::by_name(name)).report.ok()) return false;
        return true;
    });

    criterion(9, "projection exactness: kernel equals the first level, corpus-wide", 0, [] {
        for (auto& name : fixtures::corpus_names()) {
            GoodCompData g = fixtures::by_name(name);
            CutComplex cut = build_cut_complex(g);
            FilteredComplex fc = corner_filtration(cut);
            if (!pi_pushforward_exactness(cut, fc).ok()) return false;
        }
        return true;
    });

    criterion(10, "annihilator duality between the two filtrations, corpus-wide", 0, [] {
        for (auto& name : fixtures::corpus_names())
            if (!duality_report(fixtures::by_name(name), true).report.ok()) return false;
        return true;
    });

    criterion(11, "blowup theorems: acyclic square, filtered equivalence, retraction", 0, [] {
        if (!blowup_transverse_check(fixtures::blowup_transverse()).ok()) return false;
        fixtures::ContainedInput in = fixtures::blowup_contained();
        if (!blowup_contained_check(in.after, in.before, in.b).ok()) return false;
        return blowup_square_checks(fixtures::sphere_blowup_square()).ok();
    });

    criterion(12, "five hundred random filtered complexes: shift identity and abutments", 60.0, [] {
        std::mt19937_64 rng(20260808);
        for (int trial = 0; trial < 500; ++trial) {
            FilteredComplex fc = wftest::random_filtered_complex(rng, 3, 30, 3);
            FilteredComplex dec = decalage(fc);
            SpectralSequence a = spectral_sequence(fc);
            SpectralSequence b = spectral_sequence(dec);
            for (int r = 1; r <= b.max_page; ++r)
                for (int p = b.pmin - 1; p <= b.pmax + 1; ++p)
                    for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k) {
                        int q = k - p;
                        if (b.dim(r, p, q) != a.dim(r + 1, 2 * p + q, -p)) return false;
                        if (b.d_rank(r, p, q) != a.d_rank(r + 1, 2 * p + q, -p)) return false;
                    }
            HomologyData h = homology(fc.cx);
            auto inf = a.infinity_dims_by_degree();
            for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k)
                if (inf[std::size_t(k - fc.cx.min_degree)] != h.dim(k)) return false;
            // the homology filtration raises internally if the direct image
            // filtration disagrees with the spectral sequence abutment
            HomologyFiltration hf = homology_filtration(fc);
            for (int k = fc.cx.min_degree; k <= fc.cx.max_degree; ++k)
                if (hf.table.h(k) != h.dim(k)) return false;
        }
        return true;
    });

    if (failures) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria pass\n");
    return 0;
}
