#include "wf/torus.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wf {

AlgebraElement algebra_add(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.rank != b.rank) throw std::invalid_argument("algebra_add: group mismatch");
    AlgebraElement c = a;
    c.support.xor_with(b.support);
    return c;
}

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.rank != b.rank) throw std::invalid_argument("algebra_mul: group mismatch");
    std::size_t n = a.support.size();
    AlgebraElement c = AlgebraElement::zero(a.rank);
    for (std::size_t g = 0; g < n; ++g) {
        if (!a.support.get(g)) continue;
        for (std::size_t h = 0; h < n; ++h) {
            if (b.support.get(h)) c.support.flip(g ^ h);
        }
    }
    return c;
}

bool augmentation(const AlgebraElement& a) { return a.support.popcount() & 1u; }

AlgebraElement coset_indicator(int rank, std::uint32_t g, std::uint32_t j_mask) {
    AlgebraElement a = AlgebraElement::zero(rank);
    // iterate over submasks of j_mask
    std::uint32_t s = j_mask;
    while (true) {
        a.support.set(g ^ s);
        if (s == 0) break;
        s = (s - 1) & j_mask;
    }
    return a;
}

std::vector<std::uint32_t> subsets_of_size(int n, int p) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (__builtin_popcount(m) == p) out.push_back(m);
    return out;
}

Subspace ideal_power_basis(int rank, int p) {
    std::size_t dim = std::size_t(1) << rank;
    if (p <= 0) return Subspace::full(dim);
    if (p > rank) return Subspace::zero(dim);
    std::vector<BitVector> gens;
    for (std::uint32_t j : subsets_of_size(rank, p)) {
        for (std::uint32_t g = 0; g < (1u << rank); ++g) {
            if (g & j) continue;  // one representative per coset
            gens.push_back(coset_indicator(rank, g, j).support);
        }
    }
    return Subspace::span(dim, gens);
}

BitVector graded_coordinates(const AlgebraElement& a, int p) {
    int n = a.rank;
    Subspace ip = ideal_power_basis(n, p);
    if (!ip.contains(a.support))
        throw std::invalid_argument("graded_coordinates: element not in the requested ideal power");
    Subspace next = ideal_power_basis(n, p + 1);
    SpanSolver solver(a.support.size());
    for (auto& b : next.basis()) solver.add(b);
    auto subsets = subsets_of_size(n, p);
    std::vector<std::size_t> gen_index;
    for (auto j : subsets) {
        gen_index.push_back(solver.generator_count());
        if (!solver.add(coset_indicator(n, 0, j).support))
            throw std::logic_error("graded_coordinates: subgroup indicators dependent");
    }
    auto combo = solver.express(a.support);
    if (!combo) throw std::logic_error("graded_coordinates: expression failed");
    BitVector out(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i)
        if (combo->get(gen_index[i])) out.set(i);
    return out;
}

std::uint32_t TorusHom::apply(std::uint32_t g) const {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < mat.rows(); ++i) {
        bool bit = false;
        for (std::size_t j = 0; j < mat.cols(); ++j)
            if (mat.get(i, j) && ((g >> j) & 1u)) bit = !bit;
        if (bit) out |= (1u << i);
    }
    return out;
}

TorusHom TorusHom::identity(int rank) { return {rank, rank, BitMatrix::identity(std::size_t(rank))}; }

TorusHom compose(const TorusHom& g, const TorusHom& f) {
    if (g.src_rank != f.dst_rank) throw std::invalid_argument("compose: rank mismatch");
    return {f.src_rank, g.dst_rank, g.mat.mul(f.mat)};
}

AlgebraElement hom_pushforward(const TorusHom& hom, const AlgebraElement& a) {
    if (a.rank != hom.src_rank) throw std::invalid_argument("hom_pushforward: group mismatch");
    AlgebraElement out = AlgebraElement::zero(hom.dst_rank);
    for (std::uint32_t g = 0; g < (1u << hom.src_rank); ++g)
        if (a.support.get(g)) out.support.flip(hom.apply(g));
    return out;
}

bool minor_det(const TorusHom& hom, std::uint32_t i_mask, std::uint32_t j_mask) {
    std::vector<int> ri, cj;
    for (int i = 0; i < hom.dst_rank; ++i)
        if (i_mask & (1u << i)) ri.push_back(i);
    for (int j = 0; j < hom.src_rank; ++j)
        if (j_mask & (1u << j)) cj.push_back(j);
    if (ri.size() != cj.size()) throw std::invalid_argument("minor_det: subset size mismatch");
    BitMatrix sub(ri.size(), cj.size());
    for (std::size_t i = 0; i < ri.size(); ++i)
        for (std::size_t j = 0; j < cj.size(); ++j)
            if (hom.mat.get(std::size_t(ri[i]), std::size_t(cj[j]))) sub.set(i, j);
    return sub.rank() == ri.size();
}

BitMatrix graded_matrix(const TorusHom& hom, int p) {
    auto rows = subsets_of_size(hom.dst_rank, p);
    auto cols = subsets_of_size(hom.src_rank, p);
    BitMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (minor_det(hom, rows[i], cols[j])) m.set(i, j);
    return m;
}

BitMatrix graded_matrix_bruteforce(const TorusHom& hom, int p) {
    auto rows = subsets_of_size(hom.dst_rank, p);
    auto cols = subsets_of_size(hom.src_rank, p);
    BitMatrix m(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        AlgebraElement img = hom_pushforward(hom, coset_indicator(hom.src_rank, 0, cols[j]));
        Subspace ip = ideal_power_basis(hom.dst_rank, p);
        if (!ip.contains(img.support)) throw std::logic_error("pushforward left the ideal power");
        BitVector co = graded_coordinates(img, p);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (co.get(i)) m.set(i, j);
    }
    return m;
}

Report exterior_model_check(int rank) {
    Report rep;
    int n = rank;
    // degreewise dimensions
    bool dims_ok = true;
    std::string dims_at;
    std::size_t binom = 1;
    for (int p = 0; p <= n + 1; ++p) {
        std::size_t expect = p <= n ? binom : 0;
        Subspace ip = ideal_power_basis(n, p);
        Subspace ip1 = ideal_power_basis(n, p + 1);
        if (ip.dim() - ip1.dim() != expect) {
            dims_ok = false;
            dims_at = "p=" + std::to_string(p);
        }
        if (p <= n) binom = binom * std::size_t(n - p) / std::size_t(p + 1);
    }
    rep.add("graded-dims-binomial", dims_ok, dims_at);

    // the subgroup indicators map to the standard basis, degree by degree
    bool basis_ok = true;
    for (int p = 1; p <= n; ++p) {
        auto subs = subsets_of_size(n, p);
        for (std::size_t i = 0; i < subs.size(); ++i) {
            BitVector co = graded_coordinates(coset_indicator(n, 0, subs[i]), p);
            if (co != BitVector::unit(subs.size(), i)) basis_ok = false;
        }
    }
    rep.add("indicators-form-basis", basis_ok);

    // multiplicativity: disjoint supports multiply to the union indicator,
    // overlapping supports multiply to zero
    bool mult_ok = true;
    for (std::uint32_t a = 1; a < (1u << n) && mult_ok; ++a) {
        for (std::uint32_t b = 1; b < (1u << n) && mult_ok; ++b) {
            AlgebraElement prod =
                algebra_mul(coset_indicator(n, 0, a), coset_indicator(n, 0, b));
            AlgebraElement expect = (a & b) ? AlgebraElement::zero(n) : coset_indicator(n, 0, a | b);
            if (!(prod == expect)) mult_ok = false;
        }
    }
    rep.add("wedge-multiplicativity", mult_ok);

    // functoriality against all homs of small corank
    bool funct_ok = true;
    if (n <= 3) {
        for (std::uint32_t bits = 0; bits < (1u << (n * n)); ++bits) {
            TorusHom hom{n, n, BitMatrix(std::size_t(n), std::size_t(n))};
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if ((bits >> (i * n + j)) & 1u) hom.mat.set(std::size_t(i), std::size_t(j));
            for (int p = 1; p <= n && funct_ok; ++p) {
                if (!(graded_matrix(hom, p) == graded_matrix_bruteforce(hom, p))) funct_ok = false;
            }
        }
    }
    rep.add("functoriality", funct_ok);
    return rep;
}

std::vector<std::vector<std::uint32_t>> enumerate_subgroups(int n, int p) {
    // enumerate echelon bases recursively
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> basis;

    struct Rec {
        int n, p;
        std::vector<std::vector<std::uint32_t>>* out;

        void go(std::vector<std::uint32_t>& basis, int next_pivot) {
            int need = p - int(basis.size());
            if (need == 0) {
                std::vector<std::uint32_t> elems;
                for (std::uint32_t mask = 0; mask < (1u << basis.size()); ++mask) {
                    std::uint32_t e = 0;
                    for (std::size_t i = 0; i < basis.size(); ++i)
                        if (mask & (1u << i)) e ^= basis[i];
                    elems.push_back(e);
                }
                std::sort(elems.begin(), elems.end());
                out->push_back(std::move(elems));
                return;
            }
            for (int piv = next_pivot; piv <= n - need; ++piv) {
                // vector with leading bit at piv; all fillings of the higher
                // positions, deduped by element set afterwards
                std::vector<int> free_pos;
                for (int j = piv + 1; j < n; ++j) free_pos.push_back(j);
                for (std::uint32_t fill = 0; fill < (1u << free_pos.size()); ++fill) {
                    std::uint32_t v = 1u << piv;
                    for (std::size_t t = 0; t < free_pos.size(); ++t)
                        if (fill & (1u << t)) v |= 1u << free_pos[t];
                    basis.push_back(v);
                    go(basis, piv + 1);
                    basis.pop_back();
                }
            }
        }
    } rec{n, p, &out};

    rec.go(basis, 0);
    // dedupe (fillings over later pivot columns generate repeats)
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string element_to_string(const AlgebraElement& a) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t g = 0; g < a.support.size(); ++g) {
        if (!a.support.get(g)) continue;
        if (!first) os << "+";
        first = false;
        for (int i = 0; i < a.rank; ++i) os << ((g >> i) & 1u);
    }
    if (first) os << "0";
    return os.str();
}

AlgebraElement element_from_string(int rank, const std::string& s) {
    AlgebraElement a = AlgebraElement::zero(rank);
    if (s == "0") return a;
    std::stringstream ss(s);
    std::string term;
    while (std::getline(ss, term, '+')) {
        // trim
        while (!term.empty() && term.front() == ' ') term.erase(term.begin());
        while (!term.empty() && term.back() == ' ') term.pop_back();
        if (int(term.size()) != rank) throw std::invalid_argument("element term has wrong length: " + term);
        std::uint32_t g = 0;
        for (int i = 0; i < rank; ++i) {
            if (term[std::size_t(i)] == '1')
                g |= 1u << i;
            else if (term[std::size_t(i)] != '0')
                throw std::invalid_argument("element term must be a bit string: " + term);
        }
        a.support.flip(g);
    }
    return a;
}

}  // namespace wf
