#include "wf/gf2.hpp"

#include <algorithm>

namespace wf {

namespace {

// In-place reduced row echelon form; returns pivot column per kept row.
std::vector<int> echelonize(std::vector<BitVector>& rows) {
    std::vector<BitVector> kept;
    std::vector<int> pivots;
    for (auto& r : rows) {
        BitVector v = r;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (v.get(std::size_t(pivots[i]))) v.xor_with(kept[i]);
        }
        int p = v.first_set();
        if (p < 0) continue;
        // back-eliminate so every pivot column is unit
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (kept[i].get(std::size_t(p))) kept[i].xor_with(v);
        }
        kept.push_back(std::move(v));
        pivots.push_back(p);
    }
    // sort rows by pivot for a unique normal form
    std::vector<std::size_t> order(kept.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });
    std::vector<BitVector> out;
    std::vector<int> outp;
    out.reserve(kept.size());
    for (auto i : order) {
        out.push_back(std::move(kept[i]));
        outp.push_back(pivots[i]);
    }
    rows = std::move(out);
    return outp;
}

}  // namespace

std::size_t BitMatrix::rank() const {
    std::vector<BitVector> rows = row_;
    auto piv = echelonize(rows);
    return piv.size();
}

Subspace Subspace::span(std::size_t ambient, const std::vector<BitVector>& gens) {
    Subspace s(ambient);
    std::vector<BitVector> rows;
    rows.reserve(gens.size());
    for (auto& g : gens) {
        if (g.size() != ambient) throw std::invalid_argument("span: ambient mismatch");
        rows.push_back(g);
    }
    echelonize(rows);
    s.basis_ = std::move(rows);
    return s;
}

Subspace Subspace::column_space(const BitMatrix& m) {
    std::vector<BitVector> rows;
    BitMatrix t = m.transpose();
    for (std::size_t i = 0; i < t.rows(); ++i) rows.push_back(t.row(i));
    echelonize(rows);
    Subspace s(m.rows());
    s.basis_ = std::move(rows);
    return s;
}

Subspace Subspace::kernel(const BitMatrix& m) {
    std::vector<BitVector> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    std::vector<int> piv = echelonize(rows);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : piv) is_pivot[std::size_t(p)] = true;
    std::vector<BitVector> basis;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        BitVector v(m.cols());
        v.set(j);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].get(j)) v.set(std::size_t(piv[i]));
        }
        basis.push_back(std::move(v));
    }
    Subspace s(m.cols());
    echelonize(basis);
    s.basis_ = std::move(basis);
    return s;
}

BitVector Subspace::reduce(BitVector v) const {
    if (v.size() != ambient_) throw std::invalid_argument("reduce: ambient mismatch");
    for (auto& b : basis_) {
        int p = b.first_set();
        if (p >= 0 && v.get(std::size_t(p))) v.xor_with(b);
    }
    return v;
}

bool Subspace::contains(const Subspace& o) const {
    if (o.ambient_ != ambient_) return false;
    for (auto& b : o.basis_)
        if (!contains(b)) return false;
    return true;
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("sum: ambient mismatch");
    std::vector<BitVector> gens = a.basis();
    gens.insert(gens.end(), b.basis().begin(), b.basis().end());
    return Subspace::span(a.ambient(), gens);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("intersect: ambient mismatch");
    // Zassenhaus-style: kernel of [A | B] as column block matrix gives
    // coefficient pairs with A x = B y; intersection is spanned by A x.
    std::vector<BitVector> cols;
    for (auto& v : a.basis()) cols.push_back(v);
    for (auto& v : b.basis()) cols.push_back(v);
    if (cols.empty()) return Subspace::zero(a.ambient());
    BitMatrix m = BitMatrix::from_columns(a.ambient(), cols);
    Subspace ker = Subspace::kernel(m);
    std::vector<BitVector> gens;
    for (auto& k : ker.basis()) {
        BitVector v(a.ambient());
        for (std::size_t j = 0; j < a.basis().size(); ++j)
            if (k.get(j)) v.xor_with(a.basis()[j]);
        gens.push_back(std::move(v));
    }
    return Subspace::span(a.ambient(), gens);
}

RankDecomposition rank_kernel_image(const BitMatrix& m) {
    RankDecomposition out;
    out.kernel = Subspace::kernel(m);
    out.image = Subspace::column_space(m);
    out.rank = out.image.dim();
    return out;
}

SubspaceAlgebra subspace_algebra(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient()) throw std::invalid_argument("subspace_algebra: ambient mismatch");
    SubspaceAlgebra out;
    out.sum = sum(u, v);
    out.intersection = intersect(u, v);
    // coset representatives of u modulo the intersection
    Quotient q(u, out.intersection);
    out.quotient_reps = q.reps();
    return out;
}

Subspace annihilator(const Subspace& u, const BitMatrix& pairing) {
    if (u.ambient() != pairing.cols())
        throw std::invalid_argument("annihilator: u must live on the column side of the pairing");
    // a ∈ ann iff aᵀ (P b) = 0 for each basis vector b, i.e. a ⊥ P b.
    std::vector<BitVector> rows;
    for (auto& b : u.basis()) rows.push_back(pairing.apply(b));
    if (rows.empty()) return Subspace::full(pairing.rows());
    return Subspace::kernel(BitMatrix::from_rows(pairing.rows(), rows));
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    SpanSolver solver(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) solver.add(m.column(j));
    auto combo = solver.express(b);
    if (!combo) return std::nullopt;
    BitVector x(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (combo->get(j)) x.set(j);
    return x;
}

std::optional<BitMatrix> inverse(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    std::size_t n = m.rows();
    SpanSolver solver(n);
    for (std::size_t j = 0; j < n; ++j)
        if (!solver.add(m.column(j))) return std::nullopt;
    BitMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto combo = solver.express(BitVector::unit(n, i));
        if (!combo) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j)
            if (combo->get(j)) inv.set(j, i);
    }
    return inv;
}

Subspace preimage(const BitMatrix& m, const Subspace& target) {
    if (target.ambient() != m.rows()) throw std::invalid_argument("preimage: ambient mismatch");
    // target = kernel of W where rows of W span the orthogonal complement
    std::vector<BitVector> trows = target.basis();
    Subspace comp = trows.empty() ? Subspace::full(m.rows())
                                  : Subspace::kernel(BitMatrix::from_rows(m.rows(), trows));
    if (comp.dim() == 0) return Subspace::full(m.cols());
    BitMatrix w = BitMatrix::from_rows(m.rows(), comp.basis());
    return Subspace::kernel(w.mul(m));
}

bool SpanSolver::add(const BitVector& v) {
    if (v.size() != ambient_) throw std::invalid_argument("SpanSolver: ambient mismatch");
    std::size_t idx = n_gens_++;
    BitVector vec = v;
    BitVector combo(n_gens_);
    combo.set(idx);
    // extend previous combos with a zero coordinate
    for (auto& r : rows_) {
        BitVector c(n_gens_);
        for (std::size_t i = 0; i < r.combo.size(); ++i)
            if (r.combo.get(i)) c.set(i);
        r.combo = std::move(c);
    }
    for (auto& r : rows_) {
        int p = r.vec.first_set();
        if (p >= 0 && vec.get(std::size_t(p))) {
            vec.xor_with(r.vec);
            combo.xor_with(r.combo);
        }
    }
    if (vec.is_zero()) return false;
    rows_.push_back({std::move(vec), std::move(combo)});
    return true;
}

std::optional<BitVector> SpanSolver::express(const BitVector& x) const {
    if (x.size() != ambient_) throw std::invalid_argument("SpanSolver: ambient mismatch");
    BitVector v = x;
    BitVector combo(n_gens_);
    for (auto& r : rows_) {
        int p = r.vec.first_set();
        if (p >= 0 && v.get(std::size_t(p))) {
            v.xor_with(r.vec);
            for (std::size_t i = 0; i < r.combo.size(); ++i)
                if (r.combo.get(i)) combo.flip(i);
        }
    }
    if (!v.is_zero()) return std::nullopt;
    return combo;
}

Quotient::Quotient(Subspace total, Subspace denominator)
    : total_(std::move(total)), den_(std::move(denominator)), solver_(total_.ambient()) {
    if (den_.ambient() != total_.ambient()) throw std::invalid_argument("Quotient: ambient mismatch");
    if (!total_.contains(den_)) throw std::invalid_argument("Quotient: denominator not contained in total");
    for (auto& b : den_.basis()) solver_.add(b);
    for (auto& b : total_.basis()) {
        std::size_t gen = solver_.generator_count();
        if (solver_.add(b)) {
            reps_.push_back(b);
            rep_gen_index_.push_back(gen);
        }
    }
}

BitVector Quotient::coords(const BitVector& x) const {
    auto combo = solver_.express(x);
    if (!combo) throw std::invalid_argument("Quotient::coords: vector outside total space");
    BitVector out(reps_.size());
    for (std::size_t i = 0; i < reps_.size(); ++i)
        if (combo->get(rep_gen_index_[i])) out.set(i);
    return out;
}

BitVector Quotient::lift(const BitVector& coords) const {
    if (coords.size() != reps_.size()) throw std::invalid_argument("Quotient::lift: bad coordinate size");
    BitVector v(total_.ambient());
    for (std::size_t i = 0; i < reps_.size(); ++i)
        if (coords.get(i)) v.xor_with(reps_[i]);
    return v;
}

}  // namespace wf
