#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wf {

// Dense bit-packed vector over the two-element field.
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v = true) {
        std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (v)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void xor_with(const BitVector& o) {
        if (o.n_ != n_) throw std::invalid_argument("BitVector length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }

    bool is_zero() const {
        for (auto x : w_)
            if (x) return false;
        return true;
    }

    // Index of the lowest set bit, or -1.
    int first_set() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + std::size_t(__builtin_ctzll(w_[i])));
        return -1;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto x : w_) c += std::size_t(__builtin_popcountll(x));
        return c;
    }

    // Parity of the AND with another vector (the standard dot product).
    bool dot(const BitVector& o) const {
        if (o.n_ != n_) throw std::invalid_argument("BitVector length mismatch");
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return __builtin_popcountll(acc) & 1u;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s.push_back(i);
        return s;
    }

    static BitVector unit(std::size_t n, std::size_t i) {
        BitVector v(n);
        v.set(i);
        return v;
    }

    static BitVector from_support(std::size_t n, const std::vector<std::size_t>& sup) {
        BitVector v(n);
        for (auto i : sup) v.set(i);
        return v;
    }

    bool operator==(const BitVector& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVector& o) const { return !(*this == o); }
    bool operator<(const BitVector& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return w_ < o.w_;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Row-major bit-packed matrix over the two-element field.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), row_(rows, BitVector(cols)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const { return row_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v = true) { row_[i].set(j, v); }

    const BitVector& row(std::size_t i) const { return row_[i]; }
    BitVector& row(std::size_t i) { return row_[i]; }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    static BitMatrix from_rows(std::size_t cols, const std::vector<BitVector>& rows) {
        BitMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
            m.row_[i] = rows[i];
        }
        return m;
    }

    static BitMatrix from_columns(std::size_t rows, const std::vector<BitVector>& cols) {
        BitMatrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                if (cols[j].get(i)) m.set(i, j);
        }
        return m;
    }

    BitVector column(std::size_t j) const {
        BitVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (get(i, j)) c.set(i);
        return c;
    }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (get(i, j)) t.set(j, i);
        return t;
    }

    // y = M x, with x indexed by columns.
    BitVector apply(const BitVector& x) const {
        if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
        BitVector y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (row_[i].dot(x)) y.set(i);
        return y;
    }

    BitMatrix mul(const BitMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("mul: dimension mismatch");
        BitMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k)
                if (get(i, k)) r.row_[i].xor_with(o.row_[k]);
        }
        return r;
    }

    BitMatrix add(const BitMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("add: shape mismatch");
        BitMatrix r = *this;
        for (std::size_t i = 0; i < rows_; ++i) r.row_[i].xor_with(o.row_[i]);
        return r;
    }

    bool is_zero() const {
        for (auto& r : row_)
            if (!r.is_zero()) return false;
        return true;
    }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && row_ == o.row_;
    }

    std::size_t rank() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVector> row_;
};

// Subspace in canonical reduced echelon form.  Two spanning sets of the same
// space always produce identical bases, so equality is data comparison.
class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

    static Subspace zero(std::size_t ambient) { return Subspace(ambient); }

    static Subspace full(std::size_t ambient) {
        Subspace s(ambient);
        for (std::size_t i = 0; i < ambient; ++i) s.basis_.push_back(BitVector::unit(ambient, i));
        return s;
    }

    static Subspace span(std::size_t ambient, const std::vector<BitVector>& gens);
    static Subspace column_space(const BitMatrix& m);
    static Subspace kernel(const BitMatrix& m);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BitVector>& basis() const { return basis_; }

    // Residue of v after elimination against the echelon basis.
    BitVector reduce(BitVector v) const;
    bool contains(const BitVector& v) const { return reduce(v).is_zero(); }
    bool contains(const Subspace& o) const;

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

  private:
    std::size_t ambient_ = 0;
    std::vector<BitVector> basis_;  // reduced echelon rows, increasing pivot
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

struct RankDecomposition {
    std::size_t rank = 0;
    Subspace kernel;
    Subspace image;
};

// Rank, kernel and column space of a matrix; rank + dim kernel = cols.
RankDecomposition rank_kernel_image(const BitMatrix& m);

struct SubspaceAlgebra {
    Subspace sum;
    Subspace intersection;
    std::vector<BitVector> quotient_reps;  // representatives of U in U+V modulo U∩V... see note
};

// Sum, intersection, and representatives of cosets of U inside U+V.
SubspaceAlgebra subspace_algebra(const Subspace& u, const Subspace& v);

// Orthogonal complement with respect to a pairing matrix:
// { a | aᵀ P b = 0 for all b in u }, where a ranges over the row space side.
Subspace annihilator(const Subspace& u, const BitMatrix& pairing);

// { x | M x ∈ target }.
Subspace preimage(const BitMatrix& m, const Subspace& target);

// Inverse of a square matrix, or nullopt when singular.
std::optional<BitMatrix> inverse(const BitMatrix& m);

// One solution x of M x = b, or nullopt.
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b);

// Incremental span that can express members as combinations of the
// generators in insertion order.
class SpanSolver {
  public:
    explicit SpanSolver(std::size_t ambient) : ambient_(ambient) {}

    // Returns true if v enlarged the span.
    bool add(const BitVector& v);
    std::size_t generator_count() const { return n_gens_; }
    std::size_t dim() const { return rows_.size(); }

    // Coefficients over the generators, or nullopt if x is outside the span.
    std::optional<BitVector> express(const BitVector& x) const;

  private:
    struct Row {
        BitVector vec;
        BitVector combo;
    };
    std::size_t ambient_;
    std::size_t n_gens_ = 0;
    std::vector<Row> rows_;
};

// Quotient total/denominator with canonical coset representatives.
class Quotient {
  public:
    Quotient() = default;
    Quotient(Subspace total, Subspace denominator);

    std::size_t dim() const { return reps_.size(); }
    const std::vector<BitVector>& reps() const { return reps_; }
    const Subspace& total() const { return total_; }
    const Subspace& denominator() const { return den_; }

    // Coordinates of x over the representatives; throws if x is not in total.
    BitVector coords(const BitVector& x) const;
    BitVector lift(const BitVector& coords) const;

  private:
    Subspace total_, den_;
    std::vector<BitVector> reps_;
    std::vector<std::size_t> rep_gen_index_;
    SpanSolver solver_{0};
};

}  // namespace wf
