#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wf/filt.hpp"
#include "wf/gf2.hpp"

namespace wf {

// Rank-n discrete torus in additive form: elements are n-bit masks.
struct TorusGroup {
    int rank = 0;
    std::size_t size() const { return std::size_t(1) << rank; }
};

// Element of the group algebra, stored by its support over the 2^n group
// elements.
struct AlgebraElement {
    int rank = 0;
    BitVector support;

    static AlgebraElement zero(int rank) {
        return {rank, BitVector(std::size_t(1) << rank)};
    }
    static AlgebraElement basis(int rank, std::uint32_t g) {
        AlgebraElement a = zero(rank);
        a.support.set(g);
        return a;
    }
    bool operator==(const AlgebraElement& o) const {
        return rank == o.rank && support == o.support;
    }
};

AlgebraElement algebra_add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b);
bool augmentation(const AlgebraElement& a);

// Indicator of the coset g + <e_i : i in J>.
AlgebraElement coset_indicator(int rank, std::uint32_t g, std::uint32_t j_mask);

// Subsets of {0..n-1} of size p as masks in increasing numeric order.
std::vector<std::uint32_t> subsets_of_size(int n, int p);

// Echelon basis of the p-th power of the augmentation ideal.
Subspace ideal_power_basis(int rank, int p);

// Coordinates of a modulo the (p+1)-st power, over the coset indicators of
// the coordinate subgroups of rank p.  Throws if a is outside the p-th power.
BitVector graded_coordinates(const AlgebraElement& a, int p);

// Group homomorphism given by a dst_rank x src_rank matrix.
struct TorusHom {
    int src_rank = 0, dst_rank = 0;
    BitMatrix mat;

    std::uint32_t apply(std::uint32_t g) const;
    static TorusHom identity(int rank);
};

TorusHom compose(const TorusHom& g, const TorusHom& f);

// Algebra pushforward along a group homomorphism.
AlgebraElement hom_pushforward(const TorusHom& hom, const AlgebraElement& a);

// Minor determinant of the hom matrix over rows I (target) and columns J
// (source), both of size p.
bool minor_det(const TorusHom& hom, std::uint32_t i_mask, std::uint32_t j_mask);

// Matrix of the induced map on the p-th graded piece, rows and columns
// indexed by subsets_of_size.  Entries are the p x p minors.
BitMatrix graded_matrix(const TorusHom& hom, int p);

// Same matrix computed by pushing coset indicators through the algebra map
// and reading off graded coordinates.
BitMatrix graded_matrix_bruteforce(const TorusHom& hom, int p);

// Exterior-algebra model of the associated graded: well-definedness,
// multiplicativity, degreewise bijectivity, functoriality.
Report exterior_model_check(int rank);

// All subgroups of the rank-n torus of given rank, as sorted element lists.
std::vector<std::vector<std::uint32_t>> enumerate_subgroups(int n, int p);

std::string element_to_string(const AlgebraElement& a);
AlgebraElement element_from_string(int rank, const std::string& s);

}  // namespace wf
