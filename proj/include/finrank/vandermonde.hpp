#pragma once

#include <cstdint>

#include "finrank/polynomials.hpp"

namespace finrank {

// Random symmetric holomorphic polynomial in N variables: a polynomial with
// standard-normal complex coefficients in the power sums p_1..p_degree.
BiPolynomial symmetric_sample(int N, int degree, std::uint64_t seed);

// Exact coefficient-level invariance under all adjacent transpositions.
bool is_symmetric(const BiPolynomial& p);

// V(D) V(Dbar) [H1 . conj(H2)] evaluated at 0 by symbolic differentiation.
// Factors as [V(D)H1](0) . conj([V(D)H2](0)); vanishes whenever either
// factor is symmetric, but not for H1 = H2 = V(Z).
Complex check_annihilation(const BiPolynomial& H1, const BiPolynomial& H2,
                           int N);

// [V(D) H](0) for holomorphic H, the scalar the factorization runs through.
Complex vandermonde_derivative_at_zero(const BiPolynomial& H, int N);

}  // namespace finrank
