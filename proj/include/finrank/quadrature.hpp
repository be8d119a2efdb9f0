#pragma once

#include <vector>

namespace finrank {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre rule of the given order (number of nodes), nodes in
// ascending order. Computed by Newton iteration on P_n with the usual
// Chebyshev initial guesses; accurate to machine precision for n <= ~200.
const QuadratureRule& gauss_legendre(int order);

// Affine image of the rule on [a, b].
QuadratureRule gauss_legendre_on(int order, double a, double b);

}  // namespace finrank
