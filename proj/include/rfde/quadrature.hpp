#pragma once

#include <vector>

namespace rfde {

/// Nodes and weights of an interpolatory quadrature rule on [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b], nodes increasing.
///
/// Nodes are the roots of the degree-n Legendre polynomial, located by
/// Newton iteration on the three-term recurrence from Chebyshev-like initial
/// guesses. Exact for polynomials of degree 2n - 1.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

}  // namespace rfde
