#include "rfde/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "rfde/errors.hpp"

namespace rfde {

namespace {

// Returns (P_n(x), P_n'(x)) via the three-term recurrence. |x| < 1 assumed.
std::pair<double, double> legendre_with_derivative(int n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) {
        throw InvalidMesh("gauss_legendre: need at least one node, got " + std::to_string(n));
    }
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    // Roots are symmetric about 0; compute the positive ones and mirror.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre_with_derivative(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double dp = legendre_with_derivative(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = mid;
    }
    return rule;
}

}  // namespace rfde
