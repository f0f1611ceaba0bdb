#include "viscobeam/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace viscobeam {

namespace {

// Legendre P_n and its derivative at x, by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) { p = p0; dp = 0.0; return; }
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

QuadratureRule gauss_rule(int n_points) {
    if (n_points < 1 || n_points > 10)
        throw std::invalid_argument("gauss_rule: n_points must be in [1, 10]");

    QuadratureRule rule;
    rule.points.resize(static_cast<std::size_t>(n_points));
    rule.weights.resize(static_cast<std::size_t>(n_points));
    rule.exactness_degree = 2 * n_points - 1;

    if (n_points == 1) {
        rule.points[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }

    const int n = n_points;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            const double dx = -p / dp;
            x += dx;
            if (std::abs(dx) < 1e-16) break;
        }
        legendre(n, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.points[static_cast<std::size_t>(i)] = -x;
        rule.points[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.points[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

} // namespace viscobeam
