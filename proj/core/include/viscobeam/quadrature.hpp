#pragma once

#include <vector>

namespace viscobeam {

/// Quadrature rule on the reference interval [-1, 1].
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
    int exactness_degree = 0;
};

/// Gauss-Legendre rule with n points (1 <= n <= 10), exact for polynomials
/// of degree 2n-1. Nodes are found by Newton iteration on the Legendre
/// polynomial; weights from the standard derivative formula.
QuadratureRule gauss_rule(int n_points);

} // namespace viscobeam
