#include "viscobeam/norms.hpp"

#include "viscobeam/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace viscobeam {

namespace {

struct DiffNorm {
    double value_sq = 0.0;
    double deriv_sq = 0.0;
};

DiffNorm integrate_difference(const CoeffVec& fine, const CoeffVec* coarse) {
    const FeSpace& sf = *fine.space;
    const Mesh1D& mesh = sf.mesh();
    int max_deg = sf.degree();
    if (coarse) max_deg = std::max(max_deg, coarse->space->degree());
    const QuadratureRule quad = gauss_rule(std::min(max_deg + 1, 10));

    DiffNorm out;
    for (int e = 0; e < mesh.element_count(); ++e) {
        const double h = mesh.element_length(e);
        const double xl = mesh.element_left(e);
        for (std::size_t q = 0; q < quad.points.size(); ++q) {
            const double x = xl + h * (quad.points[q] + 1.0) / 2.0;
            const double w = quad.weights[q] * h / 2.0;
            double dv = eval(fine, x);
            double dd = eval_deriv(fine, x);
            if (coarse) {
                dv -= eval(*coarse, x);
                dd -= eval_deriv(*coarse, x);
            }
            out.value_sq += w * dv * dv;
            out.deriv_sq += w * dd * dd;
        }
    }
    return out;
}

} // namespace

double spatial_norm_diff(const CoeffVec& a, const CoeffVec& b, NormKind kind) {
    const Mesh1D& ma = a.space->mesh();
    const Mesh1D& mb = b.space->mesh();
    const CoeffVec* fine = &a;
    const CoeffVec* coarse = &b;
    if (mb.element_count() > ma.element_count()) std::swap(fine, coarse);
    if (!coarse->space->mesh().nested_in(fine->space->mesh()))
        throw std::invalid_argument("spatial_norm_diff: meshes are not nested");
    const DiffNorm d = integrate_difference(*fine, coarse);
    return kind == NormKind::l2 ? std::sqrt(d.value_sq) : std::sqrt(d.value_sq + d.deriv_sq);
}

double spatial_norm(const CoeffVec& a, NormKind kind) {
    const DiffNorm d = integrate_difference(a, nullptr);
    return kind == NormKind::l2 ? std::sqrt(d.value_sq) : std::sqrt(d.value_sq + d.deriv_sq);
}

double time_accumulate(const std::vector<double>& values, double dt) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        sum += 0.5 * dt * (values[i] + values[i + 1]);
    return sum;
}

double convergence_rate(double e, double e_prev, double h, double h_prev) {
    if (!(e > 0.0) || !(e_prev > 0.0))
        throw std::invalid_argument("convergence_rate: errors must be positive");
    if (!(h > 0.0) || !(h_prev > 0.0) || h == h_prev)
        throw std::invalid_argument("convergence_rate: need two distinct mesh sizes");
    return std::log(e / e_prev) / std::log(h / h_prev);
}

void attach_rates(std::vector<ErrorReport>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const ErrorReport& prev = rows[i - 1];
        ErrorReport& cur = rows[i];
        auto rate = [&](double e, double e_prev) {
            return (e > 0.0 && e_prev > 0.0) ? convergence_rate(e, e_prev, cur.h, prev.h)
                                             : std::numeric_limits<double>::quiet_NaN();
        };
        cur.w.r0 = rate(cur.w.e0, prev.w.e0);
        cur.w.r1 = rate(cur.w.e1, prev.w.e1);
        cur.theta.r0 = rate(cur.theta.e0, prev.theta.e0);
        cur.theta.r1 = rate(cur.theta.e1, prev.theta.e1);
        cur.gamma_r0 = rate(cur.gamma_e0, prev.gamma_e0);
    }
}

} // namespace viscobeam
