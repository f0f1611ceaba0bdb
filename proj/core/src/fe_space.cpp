#include "viscobeam/fe_space.hpp"

#include <cmath>
#include <stdexcept>

namespace viscobeam {

namespace {

// Equispaced Lagrange nodes on [-1, 1]; a single midpoint node for p = 0.
inline double ref_node(int degree, int i) {
    return degree == 0 ? 0.0 : -1.0 + 2.0 * i / degree;
}

} // namespace

FeSpace::FeSpace(MeshPtr mesh, int degree, Continuity continuity)
    : mesh_(std::move(mesh)), degree_(degree), continuity_(continuity) {
    if (!mesh_) throw std::invalid_argument("FeSpace: null mesh");
    if (continuity_ == Continuity::c0 && degree_ < 1)
        throw std::invalid_argument("FeSpace: continuous spaces need degree >= 1");
    if (continuity_ == Continuity::discontinuous && degree_ < 0)
        throw std::invalid_argument("FeSpace: negative degree");
    if (degree_ > 4)
        throw std::invalid_argument("FeSpace: degrees above 4 are not supported");
    const int n = mesh_->element_count();
    n_dofs_ = continuity_ == Continuity::c0 ? degree_ * n + 1 : (degree_ + 1) * n;
}

double FeSpace::dof_coordinate(int g) const {
    const int per = continuity_ == Continuity::c0 ? degree_ : degree_ + 1;
    int e = g / per;
    int i = g - e * per;
    if (continuity_ == Continuity::c0 && e == mesh_->element_count()) {
        e -= 1;
        i = degree_;
    }
    const double xl = mesh_->element_left(e);
    const double h = mesh_->element_length(e);
    return xl + h * (ref_node(degree_, i) + 1.0) / 2.0;
}

void FeSpace::shape_values(double xi, double* out) const {
    const int p = degree_;
    for (int i = 0; i <= p; ++i) {
        double v = 1.0;
        const double xi_i = ref_node(p, i);
        for (int j = 0; j <= p; ++j) {
            if (j == i) continue;
            const double xi_j = ref_node(p, j);
            v *= (xi - xi_j) / (xi_i - xi_j);
        }
        out[i] = v;
    }
}

void FeSpace::shape_derivatives(double xi, double* out) const {
    const int p = degree_;
    for (int i = 0; i <= p; ++i) {
        const double xi_i = ref_node(p, i);
        double sum = 0.0;
        for (int k = 0; k <= p; ++k) {
            if (k == i) continue;
            double term = 1.0 / (xi_i - ref_node(p, k));
            for (int j = 0; j <= p; ++j) {
                if (j == i || j == k) continue;
                const double xi_j = ref_node(p, j);
                term *= (xi - xi_j) / (xi_i - xi_j);
            }
            sum += term;
        }
        out[i] = sum;
    }
}

CoeffVec::CoeffVec(SpacePtr s, Eigen::VectorXd v) : space(std::move(s)), values(std::move(v)) {
    if (!space) throw std::invalid_argument("CoeffVec: null space");
    if (values.size() != space->n_dofs())
        throw std::invalid_argument("CoeffVec: coefficient count does not match the space");
}

namespace {

double eval_impl(const CoeffVec& f, double x, bool derivative) {
    const FeSpace& sp = *f.space;
    const Mesh1D& mesh = sp.mesh();
    const int e = mesh.element_containing(x);
    const double h = mesh.element_length(e);
    const double xi = 2.0 * (x - mesh.element_left(e)) / h - 1.0;
    double shp[8];
    if (derivative)
        sp.shape_derivatives(xi, shp);
    else
        sp.shape_values(xi, shp);
    double v = 0.0;
    for (int i = 0; i < sp.dofs_per_element(); ++i)
        v += shp[i] * f.values[sp.global_dof(e, i)];
    return derivative ? v * 2.0 / h : v;
}

} // namespace

double eval(const CoeffVec& f, double x) { return eval_impl(f, x, false); }
double eval_deriv(const CoeffVec& f, double x) { return eval_impl(f, x, true); }

CoeffVec lagrange_interpolate(const SpacePtr& space, const std::function<double(double)>& f) {
    if (space->continuity() != Continuity::c0)
        throw std::invalid_argument("lagrange_interpolate: needs a continuous space");
    Eigen::VectorXd coeffs(space->n_dofs());
    for (int g = 0; g < space->n_dofs(); ++g)
        coeffs[g] = f(space->dof_coordinate(g));
    return CoeffVec(space, std::move(coeffs));
}

CoeffVec l2_project(const SpacePtr& space, const std::function<double(double)>& f) {
    return l2_project(space, f, gauss_rule(std::min(space->degree() + 3, 10)));
}

CoeffVec l2_project(const SpacePtr& space, const std::function<double(double)>& f,
                    const QuadratureRule& rhs_rule) {
    if (space->continuity() != Continuity::discontinuous)
        throw std::invalid_argument("l2_project: needs a discontinuous space");
    const Mesh1D& mesh = space->mesh();
    const int m = space->dofs_per_element();
    Eigen::VectorXd coeffs(space->n_dofs());
    Eigen::MatrixXd mass(m, m);
    Eigen::VectorXd rhs(m);
    double shp[8];
    for (int e = 0; e < mesh.element_count(); ++e) {
        const double h = mesh.element_length(e);
        const double xl = mesh.element_left(e);
        mass.setZero();
        rhs.setZero();
        for (std::size_t q = 0; q < rhs_rule.points.size(); ++q) {
            const double xi = rhs_rule.points[q];
            const double w = rhs_rule.weights[q] * h / 2.0;
            space->shape_values(xi, shp);
            const double fx = f(xl + h * (xi + 1.0) / 2.0);
            for (int i = 0; i < m; ++i) {
                rhs[i] += w * fx * shp[i];
                for (int j = 0; j < m; ++j)
                    mass(i, j) += w * shp[i] * shp[j];
            }
        }
        coeffs.segment(e * m, m) = mass.ldlt().solve(rhs);
    }
    return CoeffVec(space, std::move(coeffs));
}

} // namespace viscobeam
