#pragma once

#include "viscobeam/mesh.hpp"
#include "viscobeam/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>

namespace viscobeam {

enum class Continuity { c0, discontinuous };

/// Scalar piecewise-polynomial space on a 1D mesh: either continuous
/// Lagrange elements (degree >= 1) or fully discontinuous elements
/// (degree >= 0). Lagrange nodes are equispaced within each element.
class FeSpace {
public:
    FeSpace(MeshPtr mesh, int degree, Continuity continuity);

    const Mesh1D& mesh() const { return *mesh_; }
    const MeshPtr& mesh_ptr() const { return mesh_; }
    int degree() const { return degree_; }
    Continuity continuity() const { return continuity_; }
    int n_dofs() const { return n_dofs_; }
    int dofs_per_element() const { return degree_ + 1; }

    /// Global index of local dof i on element e; injective per element.
    int global_dof(int e, int i) const {
        return continuity_ == Continuity::c0 ? e * degree_ + i
                                             : e * (degree_ + 1) + i;
    }

    /// Physical coordinate of the Lagrange node behind global dof g.
    double dof_coordinate(int g) const;

    /// Local basis values / reference derivatives at xi in [-1, 1].
    void shape_values(double xi, double* out) const;
    void shape_derivatives(double xi, double* out) const;

private:
    MeshPtr mesh_;
    int degree_;
    Continuity continuity_;
    int n_dofs_;
};

using SpacePtr = std::shared_ptr<const FeSpace>;

/// Coefficient vector of one finite element function.
struct CoeffVec {
    SpacePtr space;
    Eigen::VectorXd values;

    CoeffVec() = default;
    CoeffVec(SpacePtr s, Eigen::VectorXd v);
};

/// Point value of the FE function at x; discontinuous functions use the
/// element owning x under the left-closed convention.
double eval(const CoeffVec& f, double x);

/// Spatial derivative of the FE function at x.
double eval_deriv(const CoeffVec& f, double x);

/// Coefficients of the Lagrange interpolant of f in a continuous space.
CoeffVec lagrange_interpolate(const SpacePtr& space, const std::function<double(double)>& f);

/// Elementwise L2 projection of f onto a discontinuous space. The residual
/// is orthogonal to every basis function under the rule used for the
/// right-hand side (exact once the rule integrates f against the basis).
CoeffVec l2_project(const SpacePtr& space, const std::function<double(double)>& f);
CoeffVec l2_project(const SpacePtr& space, const std::function<double(double)>& f,
                    const QuadratureRule& rhs_rule);

} // namespace viscobeam
