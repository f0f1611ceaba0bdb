#pragma once

#include "viscobeam/beam_config.hpp"
#include "viscobeam/fe_space.hpp"
#include "viscobeam/linalg.hpp"
#include "viscobeam/quadrature.hpp"

#include <Eigen/SparseCore>

#include <functional>

namespace viscobeam {

/// Mapping between full-space dofs and the reduced system after symmetric
/// elimination of constrained dofs.
struct FieldMap {
    std::vector<int> kept;    // reduced index -> full dof
    std::vector<int> reduced; // full dof -> reduced index, -1 if eliminated
    int size() const { return static_cast<int>(kept.size()); }
};

FieldMap make_field_map(int n_dofs, const std::vector<int>& constrained);

/// Reduced-dof layout: transverse block first, then rotations, then shear.
struct DofLayout {
    int n_w = 0;
    int n_theta = 0;
    int n_gamma = 0;
    int n_u() const { return n_w + n_theta; }
    int total() const { return n_u() + n_gamma; }
};

/// Discrete operators of the mixed formulation
///   [ A  B^T ] [u]   [F]        A: bending stiffness (rotations only)
///   [ B  -C  ] [g] = [0]        B: shear coupling, C: lambda-scaled mass
/// on the reduced (constrained-dofs-removed) unknowns.
struct DiscreteOperators {
    SpacePtr v_w, v_theta, q_space;
    DofLayout layout;
    FieldMap map_w, map_theta;
    Eigen::SparseMatrix<double> a_bend;  // n_u x n_u, nonzero on theta block
    Eigen::SparseMatrix<double> b_shear; // n_gamma x n_u
    Eigen::SparseMatrix<double> c_gamma; // n_gamma x n_gamma, SPD
    std::function<double(double, double)> scaled_load;
    QuadratureRule quad;

    Eigen::VectorXd load_vector(double t) const;

    CoeffVec expand_w(const Eigen::VectorXd& u) const;
    CoeffVec expand_theta(const Eigen::VectorXd& u) const;
    CoeffVec expand_gamma(const Eigen::VectorXd& gamma) const;
};

/// Assemble from a beam configuration. All spaces must share the beam mesh
/// and the rule must be exact for every assembled integrand.
DiscreteOperators assemble(const BeamConfig& cfg, SpacePtr v_w, SpacePtr v_theta,
                           SpacePtr q_space, const QuadratureRule& quad);

/// Same, with the scaled coefficients given directly (test entry point).
DiscreteOperators assemble_scaled(double i_hat, double a_hat, double lambda,
                                  SpacePtr v_w, SpacePtr v_theta, SpacePtr q_space,
                                  const QuadratureRule& quad, const BoundaryDofs& bdofs,
                                  std::function<double(double, double)> scaled_load);

/// Displacement-rotation stiffness of the irreducible formulation, with the
/// shear energy integrated by a caller-chosen rule (exact or reduced).
struct PrimalOperators {
    SpacePtr v_w, v_theta;
    DofLayout layout; // n_gamma = 0
    FieldMap map_w, map_theta;
    Eigen::SparseMatrix<double> k_bend;
    Eigen::SparseMatrix<double> k_shear;
    std::function<double(double, double)> scaled_load;
    QuadratureRule quad_load;
    double shear_coefficient = 0.0; // A_hat / lambda

    Eigen::VectorXd load_vector(double t) const;
    CoeffVec expand_w(const Eigen::VectorXd& u) const;
    CoeffVec expand_theta(const Eigen::VectorXd& u) const;
};

PrimalOperators assemble_primal(const BeamConfig& cfg, SpacePtr v_w, SpacePtr v_theta,
                                const QuadratureRule& quad_bend,
                                const QuadratureRule& quad_shear);

/// Norm matrices for the inf-sup computation: full H1 on the displacement
/// pair, L2 on the shear space, both on reduced dofs.
struct NormMatrices {
    Eigen::MatrixXd on_u;
    Eigen::MatrixXd on_q;
};
NormMatrices norm_matrices(const DiscreteOperators& ops);

/// Discrete inf-sup constant: smallest nonzero singular value of
/// N_Q^{-1/2} B N_V^{-1/2}. Norm matrices must be SPD.
double inf_sup_constant(const Eigen::MatrixXd& b, const Eigen::MatrixXd& norm_v,
                        const Eigen::MatrixXd& norm_q);

} // namespace viscobeam
