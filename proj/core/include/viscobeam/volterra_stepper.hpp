#pragma once

#include "viscobeam/assembly.hpp"
#include "viscobeam/beam_config.hpp"
#include "viscobeam/linalg.hpp"
#include "viscobeam/material.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace viscobeam {

/// Composite trapezoidal weights for the integral over [0, t_n] on a
/// uniform grid: dt/2 at the endpoints, dt inside; a single zero for n = 0.
std::vector<double> trapezoid_weights(int n, double dt);

enum class HistoryMode {
    direct_sum,            // reference semantics, O(N^2) in the step count
    exponential_recursion, // one accumulator per relaxation term, O(N)
};

/// Weighted history sums  H_n = sum_{j<n} w_j k(t_n, t_j) y_j  for the
/// exponential relaxation kernel. The current-time endpoint j = n is not
/// included here; the stepper moves it to the left-hand side.
class HistoryAccumulator {
public:
    HistoryAccumulator(const PronyMaterial& material, double dt, int size, HistoryMode mode);

    Eigen::VectorXd weighted_sum(int n) const;
    void push(const Eigen::VectorXd& y);

private:
    const PronyMaterial* material_;
    double dt_;
    int size_;
    HistoryMode mode_;
    std::vector<Eigen::VectorXd> stored_;          // direct mode
    std::vector<Eigen::VectorXd> accumulators_;    // recursive mode, per term
    std::vector<double> head_decay_;               // e^{-t_n / tau_i}
    Eigen::VectorXd y0_;
    int pushed_ = 0;
};

/// Per-step coefficient history of one quasi-static solve.
struct SolutionHistory {
    std::vector<double> times;
    std::vector<CoeffVec> w;
    std::vector<CoeffVec> theta;
    std::vector<CoeffVec> gamma;

    /// CSV with columns t,x,w,theta,gamma on a uniform x-sampling grid.
    void write_csv(const std::string& path, int x_samples = 40) const;
};

/// Marches the mixed system in time. Each step solves
///   [ s A  s B^T ] [u]   [ F(t_n) + H_n ]        s = 1 - (dt/2) k(t_n, t_n)
///   [  B    -C   ] [g] = [      0       ]
/// where H_n is the trapezoidal history sum over previous states; the
/// second equation carries no memory and is enforced exactly every step.
/// The diagonal kernel value is constant for relaxation kernels, so one
/// factorization serves every step past the first.
class MixedStepper {
public:
    MixedStepper(DiscreteOperators ops, PronyMaterial material, const BeamConfig& cfg,
                 HistoryMode mode = HistoryMode::exponential_recursion);

    int step_count() const { return n_steps_; }
    int current_step() const { return step_; }
    double dt() const { return dt_; }
    double current_time() const { return step_ * dt_; }
    const DiscreteOperators& ops() const { return ops_; }

    void advance();
    double last_residual() const { return residual_; }

    const Eigen::VectorXd& current_u() const { return u_; }
    const Eigen::VectorXd& current_gamma() const { return gamma_; }
    CoeffVec current_w_coeffs() const { return ops_.expand_w(u_); }
    CoeffVec current_theta_coeffs() const { return ops_.expand_theta(u_); }
    CoeffVec current_gamma_coeffs() const { return ops_.expand_gamma(gamma_); }

private:
    DiscreteOperators ops_;
    PronyMaterial material_;
    double dt_;
    int n_steps_;
    HistoryMode mode_;
    Eigen::SparseMatrix<double> saddle_plain_, saddle_scaled_;
    std::unique_ptr<linalg::Factorization> factor_plain_, factor_scaled_;
    HistoryAccumulator history_;
    Eigen::VectorXd u_, gamma_;
    int step_ = -1;
    double residual_ = 0.0;
};

/// Same time marching for the irreducible formulation; the whole stiffness
/// (bending plus shear) carries the memory.
class PrimalStepper {
public:
    PrimalStepper(PrimalOperators ops, PronyMaterial material, const BeamConfig& cfg,
                  HistoryMode mode = HistoryMode::exponential_recursion);

    int step_count() const { return n_steps_; }
    int current_step() const { return step_; }
    double dt() const { return dt_; }
    const PrimalOperators& ops() const { return ops_; }

    void advance();
    double last_residual() const { return residual_; }

    const Eigen::VectorXd& current_u() const { return u_; }
    CoeffVec current_w_coeffs() const { return ops_.expand_w(u_); }
    CoeffVec current_theta_coeffs() const { return ops_.expand_theta(u_); }
    /// Shear recovered elementwise: L2 projection of
    /// shear_coefficient * (theta - w') onto the given discontinuous space.
    CoeffVec current_gamma_coeffs(const SpacePtr& q_space) const;

private:
    PrimalOperators ops_;
    PronyMaterial material_;
    double dt_;
    int n_steps_;
    Eigen::SparseMatrix<double> stiffness_, stiffness_scaled_;
    std::unique_ptr<linalg::Factorization> factor_plain_, factor_scaled_;
    HistoryAccumulator history_;
    Eigen::VectorXd u_;
    int step_ = -1;
    double residual_ = 0.0;
};

SolutionHistory solve_quasi_static(DiscreteOperators ops, const PronyMaterial& material,
                                   const BeamConfig& cfg,
                                   HistoryMode mode = HistoryMode::exponential_recursion);

SolutionHistory solve_primal(PrimalOperators ops, const PronyMaterial& material,
                             const BeamConfig& cfg, const SpacePtr& q_space,
                             HistoryMode mode = HistoryMode::exponential_recursion);

} // namespace viscobeam
