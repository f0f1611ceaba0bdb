#include "viscobeam/volterra_stepper.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace viscobeam {

std::vector<double> trapezoid_weights(int n, double dt) {
    if (n < 0) throw std::invalid_argument("trapezoid_weights: negative step index");
    if (n == 0) return {0.0};
    std::vector<double> w(static_cast<std::size_t>(n) + 1, dt);
    w.front() = dt / 2.0;
    w.back() = dt / 2.0;
    return w;
}

HistoryAccumulator::HistoryAccumulator(const PronyMaterial& material, double dt, int size,
                                       HistoryMode mode)
    : material_(&material), dt_(dt), size_(size), mode_(mode) {
    if (mode_ == HistoryMode::exponential_recursion) {
        accumulators_.assign(material.terms().size(), Eigen::VectorXd::Zero(size));
        head_decay_.assign(material.terms().size(), 1.0);
    }
}

Eigen::VectorXd HistoryAccumulator::weighted_sum(int n) const {
    Eigen::VectorXd h = Eigen::VectorXd::Zero(size_);
    if (n == 0 || material_->is_elastic()) return h;
    if (mode_ == HistoryMode::direct_sum) {
        const double tn = n * dt_;
        const std::vector<double> w = trapezoid_weights(n, dt_);
        for (int j = 0; j < n; ++j)
            h += w[static_cast<std::size_t>(j)] * material_->kernel(tn, j * dt_) *
                 stored_[static_cast<std::size_t>(j)];
        return h;
    }
    const auto& terms = material_->terms();
    const double e0 = material_->e0();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double k0 = -terms[i].coeff / (terms[i].tau * e0);
        h += k0 * (dt_ / 2.0 * head_decay_[i] * y0_ + dt_ * accumulators_[i]);
    }
    return h;
}

void HistoryAccumulator::push(const Eigen::VectorXd& y) {
    if (mode_ == HistoryMode::direct_sum) {
        stored_.push_back(y);
        ++pushed_;
        return;
    }
    const auto& terms = material_->terms();
    if (pushed_ == 0) {
        y0_ = y;
        for (std::size_t i = 0; i < terms.size(); ++i)
            head_decay_[i] = std::exp(-dt_ / terms[i].tau);
    } else {
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const double decay = std::exp(-dt_ / terms[i].tau);
            accumulators_[i] = decay * (accumulators_[i] + y);
            head_decay_[i] *= decay;
        }
    }
    ++pushed_;
}

namespace {

int checked_step_count(const BeamConfig& cfg) {
    const double steps = cfg.t_final / cfg.dt;
    const int n = static_cast<int>(std::llround(steps));
    if (n < 0 || std::abs(steps - n) > 1e-9 * std::max(1.0, steps))
        throw std::invalid_argument("stepper: t_final must be an integral number of steps");
    return n;
}

double scaling_factor(const PronyMaterial& m, double dt) {
    if (m.is_elastic()) return 1.0;
    const double k_diag = m.kernel(1.0, 1.0); // relaxation kernels are stationary
    if (!(k_diag <= 0.0))
        throw NumericalError("stepper: kernel at coincidence must be nonpositive");
    return 1.0 - dt / 2.0 * k_diag;
}

double solve_and_check(const linalg::Factorization& factor,
                       const Eigen::SparseMatrix<double>& matrix, const Eigen::VectorXd& rhs,
                       Eigen::VectorXd& x, int step) {
    x = factor.solve(rhs);
    const double denom = std::max(rhs.norm(), 1e-300);
    const double residual = (matrix * x - rhs).norm() / denom;
    if (!std::isfinite(residual) || residual > 1e-6)
        throw NumericalError("stepper: step " + std::to_string(step) +
                             " solve failed, relative residual " + std::to_string(residual));
    return residual;
}

} // namespace

MixedStepper::MixedStepper(DiscreteOperators ops, PronyMaterial material, const BeamConfig& cfg,
                           HistoryMode mode)
    : ops_(std::move(ops)), material_(std::move(material)), dt_(cfg.dt),
      n_steps_(checked_step_count(cfg)), mode_(mode),
      history_(material_, dt_, ops_.layout.n_u(), mode) {
    const int nu = ops_.layout.n_u();
    const int ng = ops_.layout.n_gamma;
    const double sigma = scaling_factor(material_, dt_);

    auto build = [&](double s) {
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(ops_.a_bend.nonZeros() +
                                              2 * ops_.b_shear.nonZeros() +
                                              ops_.c_gamma.nonZeros()));
        for (int k = 0; k < ops_.a_bend.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(ops_.a_bend, k); it; ++it)
                trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                  s * it.value());
        for (int k = 0; k < ops_.b_shear.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(ops_.b_shear, k); it; ++it) {
                trip.emplace_back(static_cast<int>(it.row()) + nu, static_cast<int>(it.col()),
                                  it.value());
                trip.emplace_back(static_cast<int>(it.col()), static_cast<int>(it.row()) + nu,
                                  s * it.value());
            }
        for (int k = 0; k < ops_.c_gamma.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(ops_.c_gamma, k); it; ++it)
                trip.emplace_back(static_cast<int>(it.row()) + nu, static_cast<int>(it.col()) + nu,
                                  -it.value());
        Eigen::SparseMatrix<double> m(nu + ng, nu + ng);
        m.setFromTriplets(trip.begin(), trip.end());
        return m;
    };

    saddle_plain_ = build(1.0);
    factor_plain_ = linalg::factorize(saddle_plain_);
    if (sigma != 1.0) {
        saddle_scaled_ = build(sigma);
        factor_scaled_ = linalg::factorize(saddle_scaled_);
    }
}

void MixedStepper::advance() {
    const int n = step_ + 1;
    if (n > n_steps_) throw std::logic_error("MixedStepper: past the final time");
    const int nu = ops_.layout.n_u();
    const int ng = ops_.layout.n_gamma;

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nu + ng);
    rhs.head(nu) = ops_.load_vector(n * dt_);
    if (n > 0) rhs.head(nu) += history_.weighted_sum(n);

    const bool scaled = n > 0 && factor_scaled_ != nullptr;
    Eigen::VectorXd sol;
    residual_ = solve_and_check(scaled ? *factor_scaled_ : *factor_plain_,
                                scaled ? saddle_scaled_ : saddle_plain_, rhs, sol, n);
    u_ = sol.head(nu);
    gamma_ = sol.tail(ng);
    history_.push(ops_.a_bend * u_ + ops_.b_shear.transpose() * gamma_);
    step_ = n;
}

PrimalStepper::PrimalStepper(PrimalOperators ops, PronyMaterial material, const BeamConfig& cfg,
                             HistoryMode mode)
    : ops_(std::move(ops)), material_(std::move(material)), dt_(cfg.dt),
      n_steps_(checked_step_count(cfg)),
      history_(material_, dt_, ops_.layout.n_u(), mode) {
    stiffness_ = ops_.k_bend + ops_.k_shear;
    factor_plain_ = linalg::factorize(stiffness_);
    const double sigma = scaling_factor(material_, dt_);
    if (sigma != 1.0) {
        stiffness_scaled_ = stiffness_ * sigma;
        factor_scaled_ = linalg::factorize(stiffness_scaled_);
    }
}

void PrimalStepper::advance() {
    const int n = step_ + 1;
    if (n > n_steps_) throw std::logic_error("PrimalStepper: past the final time");
    Eigen::VectorXd rhs = ops_.load_vector(n * dt_);
    if (n > 0) rhs += history_.weighted_sum(n);

    const bool scaled = n > 0 && factor_scaled_ != nullptr;
    Eigen::VectorXd sol;
    residual_ = solve_and_check(scaled ? *factor_scaled_ : *factor_plain_,
                                scaled ? stiffness_scaled_ : stiffness_, rhs, sol, n);
    u_ = sol;
    history_.push(stiffness_ * u_);
    step_ = n;
}

CoeffVec PrimalStepper::current_gamma_coeffs(const SpacePtr& q_space) const {
    const CoeffVec w = current_w_coeffs();
    const CoeffVec theta = current_theta_coeffs();
    const double coef = ops_.shear_coefficient;
    const int deg = std::max(ops_.v_theta->degree(), q_space->degree() + 1);
    return l2_project(
        q_space,
        [&](double x) { return coef * (eval(theta, x) - eval_deriv(w, x)); },
        gauss_rule(deg + 1));
}

namespace {

template <class Stepper>
void collect(SolutionHistory& hist, const Stepper& stepper, double t) {
    hist.times.push_back(t);
    hist.w.push_back(stepper.current_w_coeffs());
    hist.theta.push_back(stepper.current_theta_coeffs());
}

} // namespace

SolutionHistory solve_quasi_static(DiscreteOperators ops, const PronyMaterial& material,
                                   const BeamConfig& cfg, HistoryMode mode) {
    MixedStepper stepper(std::move(ops), material, cfg, mode);
    SolutionHistory hist;
    for (int n = 0; n <= stepper.step_count(); ++n) {
        stepper.advance();
        collect(hist, stepper, n * cfg.dt);
        hist.gamma.push_back(stepper.current_gamma_coeffs());
    }
    return hist;
}

SolutionHistory solve_primal(PrimalOperators ops, const PronyMaterial& material,
                             const BeamConfig& cfg, const SpacePtr& q_space, HistoryMode mode) {
    PrimalStepper stepper(std::move(ops), material, cfg, mode);
    SolutionHistory hist;
    for (int n = 0; n <= stepper.step_count(); ++n) {
        stepper.advance();
        collect(hist, stepper, n * cfg.dt);
        hist.gamma.push_back(stepper.current_gamma_coeffs(q_space));
    }
    return hist;
}

void SolutionHistory::write_csv(const std::string& path, int x_samples) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << "t,x,w,theta,gamma\n";
    char buf[160];
    for (std::size_t n = 0; n < times.size(); ++n) {
        const double length = w[n].space->mesh().length();
        for (int i = 0; i <= x_samples; ++i) {
            const double x = length * i / x_samples;
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", times[n], x,
                          eval(w[n], x), eval(theta[n], x), eval(gamma[n], x));
            out << buf;
        }
    }
}

} // namespace viscobeam
