#include "viscobeam/reference.hpp"

#include <cmath>

namespace viscobeam {

namespace {

// Integral of the relaxation kernel against 1 - e^{-s} over [0, t]:
// each term contributes kappa [tau (1 - e^{-t/tau}) - (e^{-t} - e^{-t/tau}) / (1/tau - 1)]
// with kappa = -c / (tau E0); the tau = 1 resonance degenerates to t e^{-t}.
double kernel_convolution(const PronyMaterial& m, double t) {
    double total = 0.0;
    for (const PronyMaterial::Term& term : m.terms()) {
        const double kappa = -term.coeff / (term.tau * m.e0());
        const double decay = std::exp(-t / term.tau);
        double second;
        if (std::abs(1.0 / term.tau - 1.0) < 1e-12)
            second = t * std::exp(-t);
        else
            second = (std::exp(-t) - decay) / (1.0 / term.tau - 1.0);
        total += kappa * (term.tau * (1.0 - decay) - second);
    }
    return total;
}

} // namespace

AnalyticBeamSolution manufactured_sine_solution(const BeamConfig& base) {
    BeamConfig cfg = base;
    cfg.bc = BoundaryCondition::simply_supported;

    const double length = cfg.length;
    const double k = M_PI / length;
    const double i_hat = cfg.i_hat();
    const double a_hat = cfg.a_hat();
    const double lambda = cfg.lambda();
    const double c_theta = k / (1.0 + lambda * i_hat / a_hat * k * k);
    const double c_gamma = -i_hat * c_theta * k * k;

    const PronyMaterial material = cfg.material;
    auto profile = [](double t) { return 1.0 - std::exp(-t); };

    const double load_scale = cfg.eps() * cfg.eps() * cfg.eps() * material.e0();
    cfg.load = [=](double x, double t) {
        const double q_e = i_hat * c_theta * k * k * k * std::sin(k * x) *
                           (profile(t) - kernel_convolution(material, t));
        return q_e * load_scale;
    };

    AnalyticBeamSolution sol{
        [=](double x, double t) { return std::sin(k * x) * profile(t); },
        [=](double x, double t) { return c_theta * std::cos(k * x) * profile(t); },
        [=](double x, double t) { return c_gamma * std::cos(k * x) * profile(t); },
        [=](double x, double t) { return k * std::cos(k * x) * profile(t); },
        [=](double x, double t) { return -c_theta * k * std::sin(k * x) * profile(t); },
        cfg,
    };
    return sol;
}

double elastic_clamped_midspan(const BeamConfig& cfg, double load_amplitude) {
    const double e0 = cfg.material.e0();
    const double g0 = cfg.material.shear_modulus(0.0);
    const double bend = load_amplitude * std::pow(cfg.length, 4) /
                        (384.0 * e0 * cfg.moment_of_inertia());
    const double shear = load_amplitude * cfg.length * cfg.length /
                         (8.0 * cfg.shear_correction * g0 * cfg.area());
    return bend + shear;
}

} // namespace viscobeam
