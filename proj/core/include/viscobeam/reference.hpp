#pragma once

#include "viscobeam/beam_config.hpp"

#include <functional>

namespace viscobeam {

enum class ReferenceStrategy { overkill, manufactured, elastic_analytic };

/// Closed-form space-time fields together with the configuration whose load
/// drives the solver toward them.
struct AnalyticBeamSolution {
    std::function<double(double, double)> w;
    std::function<double(double, double)> theta;
    std::function<double(double, double)> gamma;
    std::function<double(double, double)> w_x;
    std::function<double(double, double)> theta_x;
    BeamConfig config;
};

/// Manufactured simply supported solution
///   w(x, t) = sin(pi x / L) (1 - e^{-t}),
/// with the rotation and shear chosen so the strong equations hold exactly;
/// the required load uses the closed-form convolution of the relaxation
/// kernel against 1 - e^{-t}. The base configuration supplies geometry,
/// material and the time window; its boundary condition is overridden.
AnalyticBeamSolution manufactured_sine_solution(const BeamConfig& base);

/// Midspan deflection of the elastic clamped beam under a uniform load:
/// bending term q L^4 / (384 E I) plus shear term q L^2 / (8 ks G A).
double elastic_clamped_midspan(const BeamConfig& cfg, double load_amplitude);

} // namespace viscobeam
