#include "viscobeam/beam_config.hpp"

#include <cmath>
#include <stdexcept>

namespace viscobeam {

LoadFunction heaviside_load(double amplitude) {
    return [amplitude](double, double t) { return t >= 0.0 ? amplitude : 0.0; };
}

void BeamConfig::validate() const {
    if (!(length > 0.0) || !(base > 0.0) || !(thickness > 0.0))
        throw std::invalid_argument("BeamConfig: geometry must be positive");
    if (!(shear_correction > 0.0))
        throw std::invalid_argument("BeamConfig: shear correction must be positive");
    if (!(t_final >= 0.0) || !(dt > 0.0))
        throw std::invalid_argument("BeamConfig: bad time window");
    if (!load) throw std::invalid_argument("BeamConfig: no load set");
}

double BeamConfig::eps() const { return std::sqrt(eps2()); }

double BeamConfig::scaled_load(double x, double t) const {
    if (x < 0.0 || x > length)
        throw std::invalid_argument("scaled_load: coordinate outside the beam");
    const double e3 = eps() * eps() * eps();
    return load(x, t) / (e3 * material.e0());
}

BeamConfig BeamConfig::with_thickness(double d) const {
    BeamConfig copy = *this;
    copy.thickness = d;
    return copy;
}

BoundaryDofs boundary_constraints(const BeamConfig& cfg, const FeSpace& v_w,
                                  const FeSpace& v_theta) {
    if (v_w.continuity() != Continuity::c0 || v_theta.continuity() != Continuity::c0)
        throw std::invalid_argument("boundary_constraints: fields need continuous spaces");
    BoundaryDofs dofs;
    dofs.w = {0, v_w.n_dofs() - 1};
    switch (cfg.bc) {
    case BoundaryCondition::clamped:
        dofs.theta = {0, v_theta.n_dofs() - 1};
        break;
    case BoundaryCondition::simply_supported:
        break;
    default:
        throw std::invalid_argument("boundary_constraints: unknown boundary condition");
    }
    return dofs;
}

} // namespace viscobeam
