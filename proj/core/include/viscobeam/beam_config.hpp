#pragma once

#include "viscobeam/fe_space.hpp"
#include "viscobeam/material.hpp"

#include <functional>
#include <vector>

namespace viscobeam {

enum class BoundaryCondition { clamped, simply_supported };

/// Transverse line load q(x, t) in N/m.
using LoadFunction = std::function<double(double x, double t)>;

/// Step load amplitude * H(t) with H(0) = 1 (creep convention).
LoadFunction heaviside_load(double amplitude);

/// Rectangular-section Timoshenko beam: geometry, material, load and the
/// thin-beam scaling derived from them. The scaled bending and shear
/// coefficients I_hat = I/eps^3 and A_hat = ks A/eps are spatial constants
/// here, and lambda = 2 (1 + nu) eps^2 is the shear penalty that vanishes
/// with the thickness.
struct BeamConfig {
    double length = 4.0;          // m
    double base = 0.08;           // m
    double thickness = 0.1;       // m
    double shear_correction = 5.0 / 6.0;
    PronyMaterial material;
    BoundaryCondition bc = BoundaryCondition::clamped;
    LoadFunction load;            // physical load, N/m
    double t_final = 10.0;        // s
    double dt = 2e-3;             // s

    BeamConfig(PronyMaterial m) : material(std::move(m)) {}

    void validate() const;

    double moment_of_inertia() const { return base * thickness * thickness * thickness / 12.0; }
    double area() const { return base * thickness; }
    double eps2() const { return thickness * thickness / (12.0 * length * length); }
    double eps() const;
    double lambda() const { return 2.0 * (1.0 + material.nu()) * eps2(); }
    double i_hat() const { return moment_of_inertia() / (eps() * eps() * eps()); }
    double a_hat() const { return shear_correction * area() / eps(); }

    /// Normalized load q_E(x, t) = (q(x, t) / eps^3) / E(0) entering the
    /// scaled formulation. x must lie in [0, L].
    double scaled_load(double x, double t) const;

    /// Copy with a different thickness (everything else unchanged).
    BeamConfig with_thickness(double d) const;
};

/// Constrained global dof indices for the transverse and rotation spaces.
struct BoundaryDofs {
    std::vector<int> w;
    std::vector<int> theta;
};

/// Clamped: both fields pinned at both ends. Simply supported: only the
/// transverse displacement is pinned. Spaces must be continuous and live
/// on the same mesh.
BoundaryDofs boundary_constraints(const BeamConfig& cfg, const FeSpace& v_w,
                                  const FeSpace& v_theta);

} // namespace viscobeam
