#pragma once

#include "viscobeam/fe_space.hpp"

#include <optional>
#include <vector>

namespace viscobeam {

enum class NormKind { l2, h1 };

/// Norm of the difference of two FE functions. The meshes must be nested;
/// the difference is integrated exactly with a Gauss rule on the finer
/// mesh. Passing the same function twice gives zero.
double spatial_norm_diff(const CoeffVec& a, const CoeffVec& b, NormKind kind);

/// Norm of a single FE function (difference against zero).
double spatial_norm(const CoeffVec& a, NormKind kind);

/// Composite trapezoid of a uniformly sampled scalar time series.
double time_accumulate(const std::vector<double>& values, double dt);

/// log(e / e_prev) / log(h / h_prev); requires positive errors and h != h_prev.
double convergence_rate(double e, double e_prev, double h, double h_prev);

/// Space-time errors of one table row. e0 and e1 are L1-in-time norms of
/// the L2 / full-H1 spatial error, reported relative to the reference
/// solution's own norm; the shear field carries e0 only. Rates are defined
/// once a coarser row exists (NaN before that).
struct FieldErrors {
    double e0 = 0.0;
    double e1 = 0.0;
    double r0 = std::numeric_limits<double>::quiet_NaN();
    double r1 = std::numeric_limits<double>::quiet_NaN();
};

struct ErrorReport {
    int dof = 0; // all nodal dofs of the displacement pair, boundary included
    double h = 0.0;
    FieldErrors w;
    FieldErrors theta;
    double gamma_e0 = 0.0;
    double gamma_r0 = std::numeric_limits<double>::quiet_NaN();
};

/// Fill the rate columns of consecutive rows (rows ordered coarse to fine).
void attach_rates(std::vector<ErrorReport>& rows);

} // namespace viscobeam
