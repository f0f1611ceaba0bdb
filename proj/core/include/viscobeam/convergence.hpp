#pragma once

#include "viscobeam/beam_config.hpp"
#include "viscobeam/norms.hpp"
#include "viscobeam/reference.hpp"

#include <string>
#include <vector>

namespace viscobeam {

enum class Scheme { mixed, primal_exact, primal_reduced };

/// One mesh-refinement study: a ladder of uniform meshes, one error table
/// per thickness. Errors are measured against either a nested overkill
/// solve (mixed, higher order, same time step) or a manufactured solution.
struct StudySpec {
    BeamConfig base;
    int element_order = 1;
    Scheme scheme = Scheme::mixed;
    std::vector<int> ladder = {20, 40, 80, 100, 120, 140};
    std::vector<double> thicknesses = {1e-1, 1e-2, 1e-3};
    ReferenceStrategy reference = ReferenceStrategy::overkill;
    int overkill_factor = 8; // reference mesh at least this times the finest ladder entry
    int reference_order = 2;

    StudySpec(BeamConfig b) : base(std::move(b)) {}
};

struct ThicknessTable {
    double thickness = 0.0;
    std::vector<ErrorReport> rows;
};

/// Smallest multiple of n reaching `factor` times the finest ladder entry;
/// deciding the reference mesh keeps every study mesh nested inside it.
int overkill_elements(int n, const std::vector<int>& ladder, int factor);

std::vector<ThicknessTable> run_convergence_study(const StudySpec& spec, int threads = 0);

/// Temporal self-convergence on one fixed mesh: deviations of the mixed
/// solution from a dt/8 reference at steps dt and dt/2, in the L1-in-time
/// L2 norm of the transverse displacement.
struct TimeOrderCheck {
    double deviation_dt = 0.0;
    double deviation_half = 0.0;
    double ratio = 0.0;
};
TimeOrderCheck time_order_study(const BeamConfig& cfg, int element_order, int n_elements);

} // namespace viscobeam
