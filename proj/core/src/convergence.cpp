#include "viscobeam/convergence.hpp"

#include "viscobeam/assembly.hpp"
#include "viscobeam/parallel.hpp"
#include "viscobeam/volterra_stepper.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

namespace viscobeam {

int overkill_elements(int n, const std::vector<int>& ladder, int factor) {
    if (ladder.empty()) throw std::invalid_argument("overkill_elements: empty ladder");
    const int finest = *std::max_element(ladder.begin(), ladder.end());
    const int target = factor * finest;
    return n * ((target + n - 1) / n);
}

namespace {

// ---------------------------------------------------------------- solvers

struct BeamSolver {
    virtual ~BeamSolver() = default;
    virtual void advance() = 0;
    virtual CoeffVec w() const = 0;
    virtual CoeffVec theta() const = 0;
    virtual CoeffVec gamma() const = 0;
};

struct MixedAdapter final : BeamSolver {
    MixedStepper stepper;
    explicit MixedAdapter(MixedStepper s) : stepper(std::move(s)) {}
    void advance() override { stepper.advance(); }
    CoeffVec w() const override { return stepper.current_w_coeffs(); }
    CoeffVec theta() const override { return stepper.current_theta_coeffs(); }
    CoeffVec gamma() const override { return stepper.current_gamma_coeffs(); }
};

struct PrimalAdapter final : BeamSolver {
    PrimalStepper stepper;
    SpacePtr q_space;
    PrimalAdapter(PrimalStepper s, SpacePtr q) : stepper(std::move(s)), q_space(std::move(q)) {}
    void advance() override { stepper.advance(); }
    CoeffVec w() const override { return stepper.current_w_coeffs(); }
    CoeffVec theta() const override { return stepper.current_theta_coeffs(); }
    CoeffVec gamma() const override { return stepper.current_gamma_coeffs(q_space); }
};

std::unique_ptr<BeamSolver> make_solver(const BeamConfig& cfg, int n_elements, int order,
                                        Scheme scheme) {
    auto mesh = std::make_shared<Mesh1D>(Mesh1D::uniform(cfg.length, n_elements));
    auto v = std::make_shared<FeSpace>(mesh, order, Continuity::c0);
    auto q = std::make_shared<FeSpace>(mesh, order - 1, Continuity::discontinuous);
    switch (scheme) {
    case Scheme::mixed: {
        DiscreteOperators ops = assemble(cfg, v, v, q, gauss_rule(order + 1));
        return std::make_unique<MixedAdapter>(MixedStepper(std::move(ops), cfg.material, cfg));
    }
    case Scheme::primal_exact: {
        PrimalOperators ops =
            assemble_primal(cfg, v, v, gauss_rule(order + 1), gauss_rule(order + 1));
        return std::make_unique<PrimalAdapter>(PrimalStepper(std::move(ops), cfg.material, cfg),
                                               q);
    }
    case Scheme::primal_reduced: {
        PrimalOperators ops = assemble_primal(cfg, v, v, gauss_rule(order + 1), gauss_rule(order));
        return std::make_unique<PrimalAdapter>(PrimalStepper(std::move(ops), cfg.material, cfg),
                                               q);
    }
    }
    throw std::invalid_argument("make_solver: unknown scheme");
}

// ----------------------------------------------- evaluation on ref points

// Basis tables of one (uniform-mesh) space at the quadrature points of a
// nested reference mesh; the point pattern repeats with period
// ratio = n_ref / n, so only `ratio` blocks are tabulated.
struct EvalTable {
    const FeSpace* space = nullptr;
    int ratio = 1;
    int nq = 0;
    std::vector<Eigen::MatrixXd> val; // ratio blocks of (nq x m)
    std::vector<Eigen::MatrixXd> der; // physical derivative included
};

EvalTable make_eval_table(const FeSpace& space, int n_ref, const QuadratureRule& quad) {
    const int n_s = space.mesh().element_count();
    if (n_ref % n_s != 0)
        throw std::invalid_argument("make_eval_table: reference mesh is not nested");
    EvalTable t;
    t.space = &space;
    t.ratio = n_ref / n_s;
    t.nq = static_cast<int>(quad.points.size());
    const int m = space.dofs_per_element();
    const double h_s = space.mesh().element_length(0);
    double buf[8];
    for (int o = 0; o < t.ratio; ++o) {
        Eigen::MatrixXd v(t.nq, m), d(t.nq, m);
        for (int q = 0; q < t.nq; ++q) {
            const double frac = (o + (quad.points[static_cast<std::size_t>(q)] + 1.0) / 2.0) /
                                t.ratio;
            const double xi = 2.0 * frac - 1.0;
            space.shape_values(xi, buf);
            for (int i = 0; i < m; ++i) v(q, i) = buf[i];
            space.shape_derivatives(xi, buf);
            for (int i = 0; i < m; ++i) d(q, i) = buf[i] * 2.0 / h_s;
        }
        t.val.push_back(std::move(v));
        t.der.push_back(std::move(d));
    }
    return t;
}

void evaluate_field(const EvalTable& t, const Eigen::VectorXd& coeffs, Eigen::ArrayXd& values,
                    Eigen::ArrayXd& derivs) {
    const FeSpace& sp = *t.space;
    const int n_s = sp.mesh().element_count();
    const int m = sp.dofs_per_element();
    Eigen::VectorXd local(m);
    for (int es = 0; es < n_s; ++es) {
        for (int i = 0; i < m; ++i) local[i] = coeffs[sp.global_dof(es, i)];
        for (int o = 0; o < t.ratio; ++o) {
            const int base = (es * t.ratio + o) * t.nq;
            values.segment(base, t.nq) = (t.val[static_cast<std::size_t>(o)] * local).array();
            derivs.segment(base, t.nq) = (t.der[static_cast<std::size_t>(o)] * local).array();
        }
    }
}

struct FlatField {
    Eigen::ArrayXd val, der;
    void resize(int n) {
        val.resize(n);
        der.resize(n);
    }
};

// ------------------------------------------------------------ accumulators

struct NormSeries {
    std::vector<double> w_l2, w_h1, t_l2, t_h1, g_l2;
    void reserve(int n) {
        w_l2.reserve(n); w_h1.reserve(n); t_l2.reserve(n); t_h1.reserve(n); g_l2.reserve(n);
    }
};

void push_norms(NormSeries& s, const Eigen::ArrayXd& weights, const FlatField& w,
                const FlatField& theta, const Eigen::ArrayXd& gamma_val) {
    const double w_l2 = (weights * w.val.square()).sum();
    const double w_d = (weights * w.der.square()).sum();
    const double t_l2 = (weights * theta.val.square()).sum();
    const double t_d = (weights * theta.der.square()).sum();
    const double g_l2 = (weights * gamma_val.square()).sum();
    s.w_l2.push_back(std::sqrt(w_l2));
    s.w_h1.push_back(std::sqrt(w_l2 + w_d));
    s.t_l2.push_back(std::sqrt(t_l2));
    s.t_h1.push_back(std::sqrt(t_l2 + t_d));
    s.g_l2.push_back(std::sqrt(g_l2));
}

ErrorReport finish_row(int n_elements, int order, double length, double dt,
                       const NormSeries& num, const NormSeries& den) {
    ErrorReport row;
    row.dof = 2 * (order * n_elements + 1);
    row.h = length / n_elements;
    auto rel = [&](const std::vector<double>& a, const std::vector<double>& b) {
        const double db = time_accumulate(b, dt);
        return db > 0.0 ? time_accumulate(a, dt) / db : time_accumulate(a, dt);
    };
    row.w.e0 = rel(num.w_l2, den.w_l2);
    row.w.e1 = rel(num.w_h1, den.w_h1);
    row.theta.e0 = rel(num.t_l2, den.t_l2);
    row.theta.e1 = rel(num.t_h1, den.t_h1);
    row.gamma_e0 = rel(num.g_l2, den.g_l2);
    return row;
}

// ------------------------------------------------- overkill reference path

struct RefBundle {
    int n_ref = 0;
    std::unique_ptr<BeamSolver> solver;
    Eigen::ArrayXd weights; // flattened quadrature weights with jacobian
    QuadratureRule quad;
    EvalTable tab_v, tab_q; // displacement pair and shear space on own mesh
    FlatField w, theta;
    Eigen::ArrayXd gamma_val;
    NormSeries den;
};

struct StudyBundle {
    int n = 0;
    RefBundle* ref = nullptr;
    std::unique_ptr<BeamSolver> solver;
    EvalTable tab_v, tab_q;
    FlatField w, theta;
    Eigen::ArrayXd gamma_val, gamma_der_scratch;
    NormSeries num;
};

ThicknessTable run_thickness_overkill(const StudySpec& spec, double d) {
    BeamConfig cfg = spec.base.with_thickness(d);
    cfg.validate();
    const int n_steps = static_cast<int>(std::llround(cfg.t_final / cfg.dt));

    // one reference per distinct nested overkill mesh
    std::map<int, std::unique_ptr<RefBundle>> refs;
    for (int n : spec.ladder) {
        const int n_ref = overkill_elements(n, spec.ladder, spec.overkill_factor);
        if (refs.count(n_ref)) continue;
        auto ref = std::make_unique<RefBundle>();
        ref->n_ref = n_ref;
        ref->solver = make_solver(cfg, n_ref, spec.reference_order, Scheme::mixed);
        const int max_deg = std::max(spec.reference_order, spec.element_order);
        ref->quad = gauss_rule(max_deg + 1);
        const int nq = static_cast<int>(ref->quad.points.size());
        const double h_ref = cfg.length / n_ref;
        ref->weights.resize(n_ref * nq);
        for (int e = 0; e < n_ref; ++e)
            for (int q = 0; q < nq; ++q)
                ref->weights[e * nq + q] = ref->quad.weights[static_cast<std::size_t>(q)] *
                                           h_ref / 2.0;
        const FeSpace& v = *ref->solver->w().space;
        const FeSpace& qs = *ref->solver->gamma().space;
        ref->tab_v = make_eval_table(v, n_ref, ref->quad);
        ref->tab_q = make_eval_table(qs, n_ref, ref->quad);
        ref->w.resize(n_ref * nq);
        ref->theta.resize(n_ref * nq);
        ref->gamma_val.resize(n_ref * nq);
        ref->den.reserve(n_steps + 1);
        refs.emplace(n_ref, std::move(ref));
    }

    std::vector<StudyBundle> studies;
    for (int n : spec.ladder) {
        StudyBundle st;
        st.n = n;
        st.ref = refs.at(overkill_elements(n, spec.ladder, spec.overkill_factor)).get();
        st.solver = make_solver(cfg, n, spec.element_order, spec.scheme);
        st.tab_v = make_eval_table(*st.solver->w().space, st.ref->n_ref, st.ref->quad);
        st.tab_q = make_eval_table(*st.solver->gamma().space, st.ref->n_ref, st.ref->quad);
        const int npts = static_cast<int>(st.ref->weights.size());
        st.w.resize(npts);
        st.theta.resize(npts);
        st.gamma_val.resize(npts);
        st.gamma_der_scratch.resize(npts);
        st.num.reserve(n_steps + 1);
        studies.push_back(std::move(st));
    }

    for (int step = 0; step <= n_steps; ++step) {
        for (auto& [n_ref, ref] : refs) {
            ref->solver->advance();
            evaluate_field(ref->tab_v, ref->solver->w().values, ref->w.val, ref->w.der);
            evaluate_field(ref->tab_v, ref->solver->theta().values, ref->theta.val,
                           ref->theta.der);
            Eigen::ArrayXd gder(ref->gamma_val.size());
            evaluate_field(ref->tab_q, ref->solver->gamma().values, ref->gamma_val, gder);
            push_norms(ref->den, ref->weights, ref->w, ref->theta, ref->gamma_val);
        }
        for (StudyBundle& st : studies) {
            st.solver->advance();
            evaluate_field(st.tab_v, st.solver->w().values, st.w.val, st.w.der);
            evaluate_field(st.tab_v, st.solver->theta().values, st.theta.val, st.theta.der);
            evaluate_field(st.tab_q, st.solver->gamma().values, st.gamma_val,
                           st.gamma_der_scratch);
            FlatField dw, dtheta;
            dw.val = st.w.val - st.ref->w.val;
            dw.der = st.w.der - st.ref->w.der;
            dtheta.val = st.theta.val - st.ref->theta.val;
            dtheta.der = st.theta.der - st.ref->theta.der;
            Eigen::ArrayXd dgamma = st.gamma_val - st.ref->gamma_val;
            push_norms(st.num, st.ref->weights, dw, dtheta, dgamma);
        }
    }

    ThicknessTable table;
    table.thickness = d;
    for (StudyBundle& st : studies)
        table.rows.push_back(finish_row(st.n, spec.element_order, cfg.length, cfg.dt, st.num,
                                        st.ref->den));
    attach_rates(table.rows);
    return table;
}

// -------------------------------------------------- manufactured reference

ThicknessTable run_thickness_manufactured(const StudySpec& spec, double d) {
    BeamConfig cfg = spec.base.with_thickness(d);
    const AnalyticBeamSolution sol = manufactured_sine_solution(cfg);
    const BeamConfig& run_cfg = sol.config;
    run_cfg.validate();
    const int n_steps = static_cast<int>(std::llround(run_cfg.t_final / run_cfg.dt));
    const QuadratureRule quad = gauss_rule(6);
    const int nq = static_cast<int>(quad.points.size());

    ThicknessTable table;
    table.thickness = d;
    for (int n : spec.ladder) {
        auto solver = make_solver(run_cfg, n, spec.element_order, spec.scheme);
        const double h = run_cfg.length / n;
        NormSeries num, den;
        num.reserve(n_steps + 1);
        den.reserve(n_steps + 1);
        Eigen::ArrayXd weights(n * nq);
        std::vector<double> xs(static_cast<std::size_t>(n * nq));
        for (int e = 0; e < n; ++e)
            for (int q = 0; q < nq; ++q) {
                weights[e * nq + q] = quad.weights[static_cast<std::size_t>(q)] * h / 2.0;
                xs[static_cast<std::size_t>(e * nq + q)] =
                    e * h + h * (quad.points[static_cast<std::size_t>(q)] + 1.0) / 2.0;
            }

        FlatField w_h, t_h, w_ex, t_ex, dw, dt_;
        const int npts = n * nq;
        w_h.resize(npts); t_h.resize(npts); w_ex.resize(npts); t_ex.resize(npts);
        Eigen::ArrayXd g_h(npts), g_ex(npts), g_scratch(npts);
        EvalTable tab_v = make_eval_table(*solver->w().space, n, quad);
        EvalTable tab_q = make_eval_table(*solver->gamma().space, n, quad);

        for (int step = 0; step <= n_steps; ++step) {
            const double t = step * run_cfg.dt;
            solver->advance();
            evaluate_field(tab_v, solver->w().values, w_h.val, w_h.der);
            evaluate_field(tab_v, solver->theta().values, t_h.val, t_h.der);
            evaluate_field(tab_q, solver->gamma().values, g_h, g_scratch);
            for (int i = 0; i < npts; ++i) {
                const double x = xs[static_cast<std::size_t>(i)];
                w_ex.val[i] = sol.w(x, t);
                w_ex.der[i] = sol.w_x(x, t);
                t_ex.val[i] = sol.theta(x, t);
                t_ex.der[i] = sol.theta_x(x, t);
                g_ex[i] = sol.gamma(x, t);
            }
            dw.val = w_h.val - w_ex.val;
            dw.der = w_h.der - w_ex.der;
            dt_.val = t_h.val - t_ex.val;
            dt_.der = t_h.der - t_ex.der;
            Eigen::ArrayXd dg = g_h - g_ex;
            push_norms(num, weights, dw, dt_, dg);
            push_norms(den, weights, w_ex, t_ex, g_ex);
        }
        table.rows.push_back(
            finish_row(n, spec.element_order, run_cfg.length, run_cfg.dt, num, den));
    }
    attach_rates(table.rows);
    return table;
}

} // namespace

std::vector<ThicknessTable> run_convergence_study(const StudySpec& spec, int threads) {
    if (spec.ladder.size() < 2)
        throw std::invalid_argument("run_convergence_study: need at least two meshes");
    for (std::size_t i = 1; i < spec.ladder.size(); ++i)
        if (spec.ladder[i] <= spec.ladder[i - 1])
            throw std::invalid_argument("run_convergence_study: ladder must be increasing");
    if (spec.reference == ReferenceStrategy::elastic_analytic)
        throw std::invalid_argument(
            "run_convergence_study: the analytic elastic reference is a point check, "
            "use overkill or manufactured");

    std::vector<ThicknessTable> tables(spec.thicknesses.size());
    parallel_for(
        static_cast<int>(spec.thicknesses.size()),
        [&](int i) {
            const double d = spec.thicknesses[static_cast<std::size_t>(i)];
            tables[static_cast<std::size_t>(i)] =
                spec.reference == ReferenceStrategy::overkill
                    ? run_thickness_overkill(spec, d)
                    : run_thickness_manufactured(spec, d);
        },
        threads);
    return tables;
}

TimeOrderCheck time_order_study(const BeamConfig& cfg, int element_order, int n_elements) {
    auto mesh = std::make_shared<Mesh1D>(Mesh1D::uniform(cfg.length, n_elements));
    auto v = std::make_shared<FeSpace>(mesh, element_order, Continuity::c0);
    auto q = std::make_shared<FeSpace>(mesh, element_order - 1, Continuity::discontinuous);

    BeamConfig c_half = cfg, c_eighth = cfg;
    c_half.dt = cfg.dt / 2.0;
    c_eighth.dt = cfg.dt / 8.0;
    const QuadratureRule quad = gauss_rule(element_order + 1);
    MixedStepper coarse(assemble(cfg, v, v, q, quad), cfg.material, cfg);
    MixedStepper half(assemble(c_half, v, v, q, quad), c_half.material, c_half);
    MixedStepper eighth(assemble(c_eighth, v, v, q, quad), c_eighth.material, c_eighth);

    std::vector<double> dev_c, dev_h;
    coarse.advance();
    half.advance();
    eighth.advance();
    auto record = [&]() {
        const CoeffVec ref = eighth.current_w_coeffs();
        const CoeffVec wc = coarse.current_w_coeffs();
        const CoeffVec wh = half.current_w_coeffs();
        dev_c.push_back(spatial_norm(CoeffVec(wc.space, wc.values - ref.values), NormKind::l2));
        dev_h.push_back(spatial_norm(CoeffVec(wh.space, wh.values - ref.values), NormKind::l2));
    };
    record();
    for (int n = 1; n <= coarse.step_count(); ++n) {
        coarse.advance();
        half.advance();
        half.advance();
        for (int k = 0; k < 8; ++k) eighth.advance();
        record();
    }

    TimeOrderCheck out;
    out.deviation_dt = time_accumulate(dev_c, cfg.dt);
    out.deviation_half = time_accumulate(dev_h, cfg.dt);
    out.ratio = out.deviation_dt / out.deviation_half;
    return out;
}

} // namespace viscobeam
