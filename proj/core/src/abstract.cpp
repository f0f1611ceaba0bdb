#include "viscobeam/abstract.hpp"

#include "viscobeam/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <stdexcept>

namespace viscobeam::abstract {

double Kernel::operator()(double t, double s) const {
    if (s < 0.0 || s > t) throw std::invalid_argument("Kernel: needs 0 <= s <= t");
    const double d = t - s;
    return amplitude * std::exp(-decay * d) * std::cos(oscillation * d);
}

double Kernel::bound() const { return std::abs(amplitude); }

namespace {

double spectral_norm(const Eigen::MatrixXd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(0);
}

double min_eig_on(const Eigen::MatrixXd& sym, const Eigen::MatrixXd& basis) {
    if (basis.cols() == 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
        return es.eigenvalues().minCoeff();
    }
    Eigen::MatrixXd restricted = basis.transpose() * sym * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted);
    return es.eigenvalues().minCoeff();
}

} // namespace

void AbstractSystem::measure() {
    norm_a = spectral_norm(a);
    norm_b = spectral_norm(b);
    norm_c = spectral_norm(c);
    ker_b = linalg::nullspace(b);
    ker_bt = linalg::nullspace(b.transpose());
    alpha0 = min_eig_on(a, ker_b);
    gamma0 = min_eig_on(c, ker_bt);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
    const auto& sv = svd.singularValues();
    beta = 0.0;
    if (sv.size() > 0) {
        const double cut = sv(0) * 1e-10;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > cut) beta = sv(i);
    }
}

namespace {

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    return q;
}

} // namespace

AbstractSystem random_system(int n_v, int n_q, const SpectralTargets& targets,
                             const std::array<double, 4>& kernel_bounds, std::uint64_t seed,
                             double lambda) {
    if (n_q < 1 || n_v < n_q)
        throw std::invalid_argument("random_system: need n_v >= n_q >= 1");
    const int rank = targets.rank_b < 0 ? n_q : targets.rank_b;
    if (rank < 1 || rank > n_q)
        throw std::invalid_argument("random_system: rank_b outside [1, n_q]");
    if (!(targets.alpha0 > 0.0) || !(targets.gamma0 > 0.0) || !(targets.beta > 0.0))
        throw std::invalid_argument("random_system: spectral targets must be positive");
    if (targets.alpha0 > targets.norm_a || targets.gamma0 > targets.norm_c ||
        targets.beta > targets.norm_b)
        throw std::invalid_argument("random_system: infeasible spectral targets");
    if (kernel_bounds[0] != kernel_bounds[1] || kernel_bounds[2] != kernel_bounds[3])
        throw std::invalid_argument(
            "random_system: kernel bounds must come in equal pairs (k1 = k2, k3 = k4)");
    for (double kb : kernel_bounds)
        if (kb < 0.0) throw std::invalid_argument("random_system: negative kernel bound");
    if (lambda < 0.0) throw std::invalid_argument("random_system: negative lambda");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    AbstractSystem sys;
    sys.lambda = lambda;

    const Eigen::MatrixXd u_fac = random_orthogonal(n_q, rng);
    const Eigen::MatrixXd v_fac = random_orthogonal(n_v, rng);

    // B = U S V^T with the nonzero spectrum spanning [beta, norm_b]
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n_q, n_v);
    for (int i = 0; i < rank; ++i)
        s(i, i) = rank == 1 ? targets.beta
                            : targets.beta + (targets.norm_b - targets.beta) *
                                                 (rank - 1 - i) / (rank - 1);
    sys.b = u_fac * s * v_fac.transpose();

    // A diagonal in the basis of right singular vectors: the trailing
    // n_v - rank columns span ker B, where the spectrum sits in
    // [alpha0, norm_a] with alpha0 attained; the complement may degenerate
    // to zero (ellipticity on the kernel only).
    Eigen::VectorXd da(n_v);
    for (int i = 0; i < n_v; ++i) {
        if (i >= rank) {
            da[i] = targets.alpha0 + (targets.norm_a - targets.alpha0) * unit(rng);
        } else {
            da[i] = targets.norm_a * unit(rng) * unit(rng); // bias low, may be ~0
        }
    }
    if (rank < n_v) {
        da[rank] = targets.alpha0;
        da[n_v - 1] = targets.norm_a;
    } else {
        da[0] = targets.norm_a;
        for (int i = 1; i < n_v; ++i)
            da[i] = targets.alpha0 + (targets.norm_a - targets.alpha0) * unit(rng);
        if (n_v > 1) da[n_v - 1] = targets.alpha0;
    }
    sys.a = v_fac * da.asDiagonal() * v_fac.transpose();
    sys.a = 0.5 * (sys.a + sys.a.transpose().eval());

    if (lambda > 0.0) {
        sys.c = lambda * Eigen::MatrixXd::Identity(n_q, n_q);
    } else {
        Eigen::VectorXd dc(n_q);
        for (int i = 0; i < n_q; ++i) {
            if (i >= rank) {
                dc[i] = targets.gamma0 + (targets.norm_c - targets.gamma0) * unit(rng);
            } else {
                dc[i] = targets.norm_c * unit(rng) * unit(rng);
            }
        }
        if (rank < n_q) {
            dc[rank] = targets.gamma0;
            dc[n_q - 1] = targets.norm_c;
        } else {
            dc[0] = targets.norm_c;
            for (int i = 1; i < n_q; ++i)
                dc[i] = targets.gamma0 + (targets.norm_c - targets.gamma0) * unit(rng);
            if (n_q > 1) dc[n_q - 1] = targets.gamma0;
        }
        sys.c = u_fac * dc.asDiagonal() * u_fac.transpose();
        sys.c = 0.5 * (sys.c + sys.c.transpose().eval());
    }

    auto draw_kernel = [&](double bound) {
        Kernel k;
        k.amplitude = bound * (unit(rng) < 0.5 ? -1.0 : 1.0);
        k.decay = 0.2 + 1.8 * unit(rng);
        k.oscillation = 3.0 * unit(rng);
        if (bound == 0.0) k = Kernel{};
        return k;
    };
    const Kernel k12 = draw_kernel(kernel_bounds[0]);
    sys.kernels[0] = k12;
    sys.kernels[1] = k12;
    if (lambda > 0.0) {
        sys.kernels[2] = Kernel{};
        sys.kernels[3] = Kernel{};
    } else {
        const Kernel k34 = draw_kernel(kernel_bounds[2]);
        sys.kernels[2] = k34;
        sys.kernels[3] = k34;
    }

    sys.measure();
    return sys;
}

Trajectory solve_volterra(const AbstractSystem& sys, const Eigen::MatrixXd& f,
                          const Eigen::MatrixXd& g, double dt) {
    const int nv = sys.n_v();
    const int nq = sys.n_q();
    if (!(dt > 0.0)) throw std::invalid_argument("solve_volterra: dt must be positive");
    const double steps = sys.horizon / dt;
    const int n_steps = static_cast<int>(std::llround(steps));
    if (std::abs(steps - n_steps) > 1e-9 * std::max(1.0, steps))
        throw std::invalid_argument("solve_volterra: horizon must be an integral number of steps");
    if (f.rows() != nv || g.rows() != nq || f.cols() < n_steps + 1 || g.cols() < n_steps + 1)
        throw std::invalid_argument("solve_volterra: data shape mismatch");

    // stationary kernels: the diagonal values k_i(t, t) are step-independent
    const double k1d = sys.kernels[0].amplitude;
    const double k2d = sys.kernels[1].amplitude;
    const double k3d = sys.kernels[2].amplitude;
    const double k4d = sys.kernels[3].amplitude;

    auto block = [&](double w) {
        Eigen::MatrixXd m(nv + nq, nv + nq);
        m.topLeftCorner(nv, nv) = (1.0 - w * k1d) * sys.a;
        m.topRightCorner(nv, nq) = (1.0 - w * k2d) * sys.b.transpose();
        m.bottomLeftCorner(nq, nv) = (1.0 - w * k3d) * sys.b;
        m.bottomRightCorner(nq, nq) = -(1.0 - w * k4d) * sys.c;
        return m;
    };

    Eigen::PartialPivLU<Eigen::MatrixXd> lu_first(block(0.0));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_later(block(dt / 2.0));
    for (const auto* lu : {&lu_first, &lu_later}) {
        const double pivot = lu->matrixLU().diagonal().cwiseAbs().minCoeff();
        if (!(pivot > 0.0)) throw NumericalError("solve_volterra: singular step matrix");
    }

    Trajectory traj;
    traj.times.resize(static_cast<std::size_t>(n_steps) + 1);
    traj.u.resize(nv, n_steps + 1);
    traj.p.resize(nq, n_steps + 1);

    Eigen::MatrixXd au(nv, n_steps + 1), btp(nv, n_steps + 1);
    Eigen::MatrixXd bu(nq, n_steps + 1), cp(nq, n_steps + 1);
    Eigen::VectorXd w1(n_steps + 1), w2(n_steps + 1), w3(n_steps + 1), w4(n_steps + 1);

    for (int n = 0; n <= n_steps; ++n) {
        const double tn = n * dt;
        traj.times[static_cast<std::size_t>(n)] = tn;

        Eigen::VectorXd rhs(nv + nq);
        rhs.head(nv) = f.col(n);
        rhs.tail(nq) = g.col(n);
        const bool first_memory = !sys.kernels[0].is_zero() || !sys.kernels[1].is_zero();
        const bool second_memory = !sys.kernels[2].is_zero() || !sys.kernels[3].is_zero();
        if (n > 0 && first_memory) {
            for (int j = 0; j < n; ++j) {
                const double w = (j == 0) ? dt / 2.0 : dt;
                const double ts = j * dt;
                w1[j] = w * sys.kernels[0](tn, ts);
                w2[j] = w * sys.kernels[1](tn, ts);
            }
            rhs.head(nv) += au.leftCols(n) * w1.head(n) + btp.leftCols(n) * w2.head(n);
        }
        if (n > 0 && second_memory) {
            for (int j = 0; j < n; ++j) {
                const double w = (j == 0) ? dt / 2.0 : dt;
                const double ts = j * dt;
                w3[j] = w * sys.kernels[2](tn, ts);
                w4[j] = w * sys.kernels[3](tn, ts);
            }
            rhs.tail(nq) += bu.leftCols(n) * w3.head(n) - cp.leftCols(n) * w4.head(n);
        }

        const Eigen::VectorXd sol = (n == 0 ? lu_first : lu_later).solve(rhs);
        traj.u.col(n) = sol.head(nv);
        traj.p.col(n) = sol.tail(nq);
        au.col(n) = sys.a * traj.u.col(n);
        btp.col(n) = sys.b.transpose() * traj.p.col(n);
        bu.col(n) = sys.b * traj.u.col(n);
        cp.col(n) = sys.c * traj.p.col(n);
    }
    return traj;
}

// --------------------------------------------------------------- constants

Mt1Params mt1_params(const AbstractSystem& sys) {
    Mt1Params p;
    p.norm_a = sys.norm_a;
    p.norm_c = sys.norm_c;
    p.alpha0 = sys.alpha0;
    p.gamma0 = sys.gamma0;
    p.beta = sys.beta;
    p.ck1 = sys.kernels[0].bound();
    p.ck2 = sys.kernels[1].bound();
    p.ck3 = sys.kernels[2].bound();
    p.ck4 = sys.kernels[3].bound();
    p.horizon = sys.horizon;
    return p;
}

Mt1Constants constants_mt1(const Mt1Params& p) {
    const double na = p.norm_a, nc = p.norm_c;
    const double a0 = p.alpha0, g0 = p.gamma0, beta = p.beta;
    const double T = p.horizon;
    const double ck1 = p.ck1, ck2 = p.ck2, ck3 = p.ck3, ck4 = p.ck4;
    if (!(na > 0) || !(nc > 0) || !(a0 > 0) || !(g0 > 0) || !(beta > 0) || T < 0)
        throw std::invalid_argument("constants_mt1: parameters must be positive");

    Mt1Constants out;
    const double mu = std::sqrt(na * nc);
    const double sa = std::sqrt(na / a0);
    const double sc = std::sqrt(nc / g0);
    const double b2 = beta * beta;
    const double e1 = std::exp(ck1 * T);
    const double e2 = std::exp(ck2 * T);
    const double e3 = std::exp(ck3 * T);
    const double e4c = std::exp(ck4 * std::sqrt(nc) * T / std::sqrt(g0));
    const double e1a = std::exp(ck1 * std::sqrt(na) * T / std::sqrt(a0));
    out.mu = mu;
    out.c_p0 = 1.0 + T * ck4 * std::sqrt(nc) * e4c / std::sqrt(g0);
    out.c_u0 = 1.0 + T * ck1 * std::sqrt(na) * e1a / std::sqrt(a0);

    // ---- the ledger exactly as published ----
    auto& c = out.printed;
    c[1] = na / b2;
    c[2] = c[1] * sc * (1.0 + ck4 * T * (1.0 + std::exp(ck4 * T) * (1.0 + ck4 * T)));
    c[3] = (1.0 / beta) * (1.0 + T * e3) * ((mu + beta) / beta + ck4 * T * nc * (c[1] + c[2]));
    c[4] = sa;
    out.chi_g_printed = ck4 * (1.0 + out.c_p0);
    {
        const double x = out.chi_g_printed;
        c[5] = (1.0 + T * x * std::exp(T * x)) *
               ((1.0 / g0) * (std::sqrt(nc) * na / b2 + 1.0 / (2.0 * std::sqrt(nc))) +
                T * ck4 * e4c / (2.0 * g0));
    }
    c[6] = out.c_p0 * (1.0 / g0 + (std::sqrt(nc) / std::sqrt(g0)) * (1.0 + T * ck4) * c[5]);
    c[7] = ((1.0 + T * ck3 * e3) / beta) *
           ((std::sqrt(nc) / std::sqrt(2.0)) * (1.0 + c[6]) * (1.0 + ck4 * T) + 1.0);
    c[8] = c[7] * sa;
    c[9] = nc / b2;
    c[10] = c[9] * sa * (1.0 + ck1 * T * (1.0 + e1 * (1.0 + ck1 * T)));
    c[11] = (1.0 / beta) * (1.0 + T * e2) * ((mu + beta) / beta + ck1 * T * nc * (c[9] + c[10]));
    c[12] = std::sqrt(nc) / std::sqrt(g0);
    out.chi_f_printed = ck1 * (1.0 + out.c_u0);
    {
        const double x = out.chi_f_printed;
        c[13] = (1.0 + T * x * std::exp(T * x)) *
                ((1.0 / a0) * (std::sqrt(na) * nc / b2 + 1.0 / (2.0 * std::sqrt(na))) +
                 T * ck1 * e1a / (2.0 * a0));
    }
    c[14] = out.c_u0 * (1.0 / a0 + (std::sqrt(na) / std::sqrt(a0)) * (1.0 + T * ck1) * c[13]);
    c[15] = ((1.0 + T * ck2 * e2) / beta) *
            ((std::sqrt(na) / std::sqrt(2.0)) * (1.0 + c[14]) * (1.0 + ck1 * T) + 1.0);
    c[16] = c[15] * std::sqrt(nc) / std::sqrt(g0);

    // ---- the constants the estimate chain itself produces ----
    // The memory terms are folded into resolvent amplifications rho of the
    // data before the static arguments run, so every step is an inequality
    // that holds for each instance with paired kernels.
    auto& q = out.proved;
    const double cb = std::max(ck3, ck4);
    const double ca = std::max(ck1, ck2);
    const double rho_g = 1.0 + T * cb * std::exp(cb * T);
    const double rho_a = 1.0 + T * ca * std::exp(ca * T);
    q[1] = (na / b2) * rho_g;
    q[2] = q[1] * sc * (1.0 + T * ck4 * (1.0 + std::exp(ck4 * T) * (1.0 + ck4 * T)));
    q[3] = (1.0 / beta) * (1.0 + T * ck3 * e3) *
           ((mu * rho_g + beta) / beta + ck4 * T * nc * (q[1] + q[2]));
    q[4] = q[3] * sa;
    out.chi_g_proved =
        ck4 * (1.0 + e4c * (std::sqrt(nc) / std::sqrt(g0)) * (1.0 + T * ck4));
    {
        const double x = out.chi_g_proved;
        q[5] = (1.0 + T * x * std::exp(T * x)) *
               (2.0 * std::sqrt(nc) * na * rho_g / (b2 * std::sqrt(g0)) +
                1.0 / (std::sqrt(nc) * std::sqrt(g0)) + T * ck4 * e4c / g0);
    }
    q[6] = out.c_p0 * (1.0 / g0 + (std::sqrt(nc) / std::sqrt(g0)) * (1.0 + T * ck4) * q[5]);
    q[7] = ((1.0 + T * ck3 * e3) / beta) *
           (std::sqrt(nc / 2.0) * (rho_g + q[6]) * (1.0 + ck4 * T) + 1.0);
    q[8] = q[7] * sa;
    q[9] = (nc / b2) * rho_a;
    q[10] = q[9] * sa * (1.0 + T * ck1 * (1.0 + e1 * (1.0 + ck1 * T)));
    q[11] = (1.0 / beta) * (rho_a + na * (q[9] + q[10]));
    q[12] = q[11] * sc;
    out.chi_f_proved =
        ck1 * (1.0 + e1a * (std::sqrt(na) / std::sqrt(a0)) * (1.0 + T * ck1));
    {
        const double x = out.chi_f_proved;
        q[13] = (1.0 + T * x * std::exp(T * x)) *
                (2.0 * std::sqrt(na) * nc * rho_a / (b2 * std::sqrt(a0)) +
                 1.0 / (std::sqrt(na) * std::sqrt(a0)) + T * ck1 * e1a / a0);
    }
    q[14] = out.c_u0 * (1.0 / a0 + (std::sqrt(na) / std::sqrt(a0)) * (1.0 + T * ck1) * q[13]);
    q[15] = (1.0 / beta) * (rho_a + na * (q[13] + q[14]));
    q[16] = q[15] * sc;
    return out;
}

Mt2Params mt2_params(const AbstractSystem& sys) {
    if (!(sys.lambda > 0.0))
        throw std::invalid_argument("mt2_params: system is not in the penalty form");
    Mt2Params p;
    p.norm_a = sys.norm_a;
    p.alpha0 = sys.alpha0;
    p.beta = sys.beta;
    p.ck1 = sys.kernels[0].bound();
    p.ck2 = sys.kernels[1].bound();
    p.lambda = sys.lambda;
    p.horizon = sys.horizon;
    return p;
}

Mt2Constants constants_mt2(const Mt2Params& p) {
    const double na = p.norm_a, a0 = p.alpha0, beta = p.beta;
    const double T = p.horizon, lam = p.lambda;
    if (!(na > 0) || !(a0 > 0) || !(beta > 0) || !(lam > 0) || T < 0)
        throw std::invalid_argument("constants_mt2: parameters must be positive");

    Mt2Constants out;
    const double sa = std::sqrt(na / a0);
    const double c1k = p.ck1 * std::sqrt(na) / std::sqrt(a0);
    const double grow = 1.0 + T * c1k * std::exp(T * c1k);
    out.m1 = grow / a0;
    out.m2 = (std::sqrt(na) / (beta * std::sqrt(a0))) * grow * (1.0 + T * p.ck1);
    out.n_growth = 2.0 * lam * p.ck1 * out.m2 * na / beta +
                   2.0 * lam * p.ck1 * na / (beta * beta) + p.ck2;
    const double envelope =
        ((1.0 + sa) + 2.0 * T * p.ck1 * out.m1 * na) *
        (1.0 + T * out.n_growth * std::exp(T * out.n_growth));
    out.c_u1 = lam / (beta * beta) * envelope;
    out.c_u2 = out.m1 + beta * out.m2 * out.c_u1;
    out.c1 = out.c_u1 + out.c_u2;
    out.c3 = envelope / beta;
    out.c2 = (beta * beta + 4.0 * lam * na) / (a0 * beta * beta);
    out.c4 = 4.0 * na / (na * lam + 2.0 * beta * beta);
    return out;
}

// ------------------------------------------------------------ verification

namespace {

double l1_norm(const Eigen::MatrixXd& series, double dt) {
    double sum = 0.0;
    for (int j = 0; j + 1 < series.cols(); ++j)
        sum += 0.5 * dt * (series.col(j).norm() + series.col(j + 1).norm());
    return sum;
}

Eigen::MatrixXd project(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& series) {
    if (basis.cols() == 0) return Eigen::MatrixXd::Zero(series.rows(), series.cols());
    return basis * (basis.transpose() * series);
}

void add_entry(BoundReport& report, const std::string& name, double lhs, double rhs,
               bool counted) {
    SlackEntry e;
    e.name = name;
    e.lhs = lhs;
    e.rhs = rhs;
    e.slack = rhs > 0.0 ? (rhs - lhs) / rhs : (lhs <= 0.0 ? 1.0 : -1.0);
    e.counted = counted;
    report.entries.push_back(e);
}

} // namespace

BoundReport verify_bound(const AbstractSystem& sys, const Trajectory& traj,
                         const Eigen::MatrixXd& f, const Eigen::MatrixXd& g, BoundKind kind) {
    if (traj.times.size() < 2 || traj.u.cols() != static_cast<int>(traj.times.size()))
        throw std::invalid_argument("verify_bound: malformed trajectory");
    if (f.rows() != sys.n_v() || g.rows() != sys.n_q() || f.cols() != traj.u.cols() ||
        g.cols() != traj.u.cols())
        throw std::invalid_argument("verify_bound: data does not match the trajectory");
    const double dt = traj.times[1] - traj.times[0];

    const Eigen::MatrixXd u0 = project(sys.ker_b, traj.u);
    const Eigen::MatrixXd ubar = traj.u - u0;
    const Eigen::MatrixXd p0 = project(sys.ker_bt, traj.p);
    const Eigen::MatrixXd pbar = traj.p - p0;
    const Eigen::MatrixXd f0 = project(sys.ker_b, f);
    const Eigen::MatrixXd fbar = f - f0;
    const Eigen::MatrixXd g0 = project(sys.ker_bt, g);
    const Eigen::MatrixXd gbar = g - g0;

    const double n_u0 = l1_norm(u0, dt), n_ubar = l1_norm(ubar, dt);
    const double n_p0 = l1_norm(p0, dt), n_pbar = l1_norm(pbar, dt);
    const double n_f0 = l1_norm(f0, dt), n_fbar = l1_norm(fbar, dt);
    const double n_g0 = l1_norm(g0, dt), n_gbar = l1_norm(gbar, dt);
    const double n_f = l1_norm(f, dt), n_g = l1_norm(g, dt);
    const double n_u = l1_norm(traj.u, dt), n_p = l1_norm(traj.p, dt);

    BoundReport report;
    switch (kind) {
    case BoundKind::mt1: {
        const Mt1Constants k = constants_mt1(mt1_params(sys));
        auto combo = [&](const std::array<double, 17>& c, int i_fbar, int i_f0, int i_gbar,
                         int i_g0) {
            return c[static_cast<std::size_t>(i_fbar)] * n_fbar +
                   c[static_cast<std::size_t>(i_f0)] * n_f0 +
                   c[static_cast<std::size_t>(i_gbar)] * n_gbar +
                   c[static_cast<std::size_t>(i_g0)] * n_g0;
        };
        add_entry(report, "ubar", n_ubar, combo(k.proved, 9, 13, 3, 7), true);
        add_entry(report, "u0", n_u0, combo(k.proved, 10, 14, 4, 8), true);
        add_entry(report, "pbar", n_pbar, combo(k.proved, 11, 15, 1, 5), true);
        add_entry(report, "p0", n_p0, combo(k.proved, 12, 16, 2, 6), true);
        add_entry(report, "ubar_published", n_ubar, combo(k.printed, 9, 13, 3, 7), false);
        add_entry(report, "u0_published", n_u0, combo(k.printed, 10, 14, 4, 8), false);
        add_entry(report, "pbar_published", n_pbar, combo(k.printed, 11, 15, 1, 5), false);
        add_entry(report, "p0_published", n_p0, combo(k.printed, 12, 16, 2, 6), false);
        break;
    }
    case BoundKind::mt2: {
        const Mt2Constants k = constants_mt2(mt2_params(sys));
        add_entry(report, "u", n_u, k.c1 * n_f + k.c2 * n_g, true);
        add_entry(report, "p", n_p, k.c3 * n_f + k.c4 * n_g, true);
        break;
    }
    case BoundKind::cor210: {
        const Mt2Constants k = constants_mt2(mt2_params(sys));
        add_entry(report, "u_plus_pbar", n_u + n_pbar,
                  (k.c1 + k.c3) * n_f + (k.c2 + k.c4) * n_g, true);
        add_entry(report, "p0", n_p0, n_g0 / sys.lambda, true);
        break;
    }
    }

    report.holds = true;
    report.min_slack = 1.0;
    for (const SlackEntry& e : report.entries) {
        if (!e.counted) continue;
        report.min_slack = std::min(report.min_slack, e.slack);
        if (e.slack < -1e-9) report.holds = false;
    }
    return report;
}

} // namespace viscobeam::abstract
