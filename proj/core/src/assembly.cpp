#include "viscobeam/assembly.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viscobeam {

FieldMap make_field_map(int n_dofs, const std::vector<int>& constrained) {
    FieldMap map;
    map.reduced.assign(static_cast<std::size_t>(n_dofs), 0);
    for (int c : constrained) {
        if (c < 0 || c >= n_dofs)
            throw std::invalid_argument("make_field_map: constrained dof out of range");
        map.reduced[static_cast<std::size_t>(c)] = -1;
    }
    for (int g = 0; g < n_dofs; ++g) {
        if (map.reduced[static_cast<std::size_t>(g)] == 0) {
            map.reduced[static_cast<std::size_t>(g)] = static_cast<int>(map.kept.size());
            map.kept.push_back(g);
        }
    }
    return map;
}

namespace {

void require_shared_mesh(const FeSpace& a, const FeSpace& b) {
    if (!(a.mesh() == b.mesh()))
        throw std::invalid_argument("assemble: spaces live on different meshes");
}

// Basis tables at the quadrature points of one rule (same in every element
// of a given space since the reference nodes are fixed).
struct BasisTable {
    Eigen::MatrixXd val;  // n_q x m
    Eigen::MatrixXd dref; // n_q x m, derivative w.r.t. xi
};

BasisTable tabulate(const FeSpace& space, const QuadratureRule& quad) {
    const int m = space.dofs_per_element();
    const int nq = static_cast<int>(quad.points.size());
    BasisTable t;
    t.val.resize(nq, m);
    t.dref.resize(nq, m);
    double buf[8];
    for (int q = 0; q < nq; ++q) {
        space.shape_values(quad.points[static_cast<std::size_t>(q)], buf);
        for (int i = 0; i < m; ++i) t.val(q, i) = buf[i];
        space.shape_derivatives(quad.points[static_cast<std::size_t>(q)], buf);
        for (int i = 0; i < m; ++i) t.dref(q, i) = buf[i];
    }
    return t;
}

Eigen::VectorXd assemble_load(const FeSpace& v_w, const FieldMap& map_w, int n_u_offset_unused,
                              const QuadratureRule& quad,
                              const std::function<double(double, double)>& q_e, double t,
                              int total_size) {
    (void)n_u_offset_unused;
    const Mesh1D& mesh = v_w.mesh();
    const BasisTable tw = tabulate(v_w, quad);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(total_size);
    const int m = v_w.dofs_per_element();
    for (int e = 0; e < mesh.element_count(); ++e) {
        const double h = mesh.element_length(e);
        const double xl = mesh.element_left(e);
        for (std::size_t q = 0; q < quad.points.size(); ++q) {
            const double x = xl + h * (quad.points[q] + 1.0) / 2.0;
            const double w = quad.weights[q] * h / 2.0 * q_e(x, t);
            for (int i = 0; i < m; ++i) {
                const int r = map_w.reduced[static_cast<std::size_t>(v_w.global_dof(e, i))];
                if (r >= 0) f[r] += w * tw.val(static_cast<int>(q), i);
            }
        }
    }
    return f;
}

CoeffVec expand(const SpacePtr& space, const FieldMap& map, const Eigen::VectorXd& reduced,
                int offset) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(space->n_dofs());
    for (int r = 0; r < map.size(); ++r)
        full[map.kept[static_cast<std::size_t>(r)]] = reduced[offset + r];
    return CoeffVec(space, std::move(full));
}

} // namespace

Eigen::VectorXd DiscreteOperators::load_vector(double t) const {
    return assemble_load(*v_w, map_w, 0, quad, scaled_load, t, layout.n_u());
}

CoeffVec DiscreteOperators::expand_w(const Eigen::VectorXd& u) const {
    return expand(v_w, map_w, u, 0);
}
CoeffVec DiscreteOperators::expand_theta(const Eigen::VectorXd& u) const {
    return expand(v_theta, map_theta, u, layout.n_w);
}
CoeffVec DiscreteOperators::expand_gamma(const Eigen::VectorXd& gamma) const {
    Eigen::VectorXd full = gamma;
    return CoeffVec(q_space, std::move(full));
}

DiscreteOperators assemble(const BeamConfig& cfg, SpacePtr v_w, SpacePtr v_theta,
                           SpacePtr q_space, const QuadratureRule& quad) {
    cfg.validate();
    const BoundaryDofs bdofs = boundary_constraints(cfg, *v_w, *v_theta);
    const BeamConfig local = cfg;
    return assemble_scaled(cfg.i_hat(), cfg.a_hat(), cfg.lambda(), std::move(v_w),
                           std::move(v_theta), std::move(q_space), quad, bdofs,
                           [local](double x, double t) { return local.scaled_load(x, t); });
}

DiscreteOperators assemble_scaled(double i_hat, double a_hat, double lambda,
                                  SpacePtr v_w, SpacePtr v_theta, SpacePtr q_space,
                                  const QuadratureRule& quad, const BoundaryDofs& bdofs,
                                  std::function<double(double, double)> scaled_load) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("assemble: shear penalty must be positive");
    if (!(i_hat > 0.0) || !(a_hat > 0.0))
        throw std::invalid_argument("assemble: scaled coefficients must be positive");
    require_shared_mesh(*v_w, *v_theta);
    require_shared_mesh(*v_w, *q_space);
    if (q_space->continuity() != Continuity::discontinuous)
        throw std::invalid_argument("assemble: shear space must be discontinuous");

    const int r_theta = v_theta->degree();
    const int r_w = v_w->degree();
    const int p_q = q_space->degree();
    const int needed = std::max({2 * (r_theta - 1), p_q + r_theta, p_q + r_w - 1, 2 * p_q});
    if (quad.exactness_degree < needed)
        throw std::invalid_argument("assemble: quadrature not exact for the assembled terms");

    DiscreteOperators ops;
    ops.v_w = std::move(v_w);
    ops.v_theta = std::move(v_theta);
    ops.q_space = std::move(q_space);
    ops.map_w = make_field_map(ops.v_w->n_dofs(), bdofs.w);
    ops.map_theta = make_field_map(ops.v_theta->n_dofs(), bdofs.theta);
    ops.layout.n_w = ops.map_w.size();
    ops.layout.n_theta = ops.map_theta.size();
    ops.layout.n_gamma = ops.q_space->n_dofs();
    ops.scaled_load = std::move(scaled_load);
    ops.quad = quad;

    const Mesh1D& mesh = ops.v_w->mesh();
    const BasisTable tw = tabulate(*ops.v_w, quad);
    const BasisTable tt = tabulate(*ops.v_theta, quad);
    const BasisTable tq = tabulate(*ops.q_space, quad);
    const int mw = ops.v_w->dofs_per_element();
    const int mt = ops.v_theta->dofs_per_element();
    const int mq = ops.q_space->dofs_per_element();
    const int nq = static_cast<int>(quad.points.size());

    std::vector<Eigen::Triplet<double>> ta, tb, tc;
    for (int e = 0; e < mesh.element_count(); ++e) {
        const double h = mesh.element_length(e);
        for (int q = 0; q < nq; ++q) {
            const double w = quad.weights[q];
            // bending: i_hat * dtheta * deta, jacobians combine to 2/h
            for (int i = 0; i < mt; ++i) {
                const int gi = ops.map_theta.reduced[static_cast<std::size_t>(
                    ops.v_theta->global_dof(e, i))];
                if (gi < 0) continue;
                for (int j = 0; j < mt; ++j) {
                    const int gj = ops.map_theta.reduced[static_cast<std::size_t>(
                        ops.v_theta->global_dof(e, j))];
                    if (gj < 0) continue;
                    ta.emplace_back(ops.layout.n_w + gi, ops.layout.n_w + gj,
                                    i_hat * w * (2.0 / h) * tt.dref(q, i) * tt.dref(q, j));
                }
            }
            for (int k = 0; k < mq; ++k) {
                const int gk = ops.q_space->global_dof(e, k);
                // (psi, eta): jacobian h/2
                for (int i = 0; i < mt; ++i) {
                    const int gi = ops.map_theta.reduced[static_cast<std::size_t>(
                        ops.v_theta->global_dof(e, i))];
                    if (gi < 0) continue;
                    tb.emplace_back(gk, ops.layout.n_w + gi,
                                    w * (h / 2.0) * tq.val(q, k) * tt.val(q, i));
                }
                // -(psi, v'): jacobians cancel
                for (int j = 0; j < mw; ++j) {
                    const int gj = ops.map_w.reduced[static_cast<std::size_t>(
                        ops.v_w->global_dof(e, j))];
                    if (gj < 0) continue;
                    tb.emplace_back(gk, gj, -w * tq.val(q, k) * tw.dref(q, j));
                }
                // (lambda / a_hat) * (psi, psi)
                for (int l = 0; l < mq; ++l) {
                    const int gl = ops.q_space->global_dof(e, l);
                    tc.emplace_back(gk, gl,
                                    lambda / a_hat * w * (h / 2.0) * tq.val(q, k) * tq.val(q, l));
                }
            }
        }
    }

    ops.a_bend.resize(ops.layout.n_u(), ops.layout.n_u());
    ops.a_bend.setFromTriplets(ta.begin(), ta.end());
    ops.b_shear.resize(ops.layout.n_gamma, ops.layout.n_u());
    ops.b_shear.setFromTriplets(tb.begin(), tb.end());
    ops.c_gamma.resize(ops.layout.n_gamma, ops.layout.n_gamma);
    ops.c_gamma.setFromTriplets(tc.begin(), tc.end());
    return ops;
}

Eigen::VectorXd PrimalOperators::load_vector(double t) const {
    return assemble_load(*v_w, map_w, 0, quad_load, scaled_load, t, layout.n_u());
}
CoeffVec PrimalOperators::expand_w(const Eigen::VectorXd& u) const {
    return expand(v_w, map_w, u, 0);
}
CoeffVec PrimalOperators::expand_theta(const Eigen::VectorXd& u) const {
    return expand(v_theta, map_theta, u, layout.n_w);
}

PrimalOperators assemble_primal(const BeamConfig& cfg, SpacePtr v_w, SpacePtr v_theta,
                                const QuadratureRule& quad_bend,
                                const QuadratureRule& quad_shear) {
    cfg.validate();
    require_shared_mesh(*v_w, *v_theta);
    const int r_theta = v_theta->degree();
    if (quad_bend.exactness_degree < 2 * (r_theta - 1))
        throw std::invalid_argument("assemble_primal: bending rule not exact");

    PrimalOperators ops;
    ops.v_w = v_w;
    ops.v_theta = v_theta;
    const BoundaryDofs bdofs = boundary_constraints(cfg, *v_w, *v_theta);
    ops.map_w = make_field_map(v_w->n_dofs(), bdofs.w);
    ops.map_theta = make_field_map(v_theta->n_dofs(), bdofs.theta);
    ops.layout.n_w = ops.map_w.size();
    ops.layout.n_theta = ops.map_theta.size();
    const BeamConfig local = cfg;
    ops.scaled_load = [local](double x, double t) { return local.scaled_load(x, t); };
    ops.quad_load = quad_bend;
    ops.shear_coefficient = cfg.a_hat() / cfg.lambda();

    const Mesh1D& mesh = v_w->mesh();
    const double i_hat = cfg.i_hat();
    const int mw = v_w->dofs_per_element();
    const int mt = v_theta->dofs_per_element();

    std::vector<Eigen::Triplet<double>> kb, ks;
    {
        const BasisTable tt = tabulate(*v_theta, quad_bend);
        for (int e = 0; e < mesh.element_count(); ++e) {
            const double h = mesh.element_length(e);
            for (std::size_t q = 0; q < quad_bend.points.size(); ++q) {
                const double w = quad_bend.weights[q];
                for (int i = 0; i < mt; ++i) {
                    const int gi =
                        ops.map_theta.reduced[static_cast<std::size_t>(v_theta->global_dof(e, i))];
                    if (gi < 0) continue;
                    for (int j = 0; j < mt; ++j) {
                        const int gj = ops.map_theta.reduced[static_cast<std::size_t>(
                            v_theta->global_dof(e, j))];
                        if (gj < 0) continue;
                        kb.emplace_back(ops.layout.n_w + gi, ops.layout.n_w + gj,
                                        i_hat * w * (2.0 / h) * tt.dref(static_cast<int>(q), i) *
                                            tt.dref(static_cast<int>(q), j));
                    }
                }
            }
        }
    }
    {
        // shear energy (A_hat/lambda) * (theta - w', eta - v') under quad_shear;
        // a 1-point rule here is the reduced-integration variant
        const BasisTable tw = tabulate(*v_w, quad_shear);
        const BasisTable tt = tabulate(*v_theta, quad_shear);
        const double coef = ops.shear_coefficient;
        for (int e = 0; e < mesh.element_count(); ++e) {
            const double h = mesh.element_length(e);
            for (std::size_t q = 0; q < quad_shear.points.size(); ++q) {
                const double w = quad_shear.weights[q];
                const int iq = static_cast<int>(q);
                auto entry = [&](int row, int col, double v) { ks.emplace_back(row, col, v); };
                for (int i = 0; i < mt; ++i) {
                    const int gi =
                        ops.map_theta.reduced[static_cast<std::size_t>(v_theta->global_dof(e, i))];
                    if (gi < 0) continue;
                    for (int j = 0; j < mt; ++j) {
                        const int gj = ops.map_theta.reduced[static_cast<std::size_t>(
                            v_theta->global_dof(e, j))];
                        if (gj >= 0)
                            entry(ops.layout.n_w + gi, ops.layout.n_w + gj,
                                  coef * w * (h / 2.0) * tt.val(iq, i) * tt.val(iq, j));
                    }
                    for (int j = 0; j < mw; ++j) {
                        const int gj =
                            ops.map_w.reduced[static_cast<std::size_t>(v_w->global_dof(e, j))];
                        if (gj >= 0) {
                            const double v = -coef * w * tt.val(iq, i) * tw.dref(iq, j);
                            entry(ops.layout.n_w + gi, gj, v);
                            entry(gj, ops.layout.n_w + gi, v);
                        }
                    }
                }
                for (int i = 0; i < mw; ++i) {
                    const int gi =
                        ops.map_w.reduced[static_cast<std::size_t>(v_w->global_dof(e, i))];
                    if (gi < 0) continue;
                    for (int j = 0; j < mw; ++j) {
                        const int gj =
                            ops.map_w.reduced[static_cast<std::size_t>(v_w->global_dof(e, j))];
                        if (gj >= 0)
                            entry(gi, gj,
                                  coef * w * (2.0 / h) * tw.dref(iq, i) * tw.dref(iq, j));
                    }
                }
            }
        }
    }

    ops.k_bend.resize(ops.layout.n_u(), ops.layout.n_u());
    ops.k_bend.setFromTriplets(kb.begin(), kb.end());
    ops.k_shear.resize(ops.layout.n_u(), ops.layout.n_u());
    ops.k_shear.setFromTriplets(ks.begin(), ks.end());
    return ops;
}

namespace {

void add_field_norm(std::vector<Eigen::Triplet<double>>& trip, const FeSpace& space,
                    const FieldMap& map, const QuadratureRule& quad, int offset) {
    const Mesh1D& mesh = space.mesh();
    const BasisTable tb = tabulate(space, quad);
    const int m = space.dofs_per_element();
    const bool h1 = space.continuity() == Continuity::c0;
    for (int e = 0; e < mesh.element_count(); ++e) {
        const double h = mesh.element_length(e);
        for (std::size_t q = 0; q < quad.points.size(); ++q) {
            const double w = quad.weights[q];
            const int iq = static_cast<int>(q);
            for (int i = 0; i < m; ++i) {
                const int gi = map.reduced[static_cast<std::size_t>(space.global_dof(e, i))];
                if (gi < 0) continue;
                for (int j = 0; j < m; ++j) {
                    const int gj = map.reduced[static_cast<std::size_t>(space.global_dof(e, j))];
                    if (gj < 0) continue;
                    double v = w * (h / 2.0) * tb.val(iq, i) * tb.val(iq, j);
                    if (h1) v += w * (2.0 / h) * tb.dref(iq, i) * tb.dref(iq, j);
                    trip.emplace_back(offset + gi, offset + gj, v);
                }
            }
        }
    }
}

} // namespace

NormMatrices norm_matrices(const DiscreteOperators& ops) {
    const QuadratureRule quad = gauss_rule(std::max(ops.v_w->degree(), ops.v_theta->degree()) + 1);
    std::vector<Eigen::Triplet<double>> tu, tq;
    add_field_norm(tu, *ops.v_w, ops.map_w, quad, 0);
    add_field_norm(tu, *ops.v_theta, ops.map_theta, quad, ops.layout.n_w);
    FieldMap id_map = make_field_map(ops.q_space->n_dofs(), {});
    add_field_norm(tq, *ops.q_space, id_map, gauss_rule(ops.q_space->degree() + 1), 0);

    Eigen::SparseMatrix<double> nu(ops.layout.n_u(), ops.layout.n_u());
    nu.setFromTriplets(tu.begin(), tu.end());
    Eigen::SparseMatrix<double> nq(ops.layout.n_gamma, ops.layout.n_gamma);
    nq.setFromTriplets(tq.begin(), tq.end());
    return {Eigen::MatrixXd(nu), Eigen::MatrixXd(nq)};
}

double inf_sup_constant(const Eigen::MatrixXd& b, const Eigen::MatrixXd& norm_v,
                        const Eigen::MatrixXd& norm_q) {
    if (norm_v.rows() != b.cols() || norm_q.rows() != b.rows())
        throw std::invalid_argument("inf_sup_constant: size mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt_v(norm_v);
    Eigen::LLT<Eigen::MatrixXd> llt_q(norm_q);
    if (llt_v.info() != Eigen::Success || llt_q.info() != Eigen::Success)
        throw std::invalid_argument("inf_sup_constant: norm matrices must be SPD");
    // M = L_Q^{-1} B L_V^{-T}; its nonzero singular values realize sup-inf.
    Eigen::MatrixXd y = llt_v.matrixL().solve(b.transpose()); // L_V^{-1} B^T
    Eigen::MatrixXd m = llt_q.matrixL().solve(y.transpose());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0.0;
    const double cut = sv(0) * 1e-10;
    double smallest = 0.0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) smallest = sv(i);
    return smallest;
}

} // namespace viscobeam
