#include "burgers2d/compact_adi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "burgers2d/parallel.hpp"

namespace burgers2d {

std::vector<double> fd4_line_derivative(std::span<const double> f, double h) {
    const size_t n = f.size();
    if (n < 5) throw std::invalid_argument("fd4_line_derivative: need at least 5 nodes");
    std::vector<double> d(n);
    const double w = 1.0 / (12.0 * h);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * w;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * w;
    for (size_t i = 2; i + 2 < n; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * w;
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * w;
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * w;
    return d;
}

namespace {

// Line derivative for the Newton internals: fourth order when the line is
// long enough, second order on the short lines that only appear in reduced
// test systems.
std::vector<double> line_derivative_any(std::span<const double> f, double h) {
    const size_t n = f.size();
    if (n >= 5) return fd4_line_derivative(f, h);
    if (n < 2) throw std::invalid_argument("line derivative: need at least 2 nodes");
    std::vector<double> d(n);
    if (n == 2) {
        d[0] = d[1] = (f[1] - f[0]) / h;
        return d;
    }
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

// Derivative along i for every row j.
Field2D fd4_rows(const Field2D& f, double h) {
    Field2D d(f.nx, f.ny);
    std::vector<double> line(f.nx);
    for (int j = 0; j < f.ny; ++j) {
        for (int i = 0; i < f.nx; ++i) line[i] = f(i, j);
        const std::vector<double> dl = fd4_line_derivative(line, h);
        for (int i = 0; i < f.nx; ++i) d(i, j) = dl[i];
    }
    return d;
}

// Derivative along j for every column i.
Field2D fd4_cols(const Field2D& f, double h) {
    Field2D d(f.nx, f.ny);
    std::vector<double> line(f.ny);
    for (int i = 0; i < f.nx; ++i) {
        for (int j = 0; j < f.ny; ++j) line[j] = f(i, j);
        const std::vector<double> dl = fd4_line_derivative(line, h);
        for (int j = 0; j < f.ny; ++j) d(i, j) = dl[j];
    }
    return d;
}

}  // namespace

SourceField compute_g_sources(const FieldPair& fields, const RunParams& params, const Grid2D& grid) {
    const double nu = params.nu;
    const Field2D uy = fd4_cols(fields.u, grid.dy);
    const Field2D vy = fd4_cols(fields.v, grid.dy);
    Field2D flux1(fields.u.nx, fields.u.ny), flux2(fields.u.nx, fields.u.ny);
    for (size_t k = 0; k < flux1.data.size(); ++k) {
        flux1.data[k] = nu * uy.data[k] - fields.u.data[k] * fields.v.data[k];
        flux2.data[k] = nu * vy.data[k] - 0.5 * fields.v.data[k] * fields.v.data[k];
    }
    SourceField s;
    s.s1 = fd4_cols(flux1, grid.dy);
    for (size_t k = 0; k < s.s1.data.size(); ++k)
        s.s1.data[k] += fields.u.data[k] * vy.data[k];
    s.s2 = fd4_cols(flux2, grid.dy);
    s.s1_deriv = fd4_rows(s.s1, grid.dx);
    s.s2_deriv = fd4_rows(s.s2, grid.dx);
    return s;
}

SourceField compute_f_sources(const FieldPair& fields, const RunParams& params, const Grid2D& grid) {
    const double nu = params.nu;
    const Field2D ux = fd4_rows(fields.u, grid.dx);
    const Field2D vx = fd4_rows(fields.v, grid.dx);
    Field2D flux1(fields.u.nx, fields.u.ny), flux2(fields.u.nx, fields.u.ny);
    for (size_t k = 0; k < flux1.data.size(); ++k) {
        flux1.data[k] = nu * ux.data[k] - 0.5 * fields.u.data[k] * fields.u.data[k];
        flux2.data[k] = nu * vx.data[k] - fields.u.data[k] * fields.v.data[k];
    }
    SourceField s;
    s.s1 = fd4_rows(flux1, grid.dx);
    s.s2 = fd4_rows(flux2, grid.dx);
    for (size_t k = 0; k < s.s2.data.size(); ++k)
        s.s2.data[k] += fields.v.data[k] * ux.data[k];
    s.s1_deriv = fd4_cols(s.s1, grid.dy);
    s.s2_deriv = fd4_cols(s.s2, grid.dy);
    return s;
}

QTriple q_triple(const NodeState& s, double p_deriv, const NodePrev& prev,
                 double alpha, double nu) {
    QTriple t;
    t.q[0] = nu * s.P - 0.5 * s.U * s.U;
    t.q[1] = nu * s.R - s.U * s.V;
    t.q[2] = nu * s.U;
    t.q[3] = nu * s.V;

    t.qx[0] = alpha * s.U - (prev.s1 + alpha * prev.u);
    t.qx[1] = alpha * s.V - s.V * s.P - (prev.s2 + alpha * prev.v);
    t.qx[2] = nu * s.P;
    t.qx[3] = nu * s.R;

    t.qxx[0] = alpha * s.P - (alpha * prev.p + prev.s1d);
    t.qxx[1] = alpha * s.R - s.V * p_deriv - s.P * s.R - (alpha * prev.r + prev.s2d);
    t.qxx[2] = alpha * s.U + s.U * s.P - (alpha * prev.u + prev.s1);
    t.qxx[3] = alpha * s.V + s.U * s.R - (alpha * prev.v + prev.s2);
    return t;
}

Vec4 pade_residual(const QTriple& qL, const QTriple& qR, double h, const OneStepParams& p) {
    if (!(h > 0.0)) throw std::invalid_argument("pade_residual: h must be positive");
    Vec4 r;
    for (int k = 0; k < 4; ++k)
        r[k] = (qR.q[k] - qL.q[k])
             - 0.5 * h * ((1.0 + p.a) * qR.qx[k] + (1.0 - p.a) * qL.qx[k])
             + 0.25 * h * h * ((p.b + p.a) * qR.qxx[k] - (p.b - p.a) * qL.qxx[k]);
    return r;
}

namespace {

// Jacobians of (q, qx, qxx) at one node with respect to (U, V, P, R);
// p_deriv enters qxx[1] as a frozen value.
struct NodeJacobian {
    Mat4 dq, dqx, dqxx;
};

NodeJacobian node_jacobian(const NodeState& s, double p_deriv, double alpha, double nu) {
    NodeJacobian j;
    j.dq(0, 0) = -s.U;               j.dq(0, 2) = nu;
    j.dq(1, 0) = -s.V;  j.dq(1, 1) = -s.U;           j.dq(1, 3) = nu;
    j.dq(2, 0) = nu;
    j.dq(3, 1) = nu;

    j.dqx(0, 0) = alpha;
    j.dqx(1, 1) = alpha - s.P;  j.dqx(1, 2) = -s.V;
    j.dqx(2, 2) = nu;
    j.dqx(3, 3) = nu;

    j.dqxx(0, 2) = alpha;
    j.dqxx(1, 1) = -p_deriv;  j.dqxx(1, 2) = -s.R;  j.dqxx(1, 3) = alpha - s.P;
    j.dqxx(2, 0) = alpha + s.P;  j.dqxx(2, 2) = s.U;
    j.dqxx(3, 0) = s.R;  j.dqxx(3, 1) = alpha;  j.dqxx(3, 3) = s.U;
    return j;
}

// Fourth-order member: relation derivative w.r.t. the right / left node.
Mat4 interval_jacobian_right(const NodeJacobian& j, double h) {
    return j.dq - (0.5 * h) * j.dqx + (h * h / 12.0) * j.dqxx;
}

Mat4 interval_jacobian_left(const NodeJacobian& j, double h) {
    return (-1.0) * j.dq - (0.5 * h) * j.dqx - (h * h / 12.0) * j.dqxx;
}

// Each interval distributes relations {0,1} to its left block row and {2,3}
// to the right one. The final interval flips so that both end rows receive
// relations with strong coupling to their derivative unknowns (the end rows
// also carry the Dirichlet identities).
struct RowSlot {
    int block, sub;
};

RowSlot relation_slot(int n_intervals, int interval, int rel) {
    const bool flipped = (n_intervals >= 2 && interval == n_intervals - 1);
    const bool to_left = flipped ? rel >= 2 : rel < 2;
    if (to_left) return {interval, 2 + (flipped ? rel - 2 : rel)};
    return {interval + 1, flipped ? rel : rel - 2};
}

struct AssembledLine {
    BlockTridiagSystem sys;
    double residual_inf = 0.0;
};

NodePrev node_prev(const LineLevelData& prev, size_t i) {
    return {prev.u[i], prev.v[i], prev.p[i], prev.r[i],
            prev.s1[i], prev.s2[i], prev.s1d[i], prev.s2d[i]};
}

NodeState node_state(const SweepLine& s, size_t i) {
    return {s.U[i], s.V[i], s.P[i], s.R[i]};
}

AssembledLine assemble_line(const SweepLine& state, const LineLevelData& prev,
                            const std::vector<double>& p_deriv,
                            double h, double alpha, double nu) {
    const size_t n = state.nodes();
    const int k = static_cast<int>(n) - 1;  // intervals
    AssembledLine out;
    out.sys.resize(n);

    std::vector<QTriple> q(n);
    std::vector<NodeJacobian> nj(n);
    for (size_t i = 0; i < n; ++i) {
        const NodeState s = node_state(state, i);
        q[i] = q_triple(s, p_deriv[i], node_prev(prev, i), alpha, nu);
        nj[i] = node_jacobian(s, p_deriv[i], alpha, nu);
    }

    // Dirichlet identities for U and V at both ends; residual zero because
    // iterates keep the boundary values pinned.
    out.sys.b[0](0, 0) = 1.0;
    out.sys.b[0](1, 1) = 1.0;
    out.sys.b[k](2, 0) = 1.0;
    out.sys.b[k](3, 1) = 1.0;

    const OneStepParams fourth_order{};
    for (int t = 0; t < k; ++t) {
        const Vec4 res = pade_residual(q[t], q[t + 1], h, fourth_order);
        out.residual_inf = std::max(out.residual_inf, max_abs(res));
        const Mat4 jl = interval_jacobian_left(nj[t], h);
        const Mat4 jr = interval_jacobian_right(nj[t + 1], h);
        for (int rel = 0; rel < 4; ++rel) {
            const RowSlot slot = relation_slot(k, t, rel);
            out.sys.r[slot.block][slot.sub] = -res[rel];
            Mat4& left_cols = (slot.block == t) ? out.sys.b[slot.block] : out.sys.a[slot.block];
            Mat4& right_cols = (slot.block == t) ? out.sys.c[slot.block] : out.sys.b[slot.block];
            for (int cc = 0; cc < 4; ++cc) {
                left_cols(slot.sub, cc) = jl(rel, cc);
                right_cols(slot.sub, cc) = jr(rel, cc);
            }
        }
    }
    return out;
}

// Sensitivity of the relation residuals to the p_deriv values that the
// Jacobian holds frozen: used to polish each Newton update by iterative
// refinement through the factored block system, which restores quadratic
// convergence without widening the band.
void frozen_term_correction(const SweepLine& state, const std::vector<Vec4>& delta,
                            double h, std::vector<Vec4>& out) {
    const size_t n = state.nodes();
    const int k = static_cast<int>(n) - 1;
    std::vector<double> dp(n);
    for (size_t i = 0; i < n; ++i) dp[i] = delta[i][2];
    const std::vector<double> d_pderiv = line_derivative_any(dp, h);
    for (auto& v : out) v = Vec4{};
    const double w = h * h / 12.0;
    for (int t = 0; t < k; ++t) {
        const double term = w * (-state.V[t + 1] * d_pderiv[t + 1] + state.V[t] * d_pderiv[t]);
        const RowSlot slot = relation_slot(k, t, 1);
        out[slot.block][slot.sub] += term;
    }
}

struct LineProblem {
    LineLevelData prev;
    double h = 0.0, alpha = 0.0, nu = 0.0;
    double bc_lo_u = 0.0, bc_lo_v = 0.0, bc_hi_u = 0.0, bc_hi_v = 0.0;
    int line_index = 0;
};

int newton_solve_line(const LineProblem& pb, SweepLine& state, const RunParams& params,
                      NewtonLineStats* stats) {
    const size_t n = state.nodes();
    const int last = static_cast<int>(n) - 1;
    state.U[0] = pb.bc_lo_u;
    state.V[0] = pb.bc_lo_v;
    state.U[last] = pb.bc_hi_u;
    state.V[last] = pb.bc_hi_v;

    int iter = 0;
    for (; iter < params.newton_max_iters; ++iter) {
        const std::vector<double> p_deriv = line_derivative_any(state.P, pb.h);
        const AssembledLine asm_line = assemble_line(state, pb.prev, p_deriv, pb.h, pb.alpha, pb.nu);
        if (stats) stats->residual_history.push_back(asm_line.residual_inf);

        BlockTridiagFactorization fact;
        fact.factor(asm_line.sys);
        std::vector<Vec4> delta = fact.solve(asm_line.sys.r);

        // Refinement against the frozen-derivative coupling.
        std::vector<Vec4> corr(n), rhs(n);
        for (int refine = 0; refine < 6; ++refine) {
            frozen_term_correction(state, delta, pb.h, corr);
            for (size_t i = 0; i < n; ++i) rhs[i] = asm_line.sys.r[i] - corr[i];
            std::vector<Vec4> next = fact.solve(rhs);
            double change = 0.0;
            for (size_t i = 0; i < n; ++i) change = std::max(change, max_abs(next[i] - delta[i]));
            delta = std::move(next);
            if (change <= 0.01 * params.newton_tol) break;
        }

        double step = 0.0;
        for (size_t i = 0; i < n; ++i) {
            state.U[i] += delta[i][0];
            state.V[i] += delta[i][1];
            state.P[i] += delta[i][2];
            state.R[i] += delta[i][3];
            step = std::max(step, max_abs(delta[i]));
        }
        // The identity rows make the boundary increments vanish only up to
        // roundoff; keep the pinned values exact.
        state.U[0] = pb.bc_lo_u;
        state.V[0] = pb.bc_lo_v;
        state.U[last] = pb.bc_hi_u;
        state.V[last] = pb.bc_hi_v;
        if (step <= params.newton_tol) {
            ++iter;
            break;
        }
        if (iter + 1 == params.newton_max_iters) {
            const double res = assemble_line(state, pb.prev, line_derivative_any(state.P, pb.h),
                                             pb.h, pb.alpha, pb.nu)
                                   .residual_inf;
            if (res > params.newton_tol)
                throw NewtonDiverged(pb.line_index, res,
                                     "Newton failed to converge on line " +
                                         std::to_string(pb.line_index) + ", residual " +
                                         std::to_string(res));
            ++iter;
            break;
        }
    }
    if (stats) {
        stats->line = pb.line_index;
        stats->iterations = iter;
    }
    return iter;
}

double sweep_alpha(const RunParams& params) {
    const double tau =
        params.alpha_convention == AlphaConvention::kFullStep ? params.dt : 0.5 * params.dt;
    return 1.0 / tau;
}

void check_params(const RunParams& params) {
    if (!(params.nu > 0.0)) throw std::invalid_argument("compact ADI requires nu > 0");
    if (!(params.dt > 0.0)) throw std::invalid_argument("compact ADI requires dt > 0");
}

void check_sweep_finite(const FieldPair& f, const char* which) {
    if (!f.u.all_finite() || !f.v.all_finite())
        throw NonFinite(std::string(which) + " produced non-finite fields");
}

}  // namespace

BlockTridiagSystem assemble_newton_system(const SweepLine& state, const LineLevelData& prev,
                                          double h, double alpha, double nu) {
    return assemble_line(state, prev, line_derivative_any(state.P, h), h, alpha, nu).sys;
}

int SweepStats::max_iterations() const {
    int m = 0;
    for (const auto& l : lines) m = std::max(m, l.iterations);
    return m;
}

DerivFields init_derivative_fields(const FieldPair& fields, const Grid2D& grid) {
    DerivFields d;
    d.ux = fd4_rows(fields.u, grid.dx);
    d.vx = fd4_rows(fields.v, grid.dx);
    d.uy = fd4_cols(fields.u, grid.dy);
    d.vy = fd4_cols(fields.v, grid.dy);
    return d;
}

SweepResult x_sweep(const FieldPair& fields, const RunParams& params, const Grid2D& grid,
                    const DirichletBoundary& bc, const DerivFields* prev_derivs,
                    SweepStats* stats, int threads) {
    check_params(params);
    const int N = grid.N, M = grid.M;
    const double alpha = sweep_alpha(params);
    const SourceField src = compute_g_sources(fields, params, grid);

    Field2D ux, vx;
    if (prev_derivs) {
        ux = prev_derivs->ux;
        vx = prev_derivs->vx;
    } else {
        ux = fd4_rows(fields.u, grid.dx);
        vx = fd4_rows(fields.v, grid.dx);
    }

    SweepResult out;
    out.fields = fields;
    out.fields.t = fields.t + 0.5 * params.dt;
    out.d1 = Field2D(N + 1, M + 1);
    out.d2 = Field2D(N + 1, M + 1);
    if (stats) stats->lines.assign(M - 1, NewtonLineStats{});

    parallel_for(M - 1,
                 [&](int jj) {
                     const int j = jj + 1;
                     const double y = grid.node_y(j);
                     const size_t n = static_cast<size_t>(N) + 1;
                     LineProblem pb;
                     pb.h = grid.dx;
                     pb.alpha = alpha;
                     pb.nu = params.nu;
                     pb.line_index = j;
                     pb.bc_lo_u = bc.u_left(y);
                     pb.bc_hi_u = bc.u_right(y);
                     pb.bc_lo_v = bc.v_left(y);
                     pb.bc_hi_v = bc.v_right(y);
                     pb.prev.u.resize(n);
                     pb.prev.v.resize(n);
                     pb.prev.p.resize(n);
                     pb.prev.r.resize(n);
                     pb.prev.s1.resize(n);
                     pb.prev.s2.resize(n);
                     pb.prev.s1d.resize(n);
                     pb.prev.s2d.resize(n);
                     for (int i = 0; i <= N; ++i) {
                         pb.prev.u[i] = fields.u(i, j);
                         pb.prev.v[i] = fields.v(i, j);
                         pb.prev.p[i] = ux(i, j);
                         pb.prev.r[i] = vx(i, j);
                         pb.prev.s1[i] = src.s1(i, j);
                         pb.prev.s2[i] = src.s2(i, j);
                         pb.prev.s1d[i] = src.s1_deriv(i, j);
                         pb.prev.s2d[i] = src.s2_deriv(i, j);
                     }
                     SweepLine line{pb.prev.u, pb.prev.v, pb.prev.p, pb.prev.r,
                                    SweepDirection::kX};
                     newton_solve_line(pb, line, params, stats ? &stats->lines[jj] : nullptr);
                     for (int i = 0; i <= N; ++i) {
                         out.fields.u(i, j) = line.U[i];
                         out.fields.v(i, j) = line.V[i];
                         out.d1(i, j) = line.P[i];
                         out.d2(i, j) = line.R[i];
                     }
                 },
                 threads);

    apply_dirichlet_inplace(out.fields, bc, grid);
    for (int j : {0, M})
        for (int i = 0; i <= N; ++i) {
            out.d1(i, j) = ux(i, j);
            out.d2(i, j) = vx(i, j);
        }
    check_sweep_finite(out.fields, "x-sweep");
    return out;
}

SweepResult y_sweep(const FieldPair& fields, const RunParams& params, const Grid2D& grid,
                    const DirichletBoundary& bc, const DerivFields* prev_derivs,
                    SweepStats* stats, int threads) {
    check_params(params);
    const int N = grid.N, M = grid.M;
    const double alpha = sweep_alpha(params);
    const SourceField src = compute_f_sources(fields, params, grid);

    Field2D uy, vy;
    if (prev_derivs) {
        uy = prev_derivs->uy;
        vy = prev_derivs->vy;
    } else {
        uy = fd4_cols(fields.u, grid.dy);
        vy = fd4_cols(fields.v, grid.dy);
    }

    SweepResult out;
    out.fields = fields;
    out.fields.t = fields.t + 0.5 * params.dt;
    out.d1 = Field2D(N + 1, M + 1);  // u_y
    out.d2 = Field2D(N + 1, M + 1);  // v_y
    if (stats) stats->lines.assign(N - 1, NewtonLineStats{});

    // Along a column the roles swap: v carries the pure-square flux and u the
    // coupled one, so v maps onto the kernel's U slot and u onto V.
    parallel_for(N - 1,
                 [&](int ii) {
                     const int i = ii + 1;
                     const double x = grid.node_x(i);
                     const size_t n = static_cast<size_t>(M) + 1;
                     LineProblem pb;
                     pb.h = grid.dy;
                     pb.alpha = alpha;
                     pb.nu = params.nu;
                     pb.line_index = i;
                     pb.bc_lo_u = bc.v_bottom(x);
                     pb.bc_hi_u = bc.v_top(x);
                     pb.bc_lo_v = bc.u_bottom(x);
                     pb.bc_hi_v = bc.u_top(x);
                     pb.prev.u.resize(n);
                     pb.prev.v.resize(n);
                     pb.prev.p.resize(n);
                     pb.prev.r.resize(n);
                     pb.prev.s1.resize(n);
                     pb.prev.s2.resize(n);
                     pb.prev.s1d.resize(n);
                     pb.prev.s2d.resize(n);
                     for (int j = 0; j <= M; ++j) {
                         pb.prev.u[j] = fields.v(i, j);
                         pb.prev.v[j] = fields.u(i, j);
                         pb.prev.p[j] = vy(i, j);
                         pb.prev.r[j] = uy(i, j);
                         pb.prev.s1[j] = src.s2(i, j);
                         pb.prev.s2[j] = src.s1(i, j);
                         pb.prev.s1d[j] = src.s2_deriv(i, j);
                         pb.prev.s2d[j] = src.s1_deriv(i, j);
                     }
                     SweepLine line{pb.prev.u, pb.prev.v, pb.prev.p, pb.prev.r,
                                    SweepDirection::kY};
                     newton_solve_line(pb, line, params, stats ? &stats->lines[ii] : nullptr);
                     for (int j = 0; j <= M; ++j) {
                         out.fields.v(i, j) = line.U[j];
                         out.fields.u(i, j) = line.V[j];
                         out.d2(i, j) = line.P[j];
                         out.d1(i, j) = line.R[j];
                     }
                 },
                 threads);

    apply_dirichlet_inplace(out.fields, bc, grid);
    for (int i : {0, N})
        for (int j = 0; j <= M; ++j) {
            out.d1(i, j) = uy(i, j);
            out.d2(i, j) = vy(i, j);
        }
    check_sweep_finite(out.fields, "y-sweep");
    return out;
}

FieldPair full_step(const FieldPair& fields, const RunParams& params, const Grid2D& grid,
                    const DirichletBoundary& bc, StepStats* stats, int threads) {
    SweepResult half = x_sweep(fields, params, grid, bc, nullptr, stats ? &stats->x : nullptr, threads);
    SweepResult full = y_sweep(half.fields, params, grid, bc, nullptr, stats ? &stats->y : nullptr, threads);
    full.fields.t = fields.t + params.dt;
    return full.fields;
}

}  // namespace burgers2d
