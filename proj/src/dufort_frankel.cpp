#include "burgers2d/dufort_frankel.hpp"

#include <cmath>

namespace burgers2d {

namespace {

constexpr double kBlowupGuard = 1e10;

void check_finite(const FieldPair& f, double t) {
    if (!f.u.all_finite() || !f.v.all_finite() ||
        f.u.max_abs() > kBlowupGuard || f.v.max_abs() > kBlowupGuard)
        throw NonFinite("explicit step blew up near t = " + std::to_string(t));
}

}  // namespace

DffCoefficients dff_coefficients(double cx, double cy, double dx, double dy) {
    DffCoefficients k;
    k.Q = 1.0 + 2.5 * dx + 2.5 * dy;
    const double q6 = 6.0 * k.Q;
    k.A = (1.0 - 2.5 * dx - 2.5 * dy) / k.Q;
    k.B = (cx - dx) / q6;
    k.C = (-8.0 * cx + 16.0 * dx) / q6;
    k.D = (8.0 * cx + 16.0 * dx) / q6;
    k.E = -(cx + dx) / q6;
    k.F = (cy - dy) / q6;
    k.G = (-8.0 * cy + 16.0 * dy) / q6;
    k.H = (8.0 * cy + 16.0 * dy) / q6;
    k.L = -(cy + dy) / q6;
    return k;
}

FieldPair dff_step(const FieldPair& prev, const FieldPair& curr,
                   const RunParams& params, const Grid2D& grid,
                   const DirichletBoundary& bc) {
    if (!prev.u.matches(grid) || !curr.u.matches(grid))
        throw std::invalid_argument("dff_step: field shape does not match grid");
    if (!(params.nu > 0.0) || !(params.dt > 0.0))
        throw std::invalid_argument("dff_step: requires nu > 0 and dt > 0");
    const int N = grid.N, M = grid.M;
    FieldPair next(grid);
    next.t = curr.t + params.dt;

    auto update = [&](const Field2D& pc, const Field2D& cc, Field2D& nc,
                      int i, int j, double cx, double cy, double dx, double dy) {
        if (i >= 2 && i <= N - 2 && j >= 2 && j <= M - 2) {
            const DffCoefficients k = dff_coefficients(cx, cy, dx, dy);
            nc(i, j) = k.A * pc(i, j)
                     + k.B * cc(i + 2, j) + k.C * cc(i + 1, j)
                     + k.D * cc(i - 1, j) + k.E * cc(i - 2, j)
                     + k.F * cc(i, j + 2) + k.G * cc(i, j + 1)
                     + k.H * cc(i, j - 1) + k.L * cc(i, j - 2);
        } else {
            // One layer from the boundary: classical three-point scheme.
            const double q = 1.0 + 2.0 * dx + 2.0 * dy;
            nc(i, j) = ((1.0 - 2.0 * dx - 2.0 * dy) * pc(i, j)
                      + (2.0 * dx - cx) * cc(i + 1, j) + (2.0 * dx + cx) * cc(i - 1, j)
                      + (2.0 * dy - cy) * cc(i, j + 1) + (2.0 * dy + cy) * cc(i, j - 1)) / q;
        }
    };

    for (int j = 1; j < M; ++j)
        for (int i = 1; i < N; ++i) {
            const LocalCoefficients lc =
                local_coefficients(curr.u(i, j), curr.v(i, j), params, grid);
            update(prev.u, curr.u, next.u, i, j, lc.cx, lc.cy, lc.dx, lc.dy);
            update(prev.v, curr.v, next.v, i, j, lc.cx, lc.cy, lc.dx, lc.dy);
        }

    apply_dirichlet_inplace(next, bc, grid);
    check_finite(next, next.t);
    return next;
}

FieldPair dff_bootstrap(const FieldPair& initial, const RunParams& params,
                        const Grid2D& grid, const DirichletBoundary& bc) {
    if (!(params.nu > 0.0) || !(params.dt > 0.0))
        throw std::invalid_argument("dff_bootstrap: requires nu > 0 and dt > 0");
    const int N = grid.N, M = grid.M;
    const double hx = grid.dx, hy = grid.dy, nu = params.nu;
    FieldPair next(grid);
    next.t = initial.t + params.dt;

    auto rhs = [&](const Field2D& f, int i, int j, double u, double v) {
        double fx, fy, fxx, fyy;
        if (i >= 2 && i <= N - 2) {
            fx = (f(i - 2, j) - 8.0 * f(i - 1, j) + 8.0 * f(i + 1, j) - f(i + 2, j)) / (12.0 * hx);
            fxx = (-f(i + 2, j) + 16.0 * f(i + 1, j) - 30.0 * f(i, j) + 16.0 * f(i - 1, j) - f(i - 2, j)) /
                  (12.0 * hx * hx);
        } else {
            fx = (f(i + 1, j) - f(i - 1, j)) / (2.0 * hx);
            fxx = (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) / (hx * hx);
        }
        if (j >= 2 && j <= M - 2) {
            fy = (f(i, j - 2) - 8.0 * f(i, j - 1) + 8.0 * f(i, j + 1) - f(i, j + 2)) / (12.0 * hy);
            fyy = (-f(i, j + 2) + 16.0 * f(i, j + 1) - 30.0 * f(i, j) + 16.0 * f(i, j - 1) - f(i, j - 2)) /
                  (12.0 * hy * hy);
        } else {
            fy = (f(i, j + 1) - f(i, j - 1)) / (2.0 * hy);
            fyy = (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) / (hy * hy);
        }
        return -u * fx - v * fy + nu * (fxx + fyy);
    };

    for (int j = 1; j < M; ++j)
        for (int i = 1; i < N; ++i) {
            const double u = initial.u(i, j), v = initial.v(i, j);
            next.u(i, j) = u + params.dt * rhs(initial.u, i, j, u, v);
            next.v(i, j) = v + params.dt * rhs(initial.v, i, j, u, v);
        }

    apply_dirichlet_inplace(next, bc, grid);
    check_finite(next, next.t);
    return next;
}

}  // namespace burgers2d
