#include "burgers2d/grid.hpp"

#include <cmath>
#include <utility>

namespace burgers2d {

Grid2D build_grid(double x0, double xN, int N, double y0, double yM, int M) {
    if (!(xN > x0) || !(yM > y0))
        throw std::invalid_argument("build_grid: degenerate domain extents");
    if (N < 4 || M < 4)
        throw std::invalid_argument("build_grid: N and M must be >= 4 (stencil underflow)");
    Grid2D g;
    g.x0 = x0;
    g.xN = xN;
    g.y0 = y0;
    g.yM = yM;
    g.N = N;
    g.M = M;
    g.dx = (xN - x0) / N;
    g.dy = (yM - y0) / M;
    return g;
}

bool Field2D::all_finite() const {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

double Field2D::max_abs() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, std::abs(v));
    return m;
}

DirichletBoundary::DirichletBoundary(const Grid2D& grid,
                                     Profile u_left_, Profile u_right_, Profile u_bottom_, Profile u_top_,
                                     Profile v_left_, Profile v_right_, Profile v_bottom_, Profile v_top_)
    : u_left(std::move(u_left_)), u_right(std::move(u_right_)),
      u_bottom(std::move(u_bottom_)), u_top(std::move(u_top_)),
      v_left(std::move(v_left_)), v_right(std::move(v_right_)),
      v_bottom(std::move(v_bottom_)), v_top(std::move(v_top_)) {
    const double tol = 1e-12;
    auto check = [&](double a, double b, const char* corner) {
        if (std::abs(a - b) > tol)
            throw std::invalid_argument(std::string("DirichletBoundary: profiles disagree at corner ") + corner);
    };
    check(u_left(grid.y0), u_bottom(grid.x0), "(x0,y0) for u");
    check(u_left(grid.yM), u_top(grid.x0), "(x0,yM) for u");
    check(u_right(grid.y0), u_bottom(grid.xN), "(xN,y0) for u");
    check(u_right(grid.yM), u_top(grid.xN), "(xN,yM) for u");
    check(v_left(grid.y0), v_bottom(grid.x0), "(x0,y0) for v");
    check(v_left(grid.yM), v_top(grid.x0), "(x0,yM) for v");
    check(v_right(grid.y0), v_bottom(grid.xN), "(xN,y0) for v");
    check(v_right(grid.yM), v_top(grid.xN), "(xN,yM) for v");
}

DirichletBoundary DirichletBoundary::zero(const Grid2D& grid) {
    auto z = [](double) { return 0.0; };
    return DirichletBoundary(grid, z, z, z, z, z, z, z, z);
}

void apply_dirichlet_inplace(FieldPair& fields, const DirichletBoundary& bc, const Grid2D& grid) {
    if (!fields.u.matches(grid) || !fields.v.matches(grid))
        throw std::invalid_argument("apply_dirichlet: field shape does not match grid");
    const int N = grid.N, M = grid.M;
    // y-edges first, x-edges second: corners end up with the x-edge value.
    for (int i = 0; i <= N; ++i) {
        const double x = grid.node_x(i);
        fields.u(i, 0) = bc.u_bottom(x);
        fields.u(i, M) = bc.u_top(x);
        fields.v(i, 0) = bc.v_bottom(x);
        fields.v(i, M) = bc.v_top(x);
    }
    for (int j = 0; j <= M; ++j) {
        const double y = grid.node_y(j);
        fields.u(0, j) = bc.u_left(y);
        fields.u(N, j) = bc.u_right(y);
        fields.v(0, j) = bc.v_left(y);
        fields.v(N, j) = bc.v_right(y);
    }
}

FieldPair apply_dirichlet(FieldPair fields, const DirichletBoundary& bc, const Grid2D& grid) {
    apply_dirichlet_inplace(fields, bc, grid);
    return fields;
}

LocalCoefficients local_coefficients(double u_ij, double v_ij,
                                     const RunParams& params, const Grid2D& grid) {
    LocalCoefficients c;
    c.cx = u_ij * params.dt / grid.dx;
    c.cy = v_ij * params.dt / grid.dy;
    c.dx = params.nu * params.dt / (grid.dx * grid.dx);
    c.dy = params.nu * params.dt / (grid.dy * grid.dy);
    return c;
}

}  // namespace burgers2d
