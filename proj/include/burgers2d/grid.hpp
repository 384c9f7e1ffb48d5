#pragma once

#include <functional>
#include <vector>

#include "burgers2d/errors.hpp"

namespace burgers2d {

/// Uniform node-centered lattice on [x0,xN] x [y0,yM] with N x M cells.
struct Grid2D {
    double x0 = 0.0, xN = 1.0;
    double y0 = 0.0, yM = 1.0;
    int N = 0, M = 0;
    double dx = 0.0, dy = 0.0;

    // Coordinates are formed multiplicatively so node(N) lands on xN up to
    // one rounding, with no accumulated summation drift.
    double node_x(int i) const { return x0 + i * dx; }
    double node_y(int j) const { return y0 + j * dy; }
};

Grid2D build_grid(double x0, double xN, int N, double y0, double yM, int M);

/// Dense scalar lattice of (N+1) x (M+1) nodal values, contiguous in i.
struct Field2D {
    int nx = 0, ny = 0;
    std::vector<double> data;

    Field2D() = default;
    Field2D(int nx_, int ny_, double value = 0.0)
        : nx(nx_), ny(ny_), data(static_cast<size_t>(nx_) * ny_, value) {}

    double& operator()(int i, int j) { return data[static_cast<size_t>(j) * nx + i]; }
    double operator()(int i, int j) const { return data[static_cast<size_t>(j) * nx + i]; }

    bool matches(const Grid2D& g) const { return nx == g.N + 1 && ny == g.M + 1; }
    bool all_finite() const;
    double max_abs() const;
};

/// The (u,v) velocity pair at one time level.
struct FieldPair {
    Field2D u, v;
    double t = 0.0;

    FieldPair() = default;
    FieldPair(const Grid2D& g, double value = 0.0)
        : u(g.N + 1, g.M + 1, value), v(g.N + 1, g.M + 1, value) {}
};

/// Time-independent Dirichlet edge profiles for u and v. Each profile is a
/// function of the coordinate that varies along its edge. Construction
/// verifies that profiles meeting at a corner agree there.
struct DirichletBoundary {
    using Profile = std::function<double(double)>;

    Profile u_left, u_right, u_bottom, u_top;  // u(x0,y), u(xN,y), u(x,y0), u(x,yM)
    Profile v_left, v_right, v_bottom, v_top;

    DirichletBoundary(const Grid2D& grid,
                      Profile u_left_, Profile u_right_, Profile u_bottom_, Profile u_top_,
                      Profile v_left_, Profile v_right_, Profile v_bottom_, Profile v_top_);

    static DirichletBoundary zero(const Grid2D& grid);
};

void apply_dirichlet_inplace(FieldPair& fields, const DirichletBoundary& bc, const Grid2D& grid);
FieldPair apply_dirichlet(FieldPair fields, const DirichletBoundary& bc, const Grid2D& grid);

enum class AlphaConvention {
    kFullStep,  // per-sweep time increment = dt
    kHalfStep,  // per-sweep time increment = dt/2
};

struct RunParams {
    double nu = 0.0;  // 1/Re
    double dt = 0.0;
    double t_end = 0.0;
    double newton_tol = 1e-10;
    int newton_max_iters = 25;
    AlphaConvention alpha_convention = AlphaConvention::kHalfStep;
};

struct LocalCoefficients {
    double cx, cy;  // Courant numbers u*dt/dx, v*dt/dy
    double dx, dy;  // diffusion numbers nu*dt/dx^2, nu*dt/dy^2
};

LocalCoefficients local_coefficients(double u_ij, double v_ij,
                                     const RunParams& params, const Grid2D& grid);

}  // namespace burgers2d
