#pragma once

#include <span>
#include <vector>

#include "burgers2d/block_linalg.hpp"
#include "burgers2d/grid.hpp"

namespace burgers2d {

/// Free parameters of the two-point one-step family. (0, 1/3) is the
/// fourth-order member used by the production path; a > 0 drops the order
/// to three and exists for the order-verification tests.
struct OneStepParams {
    double a = 0.0;
    double b = 1.0 / 3.0;
};

/// Fourth-order first derivative along a line: centered five-point formula in
/// the interior, one-sided five-point formulas at the first and last two
/// nodes. Exact on polynomials of degree <= 4.
std::vector<double> fd4_line_derivative(std::span<const double> values, double h);

/// Source terms for one sweep direction, sampled on the full lattice.
/// s1, s2 feed the first/second momentum equations of the sweep; s1_deriv and
/// s2_deriv are their derivatives along the sweep direction.
struct SourceField {
    Field2D s1, s2, s1_deriv, s2_deriv;
};

/// x-sweep sources (g1, g2 and their x-derivatives), built from level-n
/// fields: g1 = d/dy(nu u_y - u v) + u v_y, g2 = d/dy(nu v_y - v^2/2).
SourceField compute_g_sources(const FieldPair& fields, const RunParams& params, const Grid2D& grid);

/// y-sweep sources (f1, f2 and their y-derivatives), the x/y mirror:
/// f1 = d/dx(nu u_x - u^2/2), f2 = d/dx(nu v_x - u v) + v u_x.
SourceField compute_f_sources(const FieldPair& fields, const RunParams& params, const Grid2D& grid);

enum class SweepDirection { kX, kY };

/// Unknowns along one grid line. U, V are the velocities; P, R are the
/// line-direction derivative unknowns (u_x, v_x in the x-sweep; the roles
/// swap in the y-sweep). Boundary U, V hold the Dirichlet data of the line.
struct SweepLine {
    std::vector<double> U, V, P, R;
    SweepDirection direction = SweepDirection::kX;

    size_t nodes() const { return U.size(); }
};

/// Previous-level data and sources restricted to one line, in the same role
/// convention as SweepLine.
struct LineLevelData {
    std::vector<double> u, v, p, r;
    std::vector<double> s1, s2, s1d, s2d;
};

struct NodeState {
    double U, V, P, R;
};

struct NodePrev {
    double u, v, p, r;
    double s1, s2, s1d, s2d;
};

/// The flux vector Q and its first/second line-direction derivatives at one
/// node, with time derivatives discretized as alpha * (value - previous).
/// p_deriv is the finite-difference derivative of the current P iterate,
/// held fixed within a Newton linearization.
struct QTriple {
    Vec4 q, qx, qxx;
};

QTriple q_triple(const NodeState& s, double p_deriv, const NodePrev& prev,
                 double alpha, double nu);

/// Two-point relation residual on the interval (L, R).
Vec4 pade_residual(const QTriple& qL, const QTriple& qR, double h, const OneStepParams& one_step);

/// Linearized system for one Newton update of a line. Each interval's four
/// relations are split two-and-two between the adjacent node-centered block
/// rows; the end rows carry the Dirichlet identities for U and V while the
/// derivative unknowns there stay active. Right-hand side is the negative
/// residual of the current iterate.
BlockTridiagSystem assemble_newton_system(const SweepLine& state, const LineLevelData& prev,
                                          double h, double alpha, double nu);

struct NewtonLineStats {
    int line = 0;
    int iterations = 0;
    std::vector<double> residual_history;  // max-norm before each update
};

struct SweepStats {
    std::vector<NewtonLineStats> lines;

    int max_iterations() const;
};

/// Derivative fields of both velocity components in both directions.
struct DerivFields {
    Field2D ux, vx, uy, vy;
};

DerivFields init_derivative_fields(const FieldPair& fields, const Grid2D& grid);

/// Result of one sweep: the advanced fields plus the converged line-direction
/// derivative unknowns (d1 = u-derivative, d2 = v-derivative along the sweep).
struct SweepResult {
    FieldPair fields;
    Field2D d1, d2;
};

SweepResult x_sweep(const FieldPair& fields, const RunParams& params, const Grid2D& grid,
                    const DirichletBoundary& bc, const DerivFields* prev_derivs = nullptr,
                    SweepStats* stats = nullptr, int threads = 1);

SweepResult y_sweep(const FieldPair& fields, const RunParams& params, const Grid2D& grid,
                    const DirichletBoundary& bc, const DerivFields* prev_derivs = nullptr,
                    SweepStats* stats = nullptr, int threads = 1);

struct StepStats {
    SweepStats x, y;
};

/// One full time step: x-sweep then y-sweep, time advanced by dt.
FieldPair full_step(const FieldPair& fields, const RunParams& params, const Grid2D& grid,
                    const DirichletBoundary& bc, StepStats* stats = nullptr, int threads = 1);

}  // namespace burgers2d
