#pragma once

#include "burgers2d/grid.hpp"

namespace burgers2d {

/// Per-node update weights of the explicit fourth-order Du Fort Frankel
/// scheme. A multiplies the (n-1) level; B..E the x-neighbours at distance
/// +2,+1,-1,-2; F..L the y-neighbours likewise. The weights sum to one, so
/// constant fields are fixed points.
struct DffCoefficients {
    double A, B, C, D, E, F, G, H, L, Q;
};

DffCoefficients dff_coefficients(double cx, double cy, double dx, double dy);

/// Advance (prev, curr) -> next. Interior nodes at least two layers from the
/// boundary use the five-point fourth-order stencils; the layer adjacent to
/// the boundary falls back to the classical three-point scheme, which keeps
/// every stencil inside the domain without fictitious nodes. Throws NonFinite
/// on blow-up (any |value| > 1e10 or NaN/Inf).
FieldPair dff_step(const FieldPair& prev, const FieldPair& curr,
                   const RunParams& params, const Grid2D& grid,
                   const DirichletBoundary& bc);

/// Starting procedure for the three-level scheme: one forward Euler step with
/// the same spatial operators (standard, non-averaged center node).
FieldPair dff_bootstrap(const FieldPair& initial, const RunParams& params,
                        const Grid2D& grid, const DirichletBoundary& bc);

}  // namespace burgers2d
