#pragma once

#include <functional>
#include <optional>
#include <string>

#include "burgers2d/grid.hpp"

namespace burgers2d {

/// Parameters of the family of exact steady solutions: u = -2 nu phi_x / phi,
/// v = -2 nu phi_y / phi with a harmonic phi built from exponentials in x and
/// a cosine in y. The constants select moderate or severe gradients.
struct Case1Params {
    double a0, a1, k, Re;

    static Case1Params case_1a() { return {110.13, 110.13, 5.0, 10.0}; }
    static Case1Params case_1b() { return {1.2962e13, 1.2962e13, 25.0, 50.0}; }
    static Case1Params case_1c() { return {0.011013, 0.011013, 5.0, 10.0}; }
};

/// Exact steady solution at one point. Evaluation factors out the dominant
/// exponential so that large k and large a0 never overflow.
std::pair<double, double> exact_steady(double x, double y, const Case1Params& p);

struct ErrorNorms {
    double E_u = 0.0, E_v = 0.0;
};

using ExactSolution = std::function<std::pair<double, double>(double, double)>;

struct ProblemCase {
    std::string label;
    Grid2D grid;
    double nu = 0.0;
    FieldPair initial;                    // already satisfies the boundary data
    std::optional<DirichletBoundary> bc;  // always set; optional only to defer construction
    std::optional<ExactSolution> exact;

    const DirichletBoundary& boundary() const { return *bc; }
};

enum class Case1Variant { k1a, k1b, k1c };

ProblemCase case1_problem(Case1Variant which, int N, int M);

/// The alternative start u = 1, v = y/yM (boundaries then overwritten from
/// the steady profiles).
FieldPair case1_alternative_initial(const Grid2D& grid);

ProblemCase case2_problem(int N, int M, double Re);

/// Mean absolute deviation over node indices 1..N x 1..M.
ErrorNorms error_norms(const FieldPair& numeric, const ExactSolution& exact, const Grid2D& grid);

/// log(e_coarse/e_fine) / log(ratio).
double observed_order(double e_coarse, double e_fine, double ratio);

}  // namespace burgers2d
