#include "burgers2d/problems.hpp"

#include <cmath>

namespace burgers2d {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::pair<double, double> exact_steady(double x, double y, const Case1Params& p) {
    const double w = p.k * (x - 1.0);
    const double m = std::abs(w);
    // Scale everything by e^{-m}: all exponents become non-positive, so the
    // severe-gradient constants never overflow and the ratios stay exact.
    const double ep = std::exp(w - m);    // e^{w} * e^{-m}
    const double en = std::exp(-w - m);   // e^{-w} * e^{-m}
    const double es = std::exp(-m);
    const double cos_ky = std::cos(p.k * y);
    const double sin_ky = std::sin(p.k * y);

    const double phi = (p.a0 + p.a1 * x) * es + (ep + en) * cos_ky;
    const double phi1 = p.a1 * es + p.k * (ep - en) * cos_ky;
    const double phi2 = -p.k * (ep + en) * sin_ky;
    if (std::abs(phi) < 1e-300)
        throw DegeneratePhi("exact_steady: phi vanishes at the requested point");

    const double scale = -2.0 / p.Re;
    return {scale * phi1 / phi, scale * phi2 / phi};
}

ProblemCase case1_problem(Case1Variant which, int N, int M) {
    Case1Params p;
    std::string label;
    switch (which) {
        case Case1Variant::k1a: p = Case1Params::case_1a(); label = "case1a"; break;
        case Case1Variant::k1b: p = Case1Params::case_1b(); label = "case1b"; break;
        case Case1Variant::k1c: p = Case1Params::case_1c(); label = "case1c"; break;
    }
    ProblemCase pc;
    pc.label = label;
    pc.grid = build_grid(-1.0, 1.0, N, 0.0, kPi / (6.0 * p.k), M);
    pc.nu = 1.0 / p.Re;
    auto u_of = [p](double x, double y) { return exact_steady(x, y, p).first; };
    auto v_of = [p](double x, double y) { return exact_steady(x, y, p).second; };
    const Grid2D& g = pc.grid;
    pc.bc = DirichletBoundary(
        g,
        [u_of, g](double y) { return u_of(g.x0, y); },
        [u_of, g](double y) { return u_of(g.xN, y); },
        [u_of, g](double x) { return u_of(x, g.y0); },
        [u_of, g](double x) { return u_of(x, g.yM); },
        [v_of, g](double y) { return v_of(g.x0, y); },
        [v_of, g](double y) { return v_of(g.xN, y); },
        [v_of, g](double x) { return v_of(x, g.y0); },
        [v_of, g](double x) { return v_of(x, g.yM); });
    pc.initial = FieldPair(g);
    for (int j = 0; j <= g.M; ++j)
        for (int i = 0; i <= g.N; ++i) {
            const auto [u, v] = exact_steady(g.node_x(i), g.node_y(j), p);
            pc.initial.u(i, j) = u;
            pc.initial.v(i, j) = v;
        }
    pc.exact = [p](double x, double y) { return exact_steady(x, y, p); };
    return pc;
}

FieldPair case1_alternative_initial(const Grid2D& grid) {
    FieldPair f(grid);
    for (int j = 0; j <= grid.M; ++j)
        for (int i = 0; i <= grid.N; ++i) {
            f.u(i, j) = 1.0;
            f.v(i, j) = grid.node_y(j) / grid.yM;
        }
    return f;
}

ProblemCase case2_problem(int N, int M, double Re) {
    if (!(Re > 0.0)) throw std::invalid_argument("case2_problem: Re must be positive");
    ProblemCase pc;
    pc.label = "case2";
    pc.grid = build_grid(0.0, 1.0, N, 0.0, 1.0, M);
    pc.nu = 1.0 / Re;
    pc.bc = DirichletBoundary::zero(pc.grid);
    pc.initial = FieldPair(pc.grid);
    for (int j = 0; j <= pc.grid.M; ++j)
        for (int i = 0; i <= pc.grid.N; ++i) {
            const double x = pc.grid.node_x(i);
            const double y = pc.grid.node_y(j);
            pc.initial.u(i, j) = std::sin(kPi * x) * std::sin(kPi * y);
            pc.initial.v(i, j) = (std::sin(kPi * x) + std::sin(2.0 * kPi * x)) *
                                 (std::sin(kPi * y) + std::sin(2.0 * kPi * y));
        }
    apply_dirichlet_inplace(pc.initial, *pc.bc, pc.grid);
    return pc;
}

ErrorNorms error_norms(const FieldPair& numeric, const ExactSolution& exact, const Grid2D& grid) {
    if (!numeric.u.matches(grid))
        throw std::invalid_argument("error_norms: field shape does not match grid");
    ErrorNorms e;
    for (int j = 1; j <= grid.M; ++j)
        for (int i = 1; i <= grid.N; ++i) {
            const auto [us, vs] = exact(grid.node_x(i), grid.node_y(j));
            e.E_u += std::abs(numeric.u(i, j) - us);
            e.E_v += std::abs(numeric.v(i, j) - vs);
        }
    const double norm = 1.0 / (static_cast<double>(grid.N) * grid.M);
    e.E_u *= norm;
    e.E_v *= norm;
    return e;
}

double observed_order(double e_coarse, double e_fine, double ratio) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0))
        throw std::invalid_argument("observed_order: errors must be positive");
    if (!(ratio > 1.0)) throw std::invalid_argument("observed_order: ratio must exceed 1");
    return std::log(e_coarse / e_fine) / std::log(ratio);
}

}  // namespace burgers2d
