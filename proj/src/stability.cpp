#include "burgers2d/stability.hpp"

#include <cmath>
#include <cstdio>

#include "burgers2d/dufort_frankel.hpp"
#include "burgers2d/parallel.hpp"

namespace burgers2d {

std::complex<double> compute_lambda(double cx, double cy, double dx, double dy,
                                    const PhaseAngles& phases) {
    const double tx = phases.theta_x, ty = phases.theta_y;
    const double q = 1.0 + 2.5 * dx + 2.5 * dy;
    const double re = (16.0 * std::cos(tx) - std::cos(2.0 * tx)) * dx +
                      (16.0 * std::cos(ty) - std::cos(2.0 * ty)) * dy;
    const double im = (-8.0 * std::sin(tx) + std::sin(2.0 * tx)) * cx +
                      (-8.0 * std::sin(ty) + std::sin(2.0 * ty)) * cy;
    return std::complex<double>(re, im) / (3.0 * q);
}

AmplificationResult amplification(double c, double d, const PhaseAngles& phases) {
    AmplificationResult res;
    res.lambda = compute_lambda(c, c, d, d, phases);
    // A has a single source of truth: the scheme's own coefficients.
    const double a = dff_coefficients(c, c, d, d).A;
    const std::complex<double> root = std::sqrt(res.lambda * res.lambda + 4.0 * a);
    res.zeta_plus = 0.5 * (res.lambda + root);
    res.zeta_minus = 0.5 * (res.lambda - root);
    res.chi = std::max(std::abs(res.zeta_plus), std::abs(res.zeta_minus));
    return res;
}

double max_chi_over_phases(double c, double d, int n_theta) {
    if (n_theta < 2) throw std::invalid_argument("max_chi_over_phases: n_theta must be >= 2");
    const double pi = 3.14159265358979323846;
    double m = 0.0;
    for (int ix = 0; ix < n_theta; ++ix) {
        const double tx = pi * ix / (n_theta - 1);
        for (int iy = 0; iy < n_theta; ++iy) {
            const double ty = pi * iy / (n_theta - 1);
            m = std::max(m, amplification(c, d, {tx, ty}).chi);
        }
    }
    return m;
}

std::vector<StabilityPoint> stability_map(const std::vector<double>& c_values,
                                          const std::vector<double>& d_values,
                                          int n_theta, int threads) {
    if (c_values.empty() || d_values.empty())
        throw std::invalid_argument("stability_map: empty parameter sweep");
    std::vector<StabilityPoint> points(c_values.size() * d_values.size());
    const int nd = static_cast<int>(d_values.size());
    parallel_for(static_cast<int>(points.size()),
                 [&](int k) {
                     const double c = c_values[k / nd];
                     const double d = d_values[k % nd];
                     points[k] = {c, d, max_chi_over_phases(c, d, n_theta)};
                 },
                 threads);
    return points;
}

std::string stability_csv(const std::vector<StabilityPoint>& points) {
    std::string out = "c,d,max_chi\n";
    char line[128];
    for (const auto& p : points) {
        std::snprintf(line, sizeof(line), "%.17e,%.17e,%.17e\n", p.c, p.d, p.max_chi);
        out += line;
    }
    return out;
}

}  // namespace burgers2d
