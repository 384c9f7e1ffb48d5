#pragma once

#include <complex>
#include <string>
#include <vector>

namespace burgers2d {

struct PhaseAngles {
    double theta_x = 0.0;  // in [0, pi]
    double theta_y = 0.0;
};

/// Roots of the characteristic quadratic z^2 - lambda z - A = 0 of the
/// three-level explicit scheme, and the larger modulus chi.
struct AmplificationResult {
    std::complex<double> lambda;
    std::complex<double> zeta_plus, zeta_minus;
    double chi = 0.0;
};

std::complex<double> compute_lambda(double cx, double cy, double dx, double dy,
                                    const PhaseAngles& phases);

/// Specialization c_x = c_y = c, d_x = d_y = d.
AmplificationResult amplification(double c, double d, const PhaseAngles& phases);

/// Max of chi over the tensor grid theta_x, theta_y in {k*pi/(n_theta-1)}.
double max_chi_over_phases(double c, double d, int n_theta);

struct StabilityPoint {
    double c, d, max_chi;
};

/// Cartesian sweep, outer c, inner d. Deterministic row order.
std::vector<StabilityPoint> stability_map(const std::vector<double>& c_values,
                                          const std::vector<double>& d_values,
                                          int n_theta, int threads = 1);

std::string stability_csv(const std::vector<StabilityPoint>& points);

}  // namespace burgers2d
