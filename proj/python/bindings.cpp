#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "burgers2d/compact_adi.hpp"
#include "burgers2d/dufort_frankel.hpp"
#include "burgers2d/grid.hpp"
#include "burgers2d/problems.hpp"
#include "burgers2d/run.hpp"
#include "burgers2d/stability.hpp"

namespace py = pybind11;
using namespace burgers2d;

namespace {

py::array_t<double> field_to_numpy(const Field2D& f) {
    // shape (nx, ny), indexed [i, j] like the C++ accessors
    py::array_t<double> a({f.nx, f.ny});
    auto r = a.mutable_unchecked<2>();
    for (int i = 0; i < f.nx; ++i)
        for (int j = 0; j < f.ny; ++j) r(i, j) = f(i, j);
    return a;
}

Field2D numpy_to_field(const py::array_t<double>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    Field2D f(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
    auto r = a.unchecked<2>();
    for (int i = 0; i < f.nx; ++i)
        for (int j = 0; j < f.ny; ++j) f(i, j) = r(i, j);
    return f;
}

ProblemCase make_problem_by_name(const std::string& name, int N, int M, double Re) {
    if (name == "case1a") return case1_problem(Case1Variant::k1a, N, M);
    if (name == "case1b") return case1_problem(Case1Variant::k1b, N, M);
    if (name == "case1c") return case1_problem(Case1Variant::k1c, N, M);
    if (name == "case2") return case2_problem(N, M, Re);
    throw std::invalid_argument("unknown problem: " + name);
}

AlphaConvention parse_alpha(const std::string& s) {
    if (s == "full_step") return AlphaConvention::kFullStep;
    if (s == "half_step") return AlphaConvention::kHalfStep;
    throw std::invalid_argument("alpha_convention must be full_step or half_step");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fourth-order compact ADI / Du Fort Frankel solver for the 2-D coupled "
              "Burgers equations, with a Von Neumann stability analyzer.";

    py::class_<Grid2D>(m, "Grid2D")
        .def_readonly("x0", &Grid2D::x0)
        .def_readonly("xN", &Grid2D::xN)
        .def_readonly("y0", &Grid2D::y0)
        .def_readonly("yM", &Grid2D::yM)
        .def_readonly("N", &Grid2D::N)
        .def_readonly("M", &Grid2D::M)
        .def_readonly("dx", &Grid2D::dx)
        .def_readonly("dy", &Grid2D::dy)
        .def("node_x", &Grid2D::node_x)
        .def("node_y", &Grid2D::node_y);

    m.def("build_grid", &build_grid, py::arg("x0"), py::arg("xN"), py::arg("N"),
          py::arg("y0"), py::arg("yM"), py::arg("M"));

    m.def("fd4_line_derivative",
          [](const std::vector<double>& values, double h) {
              return fd4_line_derivative(values, h);
          },
          py::arg("values"), py::arg("h"));

    py::class_<DffCoefficients>(m, "DffCoefficients")
        .def_readonly("A", &DffCoefficients::A)
        .def_readonly("B", &DffCoefficients::B)
        .def_readonly("C", &DffCoefficients::C)
        .def_readonly("D", &DffCoefficients::D)
        .def_readonly("E", &DffCoefficients::E)
        .def_readonly("F", &DffCoefficients::F)
        .def_readonly("G", &DffCoefficients::G)
        .def_readonly("H", &DffCoefficients::H)
        .def_readonly("L", &DffCoefficients::L)
        .def_readonly("Q", &DffCoefficients::Q);

    m.def("dff_coefficients", &dff_coefficients, py::arg("cx"), py::arg("cy"),
          py::arg("dx"), py::arg("dy"));

    py::class_<AmplificationResult>(m, "AmplificationResult")
        .def_readonly("lambda_", &AmplificationResult::lambda)
        .def_readonly("zeta_plus", &AmplificationResult::zeta_plus)
        .def_readonly("zeta_minus", &AmplificationResult::zeta_minus)
        .def_readonly("chi", &AmplificationResult::chi);

    m.def("amplification",
          [](double c, double d, double theta_x, double theta_y) {
              return amplification(c, d, {theta_x, theta_y});
          },
          py::arg("c"), py::arg("d"), py::arg("theta_x"), py::arg("theta_y"));

    m.def("max_chi_over_phases", &max_chi_over_phases, py::arg("c"), py::arg("d"),
          py::arg("n_theta") = 129);

    m.def("stability_map",
          [](const std::vector<double>& cs, const std::vector<double>& ds, int n_theta) {
              const auto pts = stability_map(cs, ds, n_theta);
              py::array_t<double> a({static_cast<py::ssize_t>(pts.size()), py::ssize_t(3)});
              auto r = a.mutable_unchecked<2>();
              for (size_t k = 0; k < pts.size(); ++k) {
                  r(k, 0) = pts[k].c;
                  r(k, 1) = pts[k].d;
                  r(k, 2) = pts[k].max_chi;
              }
              return a;
          },
          py::arg("c_values"), py::arg("d_values"), py::arg("n_theta") = 129);

    m.def("exact_steady",
          [](double x, double y, const std::string& which) {
              Case1Params p;
              if (which == "case1a") p = Case1Params::case_1a();
              else if (which == "case1b") p = Case1Params::case_1b();
              else if (which == "case1c") p = Case1Params::case_1c();
              else throw std::invalid_argument("unknown case: " + which);
              return exact_steady(x, y, p);
          },
          py::arg("x"), py::arg("y"), py::arg("which"));

    m.def("observed_order", &observed_order, py::arg("e_coarse"), py::arg("e_fine"),
          py::arg("ratio"));

    m.def("solve",
          [](const std::string& problem, const std::string& scheme, int N, int M, double dt,
             double t_end, double Re, const std::string& alpha_convention, double newton_tol,
             int newton_max_iters) {
              const ProblemCase pc = make_problem_by_name(problem, N, M, Re);
              RunParams params;
              params.nu = pc.nu;
              params.dt = dt;
              params.t_end = t_end;
              params.newton_tol = newton_tol;
              params.newton_max_iters = newton_max_iters;
              params.alpha_convention = parse_alpha(alpha_convention);

              FieldPair f = pc.initial;
              long steps = 0;
              std::string status = "completed";
              const long total = std::lround(t_end / dt);
              try {
                  if (scheme == "compact_adi") {
                      for (long s = 0; s < total; ++s, ++steps)
                          f = full_step(f, params, pc.grid, pc.boundary());
                  } else if (scheme == "dufort_frankel") {
                      FieldPair prev = f;
                      f = dff_bootstrap(f, params, pc.grid, pc.boundary());
                      steps = 1;
                      for (long s = 1; s < total; ++s, ++steps) {
                          FieldPair next = dff_step(prev, f, params, pc.grid, pc.boundary());
                          prev = std::move(f);
                          f = std::move(next);
                      }
                  } else {
                      throw std::invalid_argument("unknown scheme: " + scheme);
                  }
              } catch (const NonFinite&) {
                  status = "diverged";
              } catch (const NewtonDiverged&) {
                  status = "diverged";
              }

              py::dict out;
              out["u"] = field_to_numpy(f.u);
              out["v"] = field_to_numpy(f.v);
              out["t"] = f.t;
              out["steps"] = steps;
              out["status"] = status;
              if (pc.exact && status == "completed") {
                  const ErrorNorms e = error_norms(f, *pc.exact, pc.grid);
                  out["E_u"] = e.E_u;
                  out["E_v"] = e.E_v;
              }
              return out;
          },
          py::arg("problem"), py::arg("scheme") = "compact_adi", py::arg("N") = 20,
          py::arg("M") = 20, py::arg("dt") = 1e-3, py::arg("t_end") = 0.01, py::arg("Re") = 1.0,
          py::arg("alpha_convention") = "half_step", py::arg("newton_tol") = 1e-10,
          py::arg("newton_max_iters") = 25);

    m.def("initial_fields",
          [](const std::string& problem, int N, int M, double Re) {
              const ProblemCase pc = make_problem_by_name(problem, N, M, Re);
              py::dict out;
              out["u"] = field_to_numpy(pc.initial.u);
              out["v"] = field_to_numpy(pc.initial.v);
              out["nu"] = pc.nu;
              return out;
          },
          py::arg("problem"), py::arg("N"), py::arg("M"), py::arg("Re") = 1.0);

    m.def("error_norms_vs",
          [](const py::array_t<double>& u, const py::array_t<double>& v, const Grid2D& grid,
             const std::function<std::pair<double, double>(double, double)>& exact) {
              FieldPair f;
              f.u = numpy_to_field(u);
              f.v = numpy_to_field(v);
              const ErrorNorms e = error_norms(f, exact, grid);
              return std::make_pair(e.E_u, e.E_v);
          },
          py::arg("u"), py::arg("v"), py::arg("grid"), py::arg("exact"));
}
