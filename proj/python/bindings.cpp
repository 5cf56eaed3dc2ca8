#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dho/cli.hpp"
#include "dho/dynamics.hpp"
#include "dho/equivalence.hpp"
#include "dho/hermite.hpp"
#include "dho/states.hpp"

namespace py = pybind11;
using namespace dho;

namespace {

py::array_t<cplx> to_array(const WaveFunction& psi) {
  py::array_t<cplx> out(static_cast<py::ssize_t>(psi.size()));
  auto view = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < psi.size(); ++i) view(static_cast<py::ssize_t>(i)) = psi[i];
  return out;
}

py::dict to_dict(const CheckReport& r) {
  py::dict d;
  d["check_name"] = r.check_name;
  d["measured"] = r.measured;
  d["target"] = r.target;
  d["tolerance"] = r.tolerance;
  d["passed"] = r.passed;
  d["metadata"] = r.metadata;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Damped harmonic oscillator: first-order and BCK quantizations";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<GridError>(m, "GridError", PyExc_RuntimeError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);

  py::class_<OscillatorParams>(m, "OscillatorParams")
      .def(py::init(&make_params), py::arg("omega"), py::arg("alpha"))
      .def_property_readonly("omega", &OscillatorParams::omega)
      .def_property_readonly("alpha", &OscillatorParams::alpha)
      .def_property_readonly("omega_tilde", &OscillatorParams::omega_tilde)
      .def("energy", &OscillatorParams::energy, py::arg("n"))
      .def("__repr__", [](const OscillatorParams& p) {
        return "OscillatorParams(omega=" + format_double(p.omega()) + ", alpha=" + format_double(p.alpha()) + ")";
      });

  py::class_<SpatialGrid>(m, "SpatialGrid")
      .def(py::init<double, std::size_t>(), py::arg("half_width"), py::arg("n_points"))
      .def_property_readonly("half_width", &SpatialGrid::half_width)
      .def_property_readonly("spacing", &SpatialGrid::spacing)
      .def("__len__", &SpatialGrid::size)
      .def("points", [](const SpatialGrid& g) {
        const auto p = g.points();
        return py::array_t<double>(static_cast<py::ssize_t>(p.size()), p.data());
      });

  m.def("auto_grid", &auto_grid, py::arg("params"), py::arg("n_max"), py::arg("t_max"), py::arg("oversample") = 1.0);
  m.def("hermite_function", &hermite_function, py::arg("n"), py::arg("u"));

  m.def(
      "first_order_eigenstate",
      [](int n, const OscillatorParams& p, const SpatialGrid& g) { return to_array(first_order_eigenstate(n, p, g)); },
      py::arg("n"), py::arg("params"), py::arg("grid"));
  m.def(
      "pseudostationary_state",
      [](int n, double t, const OscillatorParams& p, const SpatialGrid& g) {
        return to_array(pseudostationary_state(n, t, p, g));
      },
      py::arg("n"), py::arg("t"), py::arg("params"), py::arg("grid"));

  m.def(
      "coherent_means",
      [](cplx z, double t, const OscillatorParams& p) {
        const auto s = coherent_means(z, t, p);
        py::dict d;
        d["t"] = s.t;
        d["mean_x"] = s.mean_x;
        d["mean_y"] = s.mean_y;
        d["var_x"] = s.var_x;
        d["var_y"] = s.var_y;
        d["uncertainty_product"] = s.uncertainty_product;
        return d;
      },
      py::arg("z"), py::arg("t"), py::arg("params"));
  m.def("uncertainty_product", &uncertainty_product, py::arg("t"), py::arg("params"));
  m.def("critical_time", &critical_time, py::arg("params"));
  m.def("squeezed_variance_x", &squeezed_variance_x, py::arg("xi"), py::arg("t"), py::arg("params"));
  m.def("asymptotic_residual", &asymptotic_residual, py::arg("n"), py::arg("params"), py::arg("with_shift"));

  m.def(
      "run_suite",
      [](std::optional<OscillatorParams> params, std::optional<std::vector<int>> levels,
         std::optional<std::vector<double>> times, unsigned threads) {
        EquivalenceSuite suite = default_suite();
        if (params || levels || times) {
          suite = make_suite(params.value_or(suite.params), levels.value_or(suite.n_levels),
                             times.value_or(suite.times));
        }
        std::vector<CheckReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_suite(std::move(suite), threads).reports;
        }
        py::list out;
        for (const auto& r : reports) out.append(to_dict(r));
        return out;
      },
      py::arg("params") = py::none(), py::arg("n_levels") = py::none(), py::arg("times") = py::none(),
      py::arg("threads") = 0u);

  m.def(
      "cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "dho");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
