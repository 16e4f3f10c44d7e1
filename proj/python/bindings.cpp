#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qladder/dense_oracle.hpp"
#include "qladder/dynamics.hpp"
#include "qladder/errors.hpp"
#include "qladder/limit_models.hpp"
#include "qladder/special_sums.hpp"
#include "qladder/spectral_solver.hpp"

namespace py = pybind11;
using namespace qladder;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict series_dict(const TimeSeries& ts) {
  py::dict d;
  d["t"] = to_array(ts.times);
  d["p"] = to_array(ts.probs);
  d["norm_deficit"] = ts.norm_deficit;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete state coupled to an equally spaced ladder with Lorentzian couplings";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", PyExc_ValueError);
  py::register_exception<InvalidBracketError>(m, "InvalidBracketError", PyExc_ValueError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init(&ModelParams::make), py::arg("v"), py::arg("delta"), py::arg("a"),
           py::arg("e_phi") = 0.0)
      .def_static("from_continuum", &ModelParams::from_continuum, py::arg("big_gamma"),
                  py::arg("gamma"), py::arg("delta"), py::arg("e_phi") = 0.0)
      .def_readonly("v", &ModelParams::v)
      .def_readonly("delta", &ModelParams::delta)
      .def_readonly("a", &ModelParams::a)
      .def_readonly("e_phi", &ModelParams::e_phi)
      .def_property_readonly("gamma", &ModelParams::gamma)
      .def_property_readonly("big_gamma", &ModelParams::big_gamma)
      .def_property_readonly("w", &ModelParams::w)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(v=" + std::to_string(p.v) + ", delta=" + std::to_string(p.delta) +
               ", a=" + std::to_string(p.a) + ", e_phi=" + std::to_string(p.e_phi) + ")";
      });

  m.def("alpha", &alpha, py::arg("a"));
  m.def("s1_closed", py::overload_cast<double, double>(&s1_closed), py::arg("eps"), py::arg("a"));
  m.def("s1_partial", &s1_partial, py::arg("eps"), py::arg("a"), py::arg("n_cut"));
  m.def("s2_trig", py::overload_cast<double, double>(&s2_trig), py::arg("eps"), py::arg("a"));
  m.def("residual_g", py::overload_cast<double, const ModelParams&>(&residual_g), py::arg("eps"),
        py::arg("p"));
  m.def("monotonicity_certificate", &monotonicity_certificate, py::arg("p"));

  m.def(
      "spectrum",
      [](const ModelParams& p, std::optional<std::pair<double, double>> window, double deficit_target) {
        Spectrum s;
        if (window) {
          s = solve_spectrum(p, Window{window->first, window->second});
        } else {
          AdaptiveOptions o;
          o.deficit_target = deficit_target;
          s = solve_spectrum(p, o);
        }
        std::vector<double> eps, w;
        for (const EigenPair& e : s.pairs) {
          eps.push_back(e.eps);
          w.push_back(e.weight);
        }
        py::dict d;
        d["eps"] = to_array(eps);
        d["weight"] = to_array(w);
        d["norm_deficit"] = s.norm_deficit;
        d["window"] = py::make_tuple(s.window.lo, s.window.hi);
        return d;
      },
      py::arg("p"), py::arg("window") = py::none(), py::arg("deficit_target") = 1e-6,
      "Eigenvalues (units of delta) and discrete-state weights; adaptive window unless given.");

  m.def(
      "survival",
      [](const ModelParams& p, double t_max, int n_steps, double deficit_target, bool renormalize) {
        AdaptiveOptions o;
        o.deficit_target = deficit_target;
        py::gil_scoped_release release;
        const TimeSeries ts = survival_series(solve_spectrum(p, o), t_max, n_steps, renormalize);
        py::gil_scoped_acquire acquire;
        return series_dict(ts);
      },
      py::arg("p"), py::arg("t_max"), py::arg("n_steps") = 2000, py::arg("deficit_target") = 1e-6,
      py::arg("renormalize") = false);

  m.def(
      "oracle_survival",
      [](const ModelParams& p, long long n_cut, double t_max, int n_steps) {
        return series_dict(oracle_survival(p, n_cut, t_max, n_steps));
      },
      py::arg("p"), py::arg("n_cut") = 300, py::arg("t_max") = 25.0, py::arg("n_steps") = 2000);

  m.def("rabi_survival", &rabi_survival, py::arg("e_phi"), py::arg("v"), py::arg("t"));
  m.def("ww_survival", &ww_survival, py::arg("big_gamma"), py::arg("t"));
  m.def("fano_survival", &fano_survival, py::arg("w"), py::arg("gamma"), py::arg("t"));
  m.def("fano_alpha_sq", &fano_alpha_sq, py::arg("e"), py::arg("w"), py::arg("gamma"),
        py::arg("e_phi") = 0.0);
  m.def(
      "bj_survival",
      [](double v, double delta, double e_phi, double t_max, int n_steps, long long half_width) {
        return series_dict(limit_series(BjLimit{v, delta, e_phi}, t_max, n_steps, half_width));
      },
      py::arg("v"), py::arg("delta") = 1.0, py::arg("e_phi") = 0.0, py::arg("t_max") = 25.0,
      py::arg("n_steps") = 2000, py::arg("half_width") = 20000);
}
