#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "hardylab/errors.hpp"
#include "hardylab/families.hpp"
#include "hardylab/rearrangement.hpp"
#include "hardylab/spectral.hpp"
#include "hardylab/verifiers.hpp"

namespace py = pybind11;
using namespace hardylab;

namespace {

py::dict sharp(const std::string& geometry, double a, int dim, int k_max, std::vector<double> T_list,
               std::vector<double> h_list) {
  ModeProblem p;
  switch (parse_geometry(geometry)) {
    case Geometry::CriticalDisk: p = ModeProblem::critical_disk(a); break;
    case Geometry::ClassicalBall: p = ModeProblem::classical_ball(dim); break;
    case Geometry::ClassicalWholeSpace: p = ModeProblem::whole_space(dim); break;
  }
  RefinementPlan plan;
  if (!T_list.empty()) plan.T_list = std::move(T_list);
  if (!h_list.empty()) plan.h_list = std::move(h_list);
  plan.k_max = k_max;
  const auto e = sharp_constant(p, plan);
  py::list trace;
  for (const auto& t : e.trace) trace.append(py::dict(py::arg("T") = t.T, py::arg("h") = t.h, py::arg("value") = t.value));
  py::dict d;
  d["geometry"] = geometry_name(p.geometry);
  d["a"] = p.a;
  d["dim"] = p.dim;
  d["value"] = e.value;
  d["trace"] = trace;
  d["mode_values"] = e.mode_values;
  d["one_sided"] = e.one_sided;
  d["trace_monotone"] = e.trace_monotone;
  d["mode_monotone"] = e.mode_monotone;
  return d;
}

py::dict quotient_dict(const std::string& family, double param, double a, int dim, double q) {
  FamilySpec s;
  switch (parse_family(family)) {
    case FamilySpec::Kind::UAlpha: s = FamilySpec::u_alpha(param, a); break;
    case FamilySpec::Kind::VM:
      require(param == std::floor(param) && param >= 1, "v_m needs a positive integer m");
      s = FamilySpec::v_m(static_cast<int>(param), dim == 0 ? 3 : dim);
      break;
    case FamilySpec::Kind::FABall: s = FamilySpec::fa_ball(param, dim == 0 ? 3 : dim); break;
    case FamilySpec::Kind::FAWholeSpace: s = FamilySpec::fa_whole_space(param, dim == 0 ? 3 : dim); break;
    case FamilySpec::Kind::ULambda: s = FamilySpec::u_lambda(param, a); break;
  }
  s.q = q;
  const auto r = family_quotient(s);
  py::dict d;
  d["numerator"] = r.numerator;
  d["denominator"] = r.denominator;
  d["quotient"] = r.quotient;
  d["error"] = r.error;
  d["exact"] = r.exact;
  return d;
}

StepFunction step_from(const std::vector<std::pair<double, double>>& pieces, int dim) {
  std::vector<StepPiece> ps;
  for (const auto& [v, m] : pieces) ps.push_back({v, m});
  return decreasing_rearrangement(StepFunction(std::move(ps), dim));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "hardylab core bindings";

  // subclasses of ValueError / RuntimeError; the handles live as module attributes
  static PyObject* invalid = py::exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError).ptr();
  static PyObject* numerical = py::exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(invalid, e.what());
    } catch (const NumericalError& e) {
      PyErr_SetString(numerical, e.what());
    }
  });

  m.def("sharp_constant", &sharp, py::arg("geometry") = "critical-disk", py::arg("a") = std::exp(1.0),
        py::arg("dim") = 3, py::arg("k_max") = 1, py::arg("T_list") = std::vector<double>{},
        py::arg("h_list") = std::vector<double>{}, "Sharp constant with refinement trace.");

  m.def("family_quotient", &quotient_dict, py::arg("family"), py::arg("param"), py::arg("a") = 1.0, py::arg("dim") = 0,
        py::arg("q") = 2.0, "Rayleigh quotient of a test-function family member.");

  m.def(
      "lorentz_norm",
      [](const std::vector<std::pair<double, double>>& pieces, double p, double q, int dim) {
        return lorentz_norm(step_from(pieces, dim), {p, q});
      },
      py::arg("pieces"), py::arg("p"), py::arg("q") = std::numeric_limits<double>::infinity(), py::arg("dim") = 3,
      "Lorentz (p, q) norm of a step function given as (value, measure) pairs.");

  m.def(
      "interpolation_sides",
      [](const std::vector<std::pair<double, double>>& pieces, double p, double q, double r) {
        const auto s = interpolation_sides(step_from(pieces, 2), InterpolationTriple(p, q, r));
        py::dict d;
        d["norm_q"] = s.norm_q;
        d["weak_p"] = s.weak_p;
        d["weak_r"] = s.weak_r;
        d["bound"] = s.bound;
        d["optimum"] = s.optimum;
        return d;
      },
      py::arg("pieces"), py::arg("p"), py::arg("q"), py::arg("r"));

  m.def("holder_failure_ratio", &holder_failure_ratio, py::arg("eps"), py::arg("dim"), py::arg("p"), py::arg("q"));

  m.def(
      "exponent_split",
      [](double p, double q) {
        const auto s = exponent_split(p, q);
        return py::make_tuple(s.r, s.r_tilde);
      },
      py::arg("p"), py::arg("q"));

  m.def("suite_names", &suite_names);

  m.def(
      "run_suite",
      [](const std::string& name, long trials, std::uint64_t seed) {
        TrialConfig cfg;
        cfg.trials = trials;
        cfg.seed = seed;
        py::list out;
        for (const auto& r : run_suite(name, cfg)) {
          py::dict d;
          d["name"] = r.name;
          d["trials"] = r.trials;
          d["violations"] = r.violations;
          d["worst"] = r.worst;
          d["passed"] = r.passed();
          out.append(d);
        }
        return out;
      },
      py::arg("name"), py::arg("trials") = 200, py::arg("seed") = 42);
}
