#include "duflo/algebra.hpp"
#include "duflo/duflo_calculus.hpp"
#include "duflo/errors.hpp"
#include "duflo/report.hpp"
#include "duflo/wilson.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace duflo;

namespace {

// Results cross the boundary as JSON text; the Python layer turns [num, den] into Fraction.
std::string dump(const Json& j) { return j.dump(); }

Json rational_json_list(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(rational_json(r));
  return out;
}

std::string check_body(const CheckOutcome& c) {
  return dump(Json{{"name", c.name}, {"passed", c.passed}, {"result", c.body}});
}

SuiteConfig config_from(const py::dict& d) {
  SuiteConfig c;
  for (auto [key, value] : d) {
    auto k = key.cast<std::string>();
    if (k == "algebra") c.algebra = value.cast<std::string>();
    else if (k == "max_len") c.max_len = value.cast<int>();
    else if (k == "jets") c.jets = value.cast<int>();
    else if (k == "degree") c.degree = value.cast<int>();
    else if (k == "h_order") c.h_order = value.cast<int>();
    else if (k == "f") c.wilson_f = value.cast<std::string>();
    else if (k == "checks") c.checks = value.cast<std::vector<std::string>>();
    else throw UsageError("unknown config key '" + k + "'");
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_duflo, m) {
  m.doc() = "Exact rational verification engine (native layer)";
  m.attr("__version__") = kToolVersion;

  static py::exception<UsageError> usage_error(m, "UsageError", PyExc_ValueError);
  static py::exception<InvariantError> invariant_error(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const UsageError& e) {
      usage_error(e.what());
    } catch (const InvariantError& e) {
      invariant_error(e.what());
    }
  });

  m.def("builtin_names", [] { return std::vector<std::string>{"abelian:N", "sl2", "so3", "oscillator"}; });

  m.def("validate", [](const std::string& algebra) { return check_body(check_validate(resolve_algebra(algebra))); },
        py::arg("algebra"));

  m.def(
      "ce_cohomology",
      [](const std::string& algebra, const std::string& module) {
        return check_body(check_ce_module(resolve_algebra(algebra), module));
      },
      py::arg("algebra"), py::arg("module") = "trivial");

  m.def(
      "bernoulli", [](int k) { return dump(rational_json_list(bernoulli(k))); }, py::arg("k"));

  m.def(
      "duflo_character",
      [](const std::string& algebra, int order) { return dump(poly_json(duflo_character(resolve_algebra(algebra), order))); },
      py::arg("algebra"), py::arg("order"));

  m.def(
      "unknot",
      [](const std::string& algebra, const std::string& f, int h_order, int order) {
        auto g = resolve_algebra(algebra);
        auto fn = parse_invariant_function(g, f);
        if (order < 0) order = 2 * h_order + fn.degree();
        return dump(rational_json_list(unknot_invariant(g, fn, h_order, order)));
      },
      py::arg("algebra"), py::arg("f") = "one", py::arg("h_order") = 2, py::arg("order") = -1);

  m.def(
      "run_suite",
      [](const py::dict& config, const std::string& command) {
        auto r = run_suite(config_from(config), command);
        return py::make_tuple(dump(r.report), exit_code_for(r.checks));
      },
      py::arg("config"), py::arg("command") = "suite run");

  m.def("render_text", [](const std::string& report) { return render_text(Json::parse(report)); });

  m.def("first_divergent_key",
        [](const std::string& a, const std::string& b) { return first_divergent_key(Json::parse(a), Json::parse(b)); });
}
