#include "duflo/report.hpp"

#include "duflo/ce.hpp"
#include "duflo/duflo_calculus.hpp"
#include "duflo/enveloping.hpp"
#include "duflo/errors.hpp"
#include "duflo/hochschild.hpp"
#include "duflo/wilson.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace duflo {

Json rational_json(const Rational& r) {
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (num.fits_slong_p() && den.fits_slong_p()) return Json::array({num.get_si(), den.get_si()});
  return Json::array({num.get_str(), den.get_str()});
}

Json poly_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(Json::array({e, rational_json(c)}));
  return out;
}

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {"validate", "ce", "hkr", "cor", "at", "d0",
                                                 "invariant_field", "character", "char", "iso", "wilson"};
  return names;
}

std::vector<std::string> SuiteConfig::resolved_checks() const {
  std::vector<std::string> wanted;
  for (const auto& c : checks) {
    if (c == "all") {
      wanted = all_check_names();
      break;
    }
    if (std::find(all_check_names().begin(), all_check_names().end(), c) == all_check_names().end())
      throw UsageError("unknown check '" + c + "'");
    wanted.push_back(c);
  }
  std::vector<std::string> ordered;
  for (const auto& name : all_check_names())
    if (std::find(wanted.begin(), wanted.end(), name) != wanted.end()) ordered.push_back(name);
  if (ordered.empty()) throw UsageError("no checks requested");
  return ordered;
}

void SuiteConfig::validate() const {
  if (max_len < 1) throw UsageError("--max-len must be ≥ 1");
  if (jets < 1) throw UsageError("--jets must be ≥ 1");
  if (degree < 0) throw UsageError("--degree must be ≥ 0");
  if (h_order < 0) throw UsageError("--h-order must be ≥ 0");
  if (format != "json" && format != "text") throw UsageError("--format must be json or text");
  auto wanted = resolved_checks();
  auto has = [&](const char* name) { return std::find(wanted.begin(), wanted.end(), name) != wanted.end(); };
  if ((has("hkr") || has("d0")) && jets < max_len) throw UsageError("incompatible truncation: need N ≥ L (jets ≥ max-len)");
  if (has("d0") && max_len < 2) throw UsageError("incompatible truncation: d0 transport needs L ≥ 2");
  if ((has("iso") || has("ce")) && degree > jets) throw UsageError("incompatible truncation: need D ≤ N");
  if (has("char") && jets < 2) throw UsageError("incompatible truncation: char check needs N ≥ 2");
}

Json SuiteConfig::to_json() const {
  return Json{{"algebra", algebra}, {"max_len", max_len}, {"jets", jets},     {"degree", degree},
              {"h_order", h_order}, {"f", wilson_f},      {"checks", checks}, {"format", format}};
}

namespace {

Json dims_json(const std::map<int, int>& dims) {
  Json out = Json::object();
  for (const auto& [k, d] : dims) out[std::to_string(k)] = d;
  return out;
}

Json identity_json(const IdentityCheck& c) {
  Json j{{"name", c.name}, {"passed", c.passed}, {"window", c.window}, {"checked", c.checked}};
  if (!c.passed) {
    j["witness"] = {{"degree", c.witness_degree}, {"xi_mask", c.witness.mask}, {"y", c.witness.y}};
    j["message"] = c.message;
  }
  return j;
}

Json chain_map_json(const ChainMapCheck& c) {
  Json j{{"ok", c.ok}};
  if (!c.ok) j["witness"] = {{"degree", c.degree}, {"column", c.column}, {"message", c.message}};
  return j;
}

Json chain_json(const Chain& c) {
  return Json{{"a0", {{"xi_mask", c.a0.mask}, {"y", c.a0.y}}}, {"letters", c.letters}};
}

}  // namespace

CheckOutcome check_validate(const MetricLieAlgebra& g) {
  CheckOutcome out{"validate", CheckKind::Invariant, true, Json::object()};
  auto report = validate(g);
  Json axioms = Json::array();
  for (const auto& a : report.axioms) {
    Json j{{"axiom", a.axiom}, {"passed", a.passed}};
    if (!a.passed) j["witness"] = {{"indices", a.witness}, {"residual", rational_json(a.residual)}};
    axioms.push_back(j);
  }
  out.passed = report.ok();
  out.body = {{"algebra", g.name()}, {"dim", g.dim()}, {"axioms", axioms},
              {"metric_determinant", rational_json(g.metric_determinant())}};
  return out;
}

CheckOutcome check_ce_module(const MetricLieAlgebra& g, const std::string& module) {
  CheckOutcome out{"ce", CheckKind::Invariant, true, Json::object()};
  auto spec = ModuleSpec::parse(module);
  auto c = build_ce_with_action(g, module_action(g, spec), spec, false);
  auto failure = c.complex.d_squared_failure();
  Json dims = Json::object();
  for (int k = c.complex.lo(); k <= c.complex.hi(); ++k) dims[std::to_string(k)] = c.complex.dim(k);
  out.body = {{"module", spec.to_string()}, {"fiber_dim", c.fiber_dim}, {"chain_dims", dims},
              {"d_squared_zero", !failure.has_value()}};
  if (failure) {
    out.passed = false;
    out.body["witness"] = {{"degree", failure->degree}, {"column", failure->column}};
    return out;
  }
  out.body["cohomology"] = dims_json(ce_cohomology(c).dims);
  out.body["euler_characteristic"] = c.complex.euler_characteristic();
  return out;
}

CheckOutcome check_ce(const MetricLieAlgebra& g, int jets, int uea_degree) {
  CheckOutcome out{"ce", CheckKind::Invariant, true, Json::object()};
  Json modules = Json::array();
  for (const auto& m : {std::string("trivial"), "jets:" + std::to_string(jets), "uea:" + std::to_string(uea_degree)}) {
    auto sub = check_ce_module(g, m);
    out.passed = out.passed && sub.passed;
    modules.push_back(sub.body);
  }
  out.body = {{"modules", modules}};
  return out;
}

CheckOutcome check_hkr(const MetricLieAlgebra& g, int max_len) {
  auto r = verify_hkr(g, max_len);
  CheckOutcome out{"hkr", CheckKind::Identity, r.passed(), Json::object()};
  out.body = {{"window", {{"max_weight", max_len}}},
              {"chain_map", chain_map_json(r.chain_map)},
              {"hochschild_dims", dims_json(r.hochschild_dims)},
              {"forms_dims", dims_json(r.forms_dims)},
              {"injective_on_homology", r.injective}};
  if (!r.injective) out.body["witness_degree"] = r.witness_degree;
  return out;
}

CheckOutcome check_cor(const MetricLieAlgebra& g, int max_len) {
  HochschildComplex h(g, max_len);
  auto r = verify_cor(h);
  auto control = verify_cor(h, true);
  CheckOutcome out{"cor", CheckKind::Identity, r.passed, Json::object()};
  int classes = 0, filtered = 0;
  for (const auto& [k, d] : r.homology_dims) classes += d;
  for (const auto& [k, d] : r.filtered_dims) filtered += d;
  out.body = {{"window", {{"max_weight", max_len}}},
              {"homology_dims", dims_json(r.homology_dims)},
              {"filtered_dims", dims_json(r.filtered_dims)},
              {"classes", classes},
              {"classes_with_degree_one_representative", filtered},
              {"negative_control_detected", !control.passed}};
  if (!r.passed) {
    Json w = Json::array();
    for (const auto& [c, v] : r.witness) w.push_back({{"chain", chain_json(c)}, {"coeff", rational_json(v)}});
    out.body["witness"] = {{"degree", r.witness_degree}, {"cycle", w}};
  }
  return out;
}

CheckOutcome check_at(const MetricLieAlgebra& g, int max_len) {
  auto r = verify_at(g, max_len);
  CheckOutcome out{"at", CheckKind::Identity, r.passed(), Json::object()};
  out.body = {{"window", {{"max_weight", max_len}}},
              {"first", chain_map_json(r.first)},
              {"second", chain_map_json(r.second)}};
  return out;
}

CheckOutcome check_d0(const MetricLieAlgebra& g, int max_len, int jets) {
  HochschildComplex h(g, max_len);
  EpsilonAlgebra e(h.forms());
  auto assoc = e.associativity_failure();
  auto paths = verify_d0_on_chains(h);
  auto transport = verify_d0_transport(g, max_len, jets);
  auto control = verify_d0_transport(g, max_len, jets, 2);
  CheckOutcome out{"d0", CheckKind::Identity, !assoc && paths.passed() && transport.passed(), Json::object()};
  out.body = {{"window", {{"max_weight", max_len}, {"jets", jets}, {"forms_max_weight", max_len - 2}}},
              {"epsilon_associative", !assoc.has_value()},
              {"chains_checked", paths.checked},
              {"extraction_agrees", paths.paths_agree},
              {"anticommutes_with_differential", paths.anticommutes},
              {"transport", {{"classes", transport.classes}, {"matched", transport.matched}}},
              {"negative_control_detected", !control.passed()}};
  if (assoc) out.body["associativity_witness"] = *assoc;
  if (paths.witness) out.body["chain_witness"] = chain_json(*paths.witness);
  if (!transport.passed())
    out.body["transport"]["witness"] = {{"degree", transport.witness_degree}, {"class", transport.witness_class}};
  return out;
}

CheckOutcome check_invariant_field(const MetricLieAlgebra& g, int jets) {
  bool left = invariant_field_oracle(g, Side::Left, jets);
  bool right = invariant_field_oracle(g, Side::Right, jets);
  CheckOutcome out{"invariant_field", CheckKind::Identity, left && right, Json::object()};
  Json bern = Json::array();
  for (const auto& b : bernoulli(jets)) bern.push_back(rational_json(b));
  out.body = {{"window", {{"order", jets}}}, {"left", left}, {"right", right}, {"bernoulli", bern}};
  return out;
}

CheckOutcome check_character(const MetricLieAlgebra& g, int jets) {
  bool oracle = character_oracle(g, jets);
  CheckOutcome out{"character", CheckKind::Identity, oracle, Json::object()};
  out.body = {{"window", {{"order", jets}}},
              {"log", poly_json(duflo_log(g, jets))},
              {"character", poly_json(duflo_character(g, jets))},
              {"oracle_match", oracle}};
  return out;
}

CheckOutcome check_char(const MetricLieAlgebra& g, int jets) {
  auto r = verify_char(g, jets, true);
  CheckOutcome out{"char", CheckKind::Identity, r.passed(), Json::object()};
  Json identities = Json::array();
  for (const auto& c : r.checks) identities.push_back(identity_json(c));
  out.body = {{"window", {{"order", r.order}, {"output_y_degree_max", r.window}}},
              {"identities", identities},
              {"homotopy_solver", {{"run", r.solver_run}, {"feasible", r.solver_feasible}, {"message", r.solver_message}}}};
  return out;
}

CheckOutcome check_iso(const MetricLieAlgebra& g, int degree, int jets) {
  auto r = verify_duflo_isomorphism(g, degree, jets);
  CheckOutcome out{"iso", CheckKind::Identity, r.multiplicative(), Json::object()};
  Json invariants = Json::array();
  for (const auto& s : r.invariants) invariants.push_back(poly_json(s));
  int failing = 0;
  for (const auto& p : r.control_pairs)
    if (!p.passed) ++failing;
  out.body = {{"window", {{"degree", degree}, {"order", jets}}},
              {"invariants", invariants},
              {"pairs_checked", r.pairs.size()},
              {"multiplicative", r.multiplicative()},
              {"central", r.central},
              {"symmetrization_defect_pairs", failing}};
  for (const auto& p : r.pairs)
    if (!p.passed) {
      out.body["witness"] = {{"alpha", p.alpha}, {"beta", p.beta}, {"difference", poly_json(p.difference)}};
      break;
    }
  return out;
}

CheckOutcome check_wilson(const MetricLieAlgebra& g, const std::string& f, int h_order, int jets) {
  auto fn = parse_invariant_function(g, f);
  auto pipeline = unknot_invariant(g, fn, h_order, jets);
  auto oracle = unknot_oracle(g, fn, h_order, jets);
  CheckOutcome out{"wilson", CheckKind::Identity, pipeline == oracle, Json::object()};
  Json coeff = Json::array(), expected = Json::array();
  for (const auto& c : pipeline) coeff.push_back(rational_json(c));
  for (const auto& c : oracle) expected.push_back(rational_json(c));
  out.body = {{"window", {{"h_order", h_order}, {"order", jets}}},
              {"f", f},
              {"h_grading", "h^m counts the factors of t consumed"},
              {"coeff", coeff},
              {"oracle", expected},
              {"oracle_match", pipeline == oracle}};
  return out;
}

Json assemble_report(const std::string& command, const Json& config, const std::vector<CheckOutcome>& checks) {
  Json list = Json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& c : checks) {
    std::string status = c.skipped ? "skipped" : (c.passed ? "pass" : "fail");
    (c.skipped ? skipped : (c.passed ? passed : failed)) += 1;
    Json entry{{"name", c.name},
               {"kind", c.kind == CheckKind::Invariant ? "invariant" : "identity"},
               {"status", status}};
    if (!c.skipped) entry["result"] = c.body;
    list.push_back(entry);
  }
  return Json{{"tool", "duflo"},
              {"version", kToolVersion},
              {"command", command},
              {"config", config},
              {"checks", list},
              {"summary",
               {{"passed", passed}, {"failed", failed}, {"skipped", skipped}, {"status", failed ? "fail" : "pass"}}}};
}

SuiteResult run_suite(const SuiteConfig& config, const std::string& command) {
  config.validate();
  auto names = config.resolved_checks();
  MetricLieAlgebra g = resolve_algebra(config.algebra);
  if (std::find(names.begin(), names.end(), "wilson") != names.end())
    check_wilson_budget(parse_invariant_function(g, config.wilson_f), config.h_order, config.jets);
  SuiteResult result;
  for (const auto& name : names) {
    if (result.invariant_failure) {
      CheckOutcome skipped{name, CheckKind::Identity, false, Json::object(), true};
      if (name == "validate" || name == "ce") skipped.kind = CheckKind::Invariant;
      result.checks.push_back(std::move(skipped));
      continue;
    }
    CheckOutcome c;
    if (name == "validate") c = check_validate(g);
    else if (name == "ce") c = check_ce(g, config.jets, config.degree);
    else if (name == "hkr") c = check_hkr(g, config.max_len);
    else if (name == "cor") c = check_cor(g, config.max_len);
    else if (name == "at") c = check_at(g, config.max_len);
    else if (name == "d0") c = check_d0(g, config.max_len, config.jets);
    else if (name == "invariant_field") c = check_invariant_field(g, config.jets);
    else if (name == "character") c = check_character(g, config.jets);
    else if (name == "char") c = check_char(g, config.jets);
    else if (name == "iso") c = check_iso(g, config.degree, config.jets);
    else if (name == "wilson") c = check_wilson(g, config.wilson_f, config.h_order, config.jets);
    if (!c.passed) (c.kind == CheckKind::Invariant ? result.invariant_failure : result.identity_failure) = true;
    result.checks.push_back(std::move(c));
  }
  result.report = assemble_report(command, config.to_json(), result.checks);
  return result;
}

int exit_code_for(const std::vector<CheckOutcome>& checks) {
  bool identity = false;
  for (const auto& c : checks) {
    if (c.skipped || c.passed) continue;
    if (c.kind == CheckKind::Invariant) return 3;
    identity = true;
  }
  return identity ? 4 : 0;
}

static void render_failures(std::ostringstream& out, const Json& value, const std::string& path) {
  if (value.is_object()) {
    if (value.contains("passed") && value["passed"] == false) {
      out << "      failed: " << (path.empty() ? "/" : path);
      for (const auto& [k, v] : value.items())
        if (v.is_string()) out << "  " << k << "=" << v.get<std::string>();
      out << "\n";
    }
    for (const auto& [k, v] : value.items()) render_failures(out, v, path + "/" + k);
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) render_failures(out, value[i], path + "/" + std::to_string(i));
  }
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << report.value("tool", "duflo") << " " << report.value("version", "") << "  " << report.value("command", "")
      << "\n";
  for (const auto& c : report.at("checks")) {
    out << "  " << c.at("status").get<std::string>() << "  " << c.at("name").get<std::string>() << "\n";
    if (!c.contains("result")) continue;
    for (const auto& [key, value] : c.at("result").items()) {
      if (value.is_array() && value.size() == 2 && value[0].is_number_integer() && value[1].is_number_integer()) {
        double approx = value[0].get<double>() / value[1].get<double>();
        out << "      " << key << " = " << value[0] << "/" << value[1] << " (≈ " << approx << ", approximate)\n";
      } else if (!value.is_structured()) {
        out << "      " << key << " = " << value.dump() << "\n";
      }
    }
    if (c.at("status") == "fail") render_failures(out, c.at("result"), "");
  }
  const auto& s = report.at("summary");
  out << "summary: " << s.at("status").get<std::string>() << " (" << s.at("passed") << " passed, " << s.at("failed")
      << " failed, " << s.at("skipped") << " skipped)\n";
  return out.str();
}

std::string first_divergent_key(const Json& a, const Json& b) {
  Json fa = a.flatten(), fb = b.flatten();
  auto ia = fa.items().begin();
  auto ib = fb.items().begin();
  const auto ea = fa.items().end();
  const auto eb = fb.items().end();
  while (ia != ea && ib != eb) {
    if (ia.key() != ib.key()) return std::min(ia.key(), ib.key());
    if (ia.value() != ib.value()) return ia.key();
    ++ia;
    ++ib;
  }
  if (ia != ea) return ia.key();
  if (ib != eb) return ib.key();
  return "";
}

PinResult pin_regression(const Json& report, const std::string& baseline_path) {
  PinResult r;
  namespace fs = std::filesystem;
  if (!fs::exists(baseline_path)) {
    if (fs::path(baseline_path).has_parent_path()) fs::create_directories(fs::path(baseline_path).parent_path());
    std::ofstream out(baseline_path);
    if (!out) throw UsageError("cannot write baseline " + baseline_path);
    out << report.dump(2) << "\n";
    r.created = true;
    r.message = "baseline created at " + baseline_path;
    return r;
  }
  std::ifstream in(baseline_path);
  Json baseline;
  try {
    baseline = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("baseline " + baseline_path + " is not valid JSON: " + e.what());
  }
  r.first_divergent_key = first_divergent_key(baseline, report);
  r.match = r.first_divergent_key.empty();
  r.message = r.match ? "matches baseline " + baseline_path
                      : "differs from baseline " + baseline_path + " first at " + r.first_divergent_key;
  return r;
}

}  // namespace duflo
