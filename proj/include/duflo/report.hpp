#pragma once

#include "duflo/algebra.hpp"
#include "duflo/poly.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace duflo {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// [num, den] as JSON integers, or as decimal strings when they exceed 64 bits.
Json rational_json(const Rational& r);
/// [[exponents], [num, den]] per term, in the polynomial's term order.
Json poly_json(const Poly& p);

/// Check names in dependency order.
const std::vector<std::string>& all_check_names();

enum class CheckKind { Invariant, Identity };

struct CheckOutcome {
  std::string name;
  CheckKind kind = CheckKind::Identity;
  bool passed = true;
  Json body;  // window, values, witnesses
  bool skipped = false;
};

struct SuiteConfig {
  std::string algebra = "sl2";
  int max_len = 3;  // Hochschild weight bound L
  int jets = 6;     // N
  int degree = 4;   // D
  int h_order = 2;  // K
  std::string wilson_f = "one";
  std::vector<std::string> checks = {"all"};
  std::string format = "json";

  /// Expands "all", rejects unknown names and incompatible truncations (UsageError).
  std::vector<std::string> resolved_checks() const;
  void validate() const;
  Json to_json() const;
};

CheckOutcome check_validate(const MetricLieAlgebra& g);
/// d² = 0 on trivial, jets:N and uea:D coefficients, plus trivial cohomology dims.
CheckOutcome check_ce(const MetricLieAlgebra& g, int jets, int uea_degree);
CheckOutcome check_ce_module(const MetricLieAlgebra& g, const std::string& module);
CheckOutcome check_hkr(const MetricLieAlgebra& g, int max_len);
CheckOutcome check_cor(const MetricLieAlgebra& g, int max_len);
CheckOutcome check_at(const MetricLieAlgebra& g, int max_len);
/// ε-product associativity, both d₀ paths, and transport through HKR.
CheckOutcome check_d0(const MetricLieAlgebra& g, int max_len, int jets);
CheckOutcome check_invariant_field(const MetricLieAlgebra& g, int jets);
CheckOutcome check_character(const MetricLieAlgebra& g, int jets);
CheckOutcome check_char(const MetricLieAlgebra& g, int jets);
CheckOutcome check_iso(const MetricLieAlgebra& g, int degree, int jets);
CheckOutcome check_wilson(const MetricLieAlgebra& g, const std::string& f, int h_order, int jets);

/// {"tool", "version", "command", "config", "checks": [...], "summary"}.
Json assemble_report(const std::string& command, const Json& config, const std::vector<CheckOutcome>& checks);

/// Runs the configured checks in dependency order. An invariant failure skips
/// every later check.
struct SuiteResult {
  Json report;
  std::vector<CheckOutcome> checks;
  bool invariant_failure = false;
  bool identity_failure = false;
};
SuiteResult run_suite(const SuiteConfig& config, const std::string& command = "suite run");

/// 0 pass, 3 invariant failure, 4 identity failure.
int exit_code_for(const std::vector<CheckOutcome>& checks);

std::string render_text(const Json& report);

struct PinResult {
  bool created = false;
  bool match = true;
  std::string first_divergent_key;  // JSON pointer
  std::string message;
};
/// Compares the report with the stored baseline key by key (flattened JSON
/// pointers in sorted order). A missing baseline is written and reported.
PinResult pin_regression(const Json& report, const std::string& baseline_path);
/// First differing flattened key between two reports, or "" if equal.
std::string first_divergent_key(const Json& a, const Json& b);

}  // namespace duflo
