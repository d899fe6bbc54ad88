#include "duflo/errors.hpp"
#include "duflo/report.hpp"
#include "duflo/wilson.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace duflo;

namespace {

constexpr int kUsage = 2;
constexpr int kInvariant = 3;
constexpr int kIdentity = 4;
constexpr const char* kOutputDirEnv = "DUFLO_OUTPUT_DIR";

struct Output {
  std::string format = "json";
  std::string out;
};

void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", o.out, std::string("output file (default: stdout, or $") + kOutputDirEnv + "/<command>.json)");
}

std::string slug(const std::string& command) {
  std::string s = command;
  for (auto& c : s)
    if (c == ' ') c = '-';
  return s;
}

void emit(const Json& report, const Output& o) {
  std::string text = o.format == "text" ? render_text(report) : report.dump(2) + "\n";
  std::string path = o.out;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      std::string ext = o.format == "text" ? ".txt" : ".json";
      path = (std::filesystem::path(dir) / (slug(report.at("command").get<std::string>()) + ext)).string();
    }
  }
  if (path.empty()) {
    std::cout << text;
    return;
  }
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
  std::cerr << "wrote " << path << "\n";
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int finish(const SuiteResult& r, const Output& o) {
  emit(r.report, o);
  return exit_code_for(r.checks);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification engine for the Duflo isomorphism and its Hochschild/CE calculus"};
  app.require_subcommand(1);
  std::function<int()> action;

  SuiteConfig cfg;
  Output out;
  std::string module = "trivial";
  std::string checks_arg;
  std::string baseline;
  int order = -1;

  auto* algebra = app.add_subcommand("algebra", "metric Lie algebra input");
  algebra->require_subcommand(1);
  auto* validate_cmd = algebra->add_subcommand("validate", "check the metric Lie algebra axioms");
  validate_cmd->add_option("--algebra", cfg.algebra, "builtin name or JSON file")->required();
  add_output_options(validate_cmd, out);
  validate_cmd->callback([&] {
    action = [&] {
      cfg.checks = {"validate"};
      return finish(run_suite(cfg, "algebra validate"), out);
    };
  });

  auto* ce = app.add_subcommand("ce", "Chevalley-Eilenberg complexes");
  ce->require_subcommand(1);
  auto* ce_cohom = ce->add_subcommand("cohomology", "cohomology with trivial, jets:N or uea:D coefficients");
  ce_cohom->add_option("--algebra", cfg.algebra)->required();
  ce_cohom->add_option("--module", module, "trivial | jets:N | uea:D");
  add_output_options(ce_cohom, out);
  ce_cohom->callback([&] {
    action = [&] {
      auto g = resolve_algebra(cfg.algebra);
      std::vector<CheckOutcome> checks{check_ce_module(g, module)};
      Json config{{"algebra", cfg.algebra}, {"module", module}, {"format", out.format}};
      emit(assemble_report("ce cohomology", config, checks), out);
      return exit_code_for(checks);
    };
  });

  auto* hoch = app.add_subcommand("hochschild", "Hochschild complex of Ch(g)");
  hoch->require_subcommand(1);
  auto* hverify = hoch->add_subcommand("verify", "HKR, filtration, d0 and at-map checks");
  hverify->add_option("--algebra", cfg.algebra)->required();
  hverify->add_option("--max-len", cfg.max_len, "weight bound L of the truncated complex");
  hverify->add_option("--jets", cfg.jets, "jet order N");
  hverify->add_option("--checks", checks_arg, "comma list of hkr,cor,d0,at")->default_str("hkr,cor,d0,at");
  add_output_options(hverify, out);
  hverify->callback([&] {
    action = [&] {
      cfg.checks = checks_arg.empty() ? std::vector<std::string>{"hkr", "cor", "d0", "at"} : split_list(checks_arg);
      for (const auto& c : cfg.checks)
        if (c != "hkr" && c != "cor" && c != "d0" && c != "at") throw UsageError("hochschild verify: unknown check '" + c + "'");
      return finish(run_suite(cfg, "hochschild verify"), out);
    };
  });

  auto* duflo = app.add_subcommand("duflo", "Duflo character and isomorphism");
  duflo->require_subcommand(1);
  auto* char_check = duflo->add_subcommand("char-check", "homotopy identities behind the character");
  auto* character = duflo->add_subcommand("character", "j^{1/2} series with its Jacobian oracle");
  auto* iso = duflo->add_subcommand("iso-check", "multiplicativity of the Duflo map on invariants");
  for (auto* cmd : {char_check, character, iso}) {
    cmd->add_option("--algebra", cfg.algebra)->required();
    cmd->add_option("--order", cfg.jets, "truncation order N");
    add_output_options(cmd, out);
  }
  iso->add_option("--degree", cfg.degree, "invariant degree bound D");
  char_check->callback([&] {
    action = [&] {
      cfg.checks = {"char"};
      return finish(run_suite(cfg, "duflo char-check"), out);
    };
  });
  character->callback([&] {
    action = [&] {
      cfg.checks = {"invariant_field", "character"};
      return finish(run_suite(cfg, "duflo character"), out);
    };
  });
  iso->callback([&] {
    action = [&] {
      cfg.checks = {"iso"};
      return finish(run_suite(cfg, "duflo iso-check"), out);
    };
  });

  auto* wilson = app.add_subcommand("wilson", "Wilson loop invariants");
  wilson->require_subcommand(1);
  auto* unknot = wilson->add_subcommand("unknot", "unknot invariant through U(g) with its contraction oracle");
  unknot->add_option("--algebra", cfg.algebra)->required();
  unknot->add_option("--f", cfg.wilson_f, "one | casimir^m | file:<json>");
  unknot->add_option("--h-order", cfg.h_order, "h-order K");
  unknot->add_option("--order", order, "character order N (default 2K + deg f)");
  add_output_options(unknot, out);
  unknot->callback([&] {
    action = [&] {
      if (order < 0) {
        auto g = resolve_algebra(cfg.algebra);
        order = 2 * cfg.h_order + parse_invariant_function(g, cfg.wilson_f).degree();
      }
      cfg.jets = std::max(order, 1);
      cfg.checks = {"wilson"};
      return finish(run_suite(cfg, "wilson unknot"), out);
    };
  });

  auto* suite = app.add_subcommand("suite", "run several checks");
  suite->require_subcommand(1);
  auto* run = suite->add_subcommand("run", "run the configured checks in dependency order");
  run->add_option("--algebra", cfg.algebra, "builtin name or JSON file")->capture_default_str();
  run->add_option("--checks", checks_arg, "comma list or all")->default_str("all");
  run->add_option("--max-len", cfg.max_len, "Hochschild weight bound L")->capture_default_str();
  run->add_option("--jets", cfg.jets, "jet order N")->capture_default_str();
  run->add_option("--degree", cfg.degree, "invariant degree bound D")->capture_default_str();
  run->add_option("--h-order", cfg.h_order, "Wilson h-order K")->capture_default_str();
  run->add_option("--f", cfg.wilson_f, "one | casimir^m | file:<json>")->capture_default_str();
  run->add_option("--baseline", baseline, "pin exact values against this report (created if missing)");
  add_output_options(run, out);
  run->callback([&] {
    action = [&] {
      cfg.checks = checks_arg.empty() ? std::vector<std::string>{"all"} : split_list(checks_arg);
      cfg.format = out.format;
      auto result = run_suite(cfg);
      int code = finish(result, out);
      if (!baseline.empty()) {
        auto pin = pin_regression(result.report, baseline);
        std::cerr << (pin.created ? "notice: " : "") << pin.message << "\n";
        if (!pin.match && code == 0) code = kIdentity;
      }
      return code;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kInvariant;
  }
}
