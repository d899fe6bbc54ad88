#include "duflo/wilson.hpp"

#include "duflo/duflo_calculus.hpp"
#include "duflo/errors.hpp"
#include "json_util.hpp"

#include <json.hpp>

#include <fstream>

namespace duflo {

InvariantFunction::InvariantFunction(const MetricLieAlgebra& g, Poly f) : f_(std::move(f)) {
  if (f_.nvars() != g.dim()) throw UsageError("invariant function has the wrong number of variables");
  for (int i = 0; i < g.dim(); ++i)
    if (!coadjoint_action_on_jets(g, i, f_).is_zero())
      throw UsageError("function is not invariant under the coadjoint action of " + g.basis_names()[i]);
}

InvariantFunction parse_invariant_function(const MetricLieAlgebra& g, const std::string& spec) {
  const int n = g.dim();
  if (spec == "one") return InvariantFunction(g, Poly::constant(n, 1));
  if (spec.rfind("casimir^", 0) == 0) {
    int m = 0;
    try {
      size_t used = 0;
      m = std::stoi(spec.substr(8), &used);
      if (used != spec.size() - 8) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw UsageError("bad invariant spec: " + spec);
    }
    if (m < 0) throw UsageError("casimir power must be ≥ 0");
    return InvariantFunction(g, power(dual_casimir(g), m));
  }
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw UsageError("cannot open " + spec.substr(5));
    Poly p(n);
    try {
      auto doc = nlohmann::json::parse(in);
      for (const auto& t : doc.at("terms")) {
        auto e = t.at(0).get<Exponents>();
        if (static_cast<int>(e.size()) != n) throw UsageError("exponent vector of the wrong length in " + spec);
        for (int x : e)
          if (x < 0) throw UsageError("negative exponent in " + spec);
        p.add_term(e, json_rational(t.at(1), t.at(2)));
      }
    } catch (const nlohmann::json::exception& ex) {
      throw UsageError("malformed polynomial file: " + std::string(ex.what()));
    }
    return InvariantFunction(g, std::move(p));
  }
  throw UsageError("unknown invariant spec '" + spec + "' (expected one, casimir^m or file:<path>)");
}

void check_wilson_budget(const InvariantFunction& f, int h_order, int character_order) {
  if (h_order < 0) throw UsageError("h-order must be ≥ 0");
  const int need = 2 * h_order + f.degree();
  if (character_order < need)
    throw UsageError("Wilson pipeline needs jet order N ≥ 2K + deg f = " + std::to_string(need));
}

std::vector<PBWElement> chain_composition(const MetricLieAlgebra& g, const InvariantFunction& f, int h_order,
                                          int character_order) {
  check_wilson_budget(f, h_order, character_order);
  Enveloping u(g);
  Poly character = duflo_character(g, character_order);
  Poly t = casimir(g);
  Poly tm = Poly::constant(g.dim(), 1);
  std::vector<PBWElement> out;
  for (int m = 0; m <= h_order; ++m) {
    if (m > 0) tm = tm * t * (1 / Rational(m));
    Poly s = apply_as_differential_operator(character, apply_as_differential_operator(f.poly(), tm));
    out.push_back(u.symmetrize(s));
  }
  return out;
}

HSeries unknot_invariant(const MetricLieAlgebra& g, const InvariantFunction& f, int h_order, int character_order) {
  HSeries out;
  for (const auto& p : chain_composition(g, f, h_order, character_order)) out.push_back(p.constant_term());
  return out;
}

HSeries unknot_oracle(const MetricLieAlgebra& g, const InvariantFunction& f, int h_order, int character_order) {
  check_wilson_budget(f, h_order, character_order);
  Poly q = multiply(f.poly(), duflo_character(g, character_order), 2 * h_order);
  Poly t = casimir(g);
  HSeries out;
  for (int m = 0; m <= h_order; ++m) {
    Poly tm = power(t, m) * (1 / factorial(m));
    Rational s = 0;
    Poly part = q.homogeneous_part(2 * m);
    for (const auto& [a, c] : part.terms()) {
      Rational w = tm.coeff(a);
      if (w == 0) continue;
      Rational fact = 1;
      for (int x : a) fact *= factorial(x);
      s += c * w * fact;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace duflo
