#pragma once

#include "duflo/algebra.hpp"
#include "duflo/forms.hpp"
#include "duflo/linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace duflo {

/// Coefficient module for Ch(g, E).
struct ModuleSpec {
  enum class Kind { Trivial, Jets, Uea };
  Kind kind = Kind::Trivial;
  int order = 0;  // N for jets, D for uea

  /// "trivial", "jets:N", "uea:D"; throws UsageError.
  static ModuleSpec parse(const std::string& text);
  std::string to_string() const;
};

/// Ch(g, E) graded by exterior degree; the degree-k basis is
/// (ξ^S, e_f) for |S| = k in ascending mask order, then fiber index f.
struct CEModuleComplex {
  ModuleSpec module;
  int fiber_dim = 1;
  std::vector<std::string> fiber_labels;
  std::vector<std::vector<std::uint32_t>> masks;  // per degree
  FiniteChainComplex complex;
};

/// ρ(x_i) on the fiber for jets(N) (coadjoint action on monomials of degree ≤ N)
/// and uea(D) (ad on PBW monomials of degree ≤ D); trivial gives zero 1×1 matrices.
std::vector<SparseMatrix> module_action(const MetricLieAlgebra& g, const ModuleSpec& module);

/// d(ξ^S ⊗ e) = dξ^S ⊗ e + Σ_i ξ^i ξ^S ⊗ ρ(x_i) e with dξ^k = −Σ_{i<j} c[i][j][k] ξ^iξ^j.
/// Verifies d² = 0 and throws InvariantError with the offending degree otherwise.
CEModuleComplex build_ce_module(const MetricLieAlgebra& g, const ModuleSpec& module);
CEModuleComplex build_ce(const MetricLieAlgebra& g);

/// Same construction for an arbitrary family of fiber operators; d² is
/// checked only when `check` is set (used for negative tests).
CEModuleComplex build_ce_with_action(const MetricLieAlgebra& g, const std::vector<SparseMatrix>& rho,
                                     ModuleSpec module, bool check = true);

/// dξ^S in the exterior algebra (masks only).
std::map<std::uint32_t, Rational> ce_differential(const MetricLieAlgebra& g, std::uint32_t mask);

struct CECohomology {
  std::map<int, int> dims;
  std::map<int, std::vector<SparseVector>> representatives;  // filled on request
};
CECohomology ce_cohomology(const CEModuleComplex& c, bool with_representatives = false);

}  // namespace duflo
