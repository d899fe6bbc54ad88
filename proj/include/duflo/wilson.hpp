#pragma once

#include "duflo/algebra.hpp"
#include "duflo/enveloping.hpp"
#include "duflo/poly.hpp"

#include <string>
#include <vector>

namespace duflo {

/// Coefficients of h^0..h^K.
using HSeries = std::vector<Rational>;

/// An ad-invariant function on g: a polynomial in the jet coordinates y.
/// Invariance under the coadjoint action is checked on construction.
class InvariantFunction {
 public:
  InvariantFunction(const MetricLieAlgebra& g, Poly f);
  const Poly& poly() const { return f_; }
  int degree() const { return f_.is_zero() ? 0 : f_.degree(); }

 private:
  Poly f_;
};

/// "one", "casimir^m" (m-th power of Σ g_ij y^i y^j) or "file:<path>", where the
/// file holds {"terms": [[[e_0, …, e_{n−1}], num, den], …]}. Throws UsageError.
InvariantFunction parse_invariant_function(const MetricLieAlgebra& g, const std::string& spec);

/// N ≥ 2K + deg f; throws UsageError naming the required N otherwise.
void check_wilson_budget(const InvariantFunction& f, int h_order, int character_order);

/// Per h-order m ≤ K: symmetrize(j^{1/2}(∂) f(∂) t^m/m!), t = Σ g^{ij} x_i x_j.
std::vector<PBWElement> chain_composition(const MetricLieAlgebra& g, const InvariantFunction& f, int h_order,
                                          int character_order);

/// Augmentation (PBW constant term) of chain_composition.
HSeries unknot_invariant(const MetricLieAlgebra& g, const InvariantFunction& f, int h_order, int character_order);

/// ⟨f·j^{1/2}, exp(h t)⟩ from the pairing ⟨y^a, x^b⟩ = δ_{ab} a!.
HSeries unknot_oracle(const MetricLieAlgebra& g, const InvariantFunction& f, int h_order, int character_order);

}  // namespace duflo
