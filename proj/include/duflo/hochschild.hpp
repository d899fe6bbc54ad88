#pragma once

#include "duflo/algebra.hpp"
#include "duflo/forms.hpp"
#include "duflo/linalg.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace duflo {

/// a₀ ⊗ a₁ ⊗ ⋯ ⊗ a_i in the reduced Hochschild complex of Ch(g). a₀ is a forms
/// monomial (y-degree 0 for algebra coefficients, 1 for the one-forms
/// bimodule); every letter a_{j≥1} is a nonempty ξ-mask.
struct Chain {
  FormKey a0;
  std::vector<std::uint32_t> letters;
  auto operator<=>(const Chain&) const = default;
  int length() const { return static_cast<int>(letters.size()); }
};

using ChainSum = std::map<Chain, Rational>;

void add_term(ChainSum& s, const Chain& c, const Rational& v);
void axpy(ChainSum& y, const Rational& a, const ChainSum& x);

/// ε_j = |a₀| + Σ_{k≤j} (|a_k| − 1); the chain degree is ε_i.
int partial_degree(const Chain& c, int j);
int chain_degree(const Chain& c);
/// |a₀| + ydeg a₀ + Σ |a_j|; both differentials never lower it.
int chain_weight(const Chain& c);

enum class Coefficients { Algebra, OneForms };

/// Bilinear map on forms used in place of the product by the bar differential.
using FormProduct = std::function<Form(const Form&, const Form&)>;

/// Bar differential with an arbitrary product μ:
///   (−1)^{|a₀|} μ(a₀,a₁)[a₂…] + Σ_{j<i} (−1)^{ε_j} a₀[…μ(a_j,a_{j+1})…]
///   − (−1)^{(|a_i|−1)ε_{i−1}} μ(a_i,a₀)[a₁…a_{i−1}],
/// dropping scalar results in letter slots.
ChainSum bar_differential(const ChainSum& x, const FormProduct& mu);

/// Quotient of the reduced Hochschild complex by chains of weight > W,
/// graded by chain degree. D = d_int + b.
class HochschildComplex {
 public:
  HochschildComplex(const MetricLieAlgebra& g, int max_weight, Coefficients coefficients = Coefficients::Algebra);

  const FormAlgebra& forms() const { return forms_; }
  const MetricLieAlgebra& algebra() const { return forms_.algebra(); }
  int max_weight() const { return max_weight_; }
  Coefficients coefficients() const { return coefficients_; }

  ChainSum bar(const ChainSum& x) const;
  ChainSum internal(const ChainSum& x) const;
  /// D = d_int + b, then truncated.
  ChainSum differential(const ChainSum& x) const;
  ChainSum truncate(const ChainSum& x) const;

  int lo() const { return 0; }
  int hi() const { return hi_; }
  const std::vector<Chain>& basis(int degree) const;
  int index(const Chain& c) const;
  /// Truncates first; throws std::logic_error on a term of another degree.
  SparseVector to_vector(const ChainSum& x, int degree) const;
  ChainSum from_vector(const SparseVector& v, int degree) const;
  SparseMatrix matrix(const std::function<ChainSum(const ChainSum&)>& op, int from, int to) const;

  const FiniteChainComplex& complex() const { return complex_; }

 private:
  FormAlgebra forms_;
  int max_weight_;
  Coefficients coefficients_;
  int hi_ = 0;
  std::vector<std::vector<Chain>> bases_;
  std::map<Chain, int> index_;
  FiniteChainComplex complex_;
};

/// Forms Λ ⊗ k[y] with d_CE, quotient by weight |ξ| + ydeg > W.
class WeightedForms {
 public:
  WeightedForms(const FormAlgebra& f, int max_weight);

  const FormAlgebra& forms() const { return f_; }
  int max_weight() const { return max_weight_; }
  Form truncate(const Form& x) const;
  const std::vector<FormKey>& basis(int degree) const;
  SparseVector to_vector(const Form& x, int degree) const;
  Form from_vector(const SparseVector& v, int degree) const;
  const FiniteChainComplex& complex() const { return complex_; }

 private:
  const FormAlgebra& f_;
  int max_weight_;
  std::vector<std::vector<FormKey>> bases_;
  std::map<FormKey, int> index_;
  FiniteChainComplex complex_;
};

/// (1/i!) a₀ · d_dR a₁ ⋯ d_dR a_i, untruncated.
Form hkr(const FormAlgebra& f, const ChainSum& x);
/// HKR matrices from the Hochschild quotient at weight W to WeightedForms(W), per degree.
std::vector<SparseMatrix> hkr_matrices(const HochschildComplex& h, const WeightedForms& w);

struct HkrReport {
  int max_weight = 0;
  ChainMapCheck chain_map;
  std::map<int, int> hochschild_dims;
  std::map<int, int> forms_dims;
  /// Images of the Hochschild classes stay independent modulo forms boundaries.
  bool injective = true;
  int witness_degree = -1;
  bool passed() const;
};
HkrReport verify_hkr(const MetricLieAlgebra& g, int max_weight);

/// V₁: chains all of whose letters have exterior degree 1.
bool in_filtration_one(const Chain& c);

struct CorReport {
  int max_weight = 0;
  std::map<int, int> homology_dims;
  /// dim((Z ∩ V₁) + B)/B per degree.
  std::map<int, int> filtered_dims;
  bool passed = true;
  int witness_degree = -1;
  ChainSum witness;  // a cycle outside (Z ∩ V₁) + B
};
/// Checks Z = (Z ∩ V₁) + B in every degree. `drop_boundaries` removes the
/// boundary space (negative control).
CorReport verify_cor(const HochschildComplex& h, bool drop_boundaries = false);
/// A chain in V₁ homologous to the cycle z, or nullopt.
std::optional<ChainSum> filtration_representative(const HochschildComplex& h, int degree, const ChainSum& z);

/// First map: a₀[a₁a₂…] ↦ (a₀·d_dR a₁)[a₂…]. Second: a₀[a₁…a_i] ↦
/// (−1)^{(|a_i|−1)ε_{i−1}} (d_dR a_i)·a₀ [a₁…a_{i−1}]. Both land in the
/// one-forms bimodule complex; length-0 chains map to 0.
ChainSum at_first(const FormAlgebra& f, const ChainSum& x);
ChainSum at_second(const FormAlgebra& f, const ChainSum& x);

struct AtReport {
  int max_weight = 0;
  ChainMapCheck first;
  ChainMapCheck second;
  bool passed() const { return first.ok && second.ok; }
};
AtReport verify_at(const MetricLieAlgebra& g, int max_weight);

/// {a, b} = Σ P^{kl} (a ∂⃖/∂ξ^k)(∂/∂ξ^l b), P = g^{−1}.
Form poisson_bracket(const FormAlgebra& f, const Form& a, const Form& b);

/// Ch(g) ⊗ ℚ[ε]/ε², deg ε = 2, with a·b = ab + ½ε{a,b}.
struct EpsilonElement {
  Form constant;
  Form linear;  // coefficient of ε
  bool operator==(const EpsilonElement&) const = default;
};
class EpsilonAlgebra {
 public:
  explicit EpsilonAlgebra(const FormAlgebra& f) : f_(f) {}
  EpsilonElement lift(const Form& a) const { return {a, {}}; }
  EpsilonElement multiply(const EpsilonElement& a, const EpsilonElement& b) const;
  /// Returns the first basis triple (masks) violating associativity, if any.
  std::optional<std::vector<std::uint32_t>> associativity_failure() const;

 private:
  const FormAlgebra& f_;
};

/// Bar differential with μ = ½{,}.
ChainSum d0_on_chains(const FormAlgebra& f, const ChainSum& x);
/// ε-linear part of the bar differential of the ε-deformed algebra.
ChainSum d0_by_extraction(const FormAlgebra& f, const ChainSum& x);

struct D0ChainReport {
  int max_weight = 0;
  int checked = 0;
  bool paths_agree = true;
  bool anticommutes = true;
  std::optional<Chain> witness;
  bool passed() const { return paths_agree && anticommutes; }
};
/// Both d₀ paths agree on every basis chain, and Dd₀ + d₀D = 0 on outputs of weight ≤ W − 2.
D0ChainReport verify_d0_on_chains(const HochschildComplex& h);

struct TransportReport {
  int max_weight = 0;
  int jet_order = 0;
  int classes = 0;
  int matched = 0;
  int witness_degree = -1;
  int witness_class = -1;
  bool passed() const { return matched == classes; }
};
/// For each Hochschild class: V₁ representative r; hkr(d₀ r) and d₀^{forms}(hkr r)
/// must agree in forms homology at weight ≤ W − 2. `drop_from` is passed to
/// d0_operator (negative control). Requires jet_order ≥ W − 1.
TransportReport verify_d0_transport(const MetricLieAlgebra& g, int max_weight, int jet_order, int drop_from = 0);

}  // namespace duflo
