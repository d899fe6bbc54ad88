#pragma once

#include "duflo/algebra.hpp"
#include "duflo/linalg.hpp"
#include "duflo/poly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace duflo {

/// Elements of U(g) in the PBW basis: the exponent vector e stands for the
/// ordered word x_0^{e_0} ⋯ x_{n−1}^{e_{n−1}}. Elements of S(g) use the same
/// Poly type with commuting variables; the two are never mixed implicitly.
using PBWElement = Poly;
using SymElement = Poly;

/// Straightening engine for U(g). Caches rewrite results; an instance is not
/// safe to share between threads.
class Enveloping {
 public:
  explicit Enveloping(const MetricLieAlgebra& g);

  const MetricLieAlgebra& algebra() const { return g_; }
  int n() const { return g_.dim(); }

  PBWElement one() const;
  PBWElement generator(int i) const;

  PBWElement product(const PBWElement& u, const PBWElement& v) const;
  PBWElement commutator(const PBWElement& u, const PBWElement& v) const;
  /// ad(x_i)(u) = x_i u − u x_i
  PBWElement ad(int i, const PBWElement& u) const;

  /// Monomial ↦ average over all orderings of its letters, multiplied in U(g).
  PBWElement symmetrize(const SymElement& s) const;

  /// Matrices of ad(x_i) on the PBW basis monomials_up_to(n, D).
  std::vector<SparseMatrix> adjoint_action_matrices(int max_degree) const;

  bool is_central(const PBWElement& u) const;

 private:
  const PBWElement& times_generator(const Exponents& a, int j) const;
  const PBWElement& symmetrized_monomial(const Exponents& e) const;

  MetricLieAlgebra g_;
  mutable std::map<std::pair<Exponents, int>, PBWElement> right_cache_;
  mutable std::map<Exponents, PBWElement> sym_cache_;
};

/// Basis of (S^{≤D} g)^g, homogeneous, lowest degree first.
std::vector<SymElement> invariants_basis(const MetricLieAlgebra& g, int max_degree);
bool is_invariant(const MetricLieAlgebra& g, const SymElement& s);

/// symmetrize(j^{1/2}(∂) s): the character acts as a constant-coefficient
/// differential operator (y^i ↦ ∂/∂x_i). Throws UsageError if s is not
/// invariant or the character order is below deg s.
PBWElement duflo_map(const Enveloping& u, const SymElement& s, int character_order);

struct PairCheck {
  int alpha = 0;
  int beta = 0;
  bool passed = false;
  PBWElement difference;  // lhs − rhs
};

struct DufloIsoReport {
  std::vector<SymElement> invariants;
  std::vector<PairCheck> pairs;          // duflo_map
  std::vector<PairCheck> control_pairs;  // plain symmetrization
  bool central = true;                   // every duflo_map(s_α) commutes with all generators
  bool multiplicative() const;
  /// The symmetrization alone fails for some pair (expected for non-abelian g).
  bool control_detects() const;
};

DufloIsoReport verify_duflo_isomorphism(const MetricLieAlgebra& g, int max_degree, int character_order);

}  // namespace duflo
