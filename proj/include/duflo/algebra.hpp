#pragma once

#include "duflo/poly.hpp"
#include "duflo/rational.hpp"

#include <string>
#include <vector>

namespace duflo {

/// Finite-dimensional Lie algebra with an invariant symmetric pairing.
///
/// [x_i, x_j] = Σ_k structure(i, j, k) x_k and ⟨x_i, x_j⟩ = metric(i, j).
/// The object is immutable after construction; the inverse metric (the
/// induced pairing on g^∨) is computed once, if the metric is nondegenerate.
class MetricLieAlgebra {
 public:
  MetricLieAlgebra() = default;
  MetricLieAlgebra(std::string name, int dim, std::vector<Rational> structure,
                   std::vector<Rational> metric, std::vector<std::string> basis_names = {});

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Rational& c(int i, int j, int k) const { return structure_[(i * dim_ + j) * dim_ + k]; }
  const Rational& metric(int i, int j) const { return metric_[i * dim_ + j]; }
  /// g^{ij}; only meaningful when nondegenerate().
  const Rational& metric_inverse(int i, int j) const { return metric_inverse_[i * dim_ + j]; }
  const Rational& metric_determinant() const { return det_; }
  bool nondegenerate() const { return det_ != 0; }
  const std::vector<std::string>& basis_names() const { return names_; }
  bool is_abelian() const;

  const std::vector<Rational>& structure_data() const { return structure_; }
  const std::vector<Rational>& metric_data() const { return metric_; }

 private:
  std::string name_;
  int dim_ = 0;
  std::vector<Rational> structure_;
  std::vector<Rational> metric_;
  std::vector<Rational> metric_inverse_;
  Rational det_;
  std::vector<std::string> names_;
};

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  std::vector<int> witness;  // first violating index tuple
  Rational residual;         // nonzero residual at the witness
};

struct ValidationReport {
  std::vector<AxiomResult> axioms;
  bool ok() const;
  const AxiomResult* find(const std::string& axiom) const;
};

/// Checks antisymmetry, Jacobi, metric symmetry, nondegeneracy, invariance and
/// metric·metric_inverse = id.
ValidationReport validate(const MetricLieAlgebra& algebra);

/// Builtin registry. Basis conventions (frozen; downstream values depend on them):
///   abelian(n[, metric])  zero bracket, identity metric unless given.
///   sl2(scale)            basis (h, e, f): [h,e]=2e, [h,f]=-2f, [e,f]=h;
///                         metric = scale · Killing, κ(h,h)=8, κ(e,f)=4.
///   so3(scale)            basis (x1, x2, x3): [x_i, x_j] = ε_ijk x_k;
///                         metric = scale · identity (= -scale/2 · Killing).
///   oscillator            basis (p, q, e, h): [p,q]=e, [h,p]=q, [h,q]=-p;
///                         ⟨p,p⟩=⟨q,q⟩=1, ⟨e,h⟩=1.
MetricLieAlgebra abelian(int n);
MetricLieAlgebra abelian(int n, const std::vector<Rational>& metric);
MetricLieAlgebra sl2(const Rational& scale = 1);
MetricLieAlgebra so3(const Rational& scale = 1);
MetricLieAlgebra oscillator();

/// Resolves "sl2", "sl2:2", "so3", "abelian:3", "oscillator", … ; throws UsageError.
MetricLieAlgebra builtin(const std::string& spec);

/// Parses the JSON ingestion format
/// {name, dim, bracket: [[i,j,k,num,den],...], metric: [[i,j,num,den],...]}.
/// Bracket entries with i<j also fill (j,i); metric entries fill the transpose
/// unless it is given explicitly. Throws UsageError on malformed input.
MetricLieAlgebra algebra_from_json_text(const std::string& text);
MetricLieAlgebra load_algebra_file(const std::string& path);
/// Builtin name or path to a JSON file.
MetricLieAlgebra resolve_algebra(const std::string& name_or_path);

/// Matrix of ad(Σ λ_i x_i): entry [k][j] = Σ_i λ_i c[i][j][k].
struct AdEndomorphism {
  std::vector<Rational> base_vector_coeffs;
  std::vector<std::vector<Rational>> matrix;
};
AdEndomorphism ad(const MetricLieAlgebra& algebra, const std::vector<Rational>& coeffs);

/// Casimir tensor Σ g^{ij} x_i x_j in S²g (as a polynomial in the x_i).
Poly casimir(const MetricLieAlgebra& algebra);
/// The metric as a quadratic function on g: Σ g_ij y^i y^j, with y^i the dual coordinates.
Poly dual_casimir(const MetricLieAlgebra& algebra);

/// Adjoint action of x_i on S(g) as a derivation.
Poly adjoint_action_on_sym(const MetricLieAlgebra& algebra, int i, const Poly& s);
/// Coadjoint action of x_i on functions on g: y^k ↦ -Σ_j c[i][j][k] y^j, extended as a derivation.
Poly coadjoint_action_on_jets(const MetricLieAlgebra& algebra, int i, const Poly& f);

/// Exact inverse of a square rational matrix (row-major). Returns false if singular.
bool invert_matrix(const std::vector<Rational>& m, int n, std::vector<Rational>& inverse, Rational& det);

}  // namespace duflo
