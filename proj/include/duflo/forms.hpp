#pragma once

#include "duflo/algebra.hpp"
#include "duflo/linalg.hpp"
#include "duflo/poly.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace duflo {

/// Monomial ξ^{mask} · y^{exps} of the forms superalgebra Λ[ξ^0..ξ^{n−1}] ⊗ k[y^0..y^{n−1}].
/// ξ^i are the odd CE generators, y^i = d_dR ξ^i the even jet coordinates.
/// Odd letters are ordered by ascending index.
struct FormKey {
  std::uint32_t mask = 0;
  Exponents y;
  auto operator<=>(const FormKey&) const = default;
  int xi_degree() const { return popcount(mask); }
  int y_degree() const { return total_degree(y); }
};

using Form = std::map<FormKey, Rational>;

void add_term(Form& f, const FormKey& k, const Rational& c);
void axpy(Form& y, const Rational& a, const Form& x);
Form scaled(const Form& f, const Rational& a);
/// Drops terms of y-degree > max_ydeg.
Form truncated(const Form& f, int max_ydeg);

/// (−1)^{#{(i,j): i ∈ a, j ∈ b, i > j}}: sign of ξ^a ξ^b → ξ^{a∪b}.
int wedge_sign(std::uint32_t a, std::uint32_t b);

/// Forms over a fixed metric Lie algebra, with jet order N used for bases
/// and matrices. Products and operators are exact; matrices drop outputs of
/// y-degree above the requested bound.
class FormAlgebra {
 public:
  FormAlgebra(const MetricLieAlgebra& g, int jet_order);

  const MetricLieAlgebra& algebra() const { return g_; }
  int n() const { return g_.dim(); }
  int jet_order() const { return order_; }

  Form one() const;
  Form xi(int k) const;
  Form y(int k) const;
  Form monomial(std::uint32_t mask, const Exponents& e, const Rational& c = 1) const;
  Form from_poly(const Poly& p) const;

  /// Product; max_ydeg < 0 means untruncated.
  Form multiply(const Form& a, const Form& b, int max_ydeg = -1) const;
  /// Left derivative ∂/∂ξ^k.
  Form d_xi(int k, const Form& a) const;
  /// Right derivative a ∂⃖/∂ξ^k.
  Form d_xi_right(int k, const Form& a) const;
  Form d_y(int k, const Form& a) const;

  /// CE differential: dξ^k = −Σ_{i<j} c[i][j][k] ξ^iξ^j, dy^k = −Σ_{i,j} c[i][j][k] ξ^i y^j.
  Form d_ce(const Form& a) const;
  /// de Rham differential Σ_k y^k ∂/∂ξ^k (odd, lowers ξ-degree by one).
  Form d_dr(const Form& a) const;

  /// Basis of ξ-degree k and y-degree ≤ max_ydeg (default: jet order).
  const std::vector<FormKey>& basis(int k, int max_ydeg = -1) const;
  int index(const FormKey& key, int max_ydeg = -1) const;
  SparseVector to_vector(const Form& f, int max_ydeg = -1) const;
  Form from_vector(const SparseVector& v, int k, int max_ydeg = -1) const;

  /// Matrix of op from ξ-degree `from` to ξ-degree `to`, source basis with
  /// y-degree ≤ source_ydeg, target basis with y-degree ≤ target_ydeg (terms
  /// above are dropped). Throws if op produces another ξ-degree.
  SparseMatrix matrix(const std::function<Form(const Form&)>& op, int from, int to, int source_ydeg = -1,
                      int target_ydeg = -1) const;

  /// (Λ ⊗ k[y]_{≤N}, d_CE) graded by ξ-degree.
  FiniteChainComplex ce_complex(int max_ydeg = -1) const;

 private:
  struct Basis {
    std::vector<FormKey> keys;
    std::map<FormKey, int> index;
  };
  const Basis& basis_for(int k, int max_ydeg) const;

  MetricLieAlgebra g_;
  int order_;
  std::vector<Form> dxi_;  // dξ^k
  std::vector<Form> dy_;   // dy^k
  mutable std::map<std::pair<int, int>, Basis> bases_;
};

}  // namespace duflo
