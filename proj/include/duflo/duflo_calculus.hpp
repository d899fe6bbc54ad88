#pragma once

#include "duflo/algebra.hpp"
#include "duflo/forms.hpp"
#include "duflo/linalg.hpp"
#include "duflo/poly.hpp"

#include <functional>
#include <string>
#include <vector>

namespace duflo {

/// B_0..B_k with B_1 = −1/2, from the recurrence Σ_{j<m+1} C(m+1, j) B_j = 0.
std::vector<Rational> bernoulli(int k);

/// n×n matrix with entries in k[y]; entry [i][j] is M^i_j.
using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix identity_matrix(int n);
PolyMatrix zero_matrix(int n);
PolyMatrix add(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix scale(const PolyMatrix& a, const Rational& s);
/// Product, dropping entry terms of degree > max_degree (negative: exact).
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, int max_degree = -1);
PolyMatrix matrix_power(const PolyMatrix& a, int k, int max_degree = -1);
Poly trace(const PolyMatrix& a);
PolyMatrix truncated(const PolyMatrix& a, int max_degree);
bool operator==(const PolyMatrix& a, const PolyMatrix& b);

/// (Ad)^i_j = Σ_k y^k c[k][j][i]: ad as a linear function on g.
PolyMatrix ad_tensor(const MetricLieAlgebra& g);
/// Substitutes y = λ into a polynomial matrix.
std::vector<std::vector<Rational>> evaluate(const PolyMatrix& m, const std::vector<Rational>& point);

enum class Side { Left, Right };

/// id ± ½Ad + Σ_{2n≤N} B_{2n}/(2n)! Ad^{2n}; "+" for Left.
PolyMatrix invariant_field_matrix(const MetricLieAlgebra& g, Side side, int order);
/// id + Σ_{2n≤N} B_{2n}/(2n)! Ad^{2n}; `drop_from` > 0 omits the terms with 2n ≥ drop_from.
PolyMatrix even_bernoulli_matrix(const MetricLieAlgebra& g, int order, int drop_from = 0);
/// Σ_{k≤N} (∓1)^k Ad^k/(k+1)!: (1−e^{−Ad})/Ad for Left, (e^{Ad}−1)/Ad for Right.
PolyMatrix exponential_differential(const MetricLieAlgebra& g, Side side, int order);
/// M_±·(series) == id through degree N.
bool invariant_field_oracle(const MetricLieAlgebra& g, Side side, int order);

/// Σ_{2n≤N} B_{2n}/(4n(2n)!) Tr(Ad^{2n}) = log j^{1/2}.
Poly duflo_log(const MetricLieAlgebra& g, int order);
/// j^{1/2} = exp(duflo_log), truncated at degree N; sign = −1 gives j^{−1/2}.
Poly duflo_character(const MetricLieAlgebra& g, int order, int sign = 1);
/// det((1−e^{−Ad})/Ad) through degree N by permutation expansion.
Poly jacobian_oracle(const MetricLieAlgebra& g, int order);
/// (j^{1/2})² == jacobian_oracle through degree N.
bool character_oracle(const MetricLieAlgebra& g, int order);

using FormOperator = std::function<Form(const Form&)>;

/// Forms operators. They act exactly on Form values (no truncation unless
/// stated) and keep a reference to `f`, which must outlive them.
/// contraction(M) = −Σ M^i_j P^{jk} ∂/∂ξ^k ∂/∂y^i with P = g^{−1}.
FormOperator contraction_operator(const FormAlgebra& f, const PolyMatrix& m);
/// Brylinski differential = contraction(id).
FormOperator brylinski_operator(const FormAlgebra& f);
/// d₀ on forms = contraction(id + Σ_{2n≤N} B_{2n}/(2n)! Ad^{2n}).
FormOperator d0_operator(const FormAlgebra& f, int order, int drop_from = 0);
/// H_{2n−1} = Σ (Ad^{2n−1})^i_j P^{jk} ∂/∂ξ^k ∂/∂ξ^i.
FormOperator homotopy_h_operator(const FormAlgebra& f, int n);
/// K = ½ Σ_{2n≤N} B_{2n}/(2n)! H_{2n−1}.
FormOperator homotopy_k_operator(const FormAlgebra& f, int order);
/// Multiplication by a function of y, dropping output terms of y-degree > max_ydeg (negative: exact).
FormOperator multiplication_operator(const FormAlgebra& f, const Poly& p, int max_ydeg = -1);
FormOperator ce_operator(const FormAlgebra& f);
FormOperator compose(FormOperator outer, FormOperator inner);
/// a ↦ ca·x(a) + cb·y(a)
FormOperator combine(FormOperator x, const Rational& ca, FormOperator y, const Rational& cb);
/// [x, y] = x∘y − sign·y∘x
FormOperator commutator(FormOperator x, FormOperator y, int sign = 1);

/// Result of comparing two operators on every basis form of ξ-degree
/// 0..n and y-degree ≤ source_ydeg, on outputs of y-degree ≤ window.
struct IdentityCheck {
  std::string name;
  bool passed = true;
  int window = 0;
  int checked = 0;
  int witness_degree = -1;
  FormKey witness;
  std::string message;
};
IdentityCheck compare_operators(const std::string& name, const FormAlgebra& f, const FormOperator& lhs,
                                const FormOperator& rhs, int source_ydeg, int window);

/// dH − Hd == 2 contraction(Ad^{2n}) − (1/2n)[d_Br, Tr Ad^{2n}].
IdentityCheck verify_homotopy_commutator(const MetricLieAlgebra& g, int n, int order);
/// contraction(M₊) + contraction(M₋) == 2 d₀.
IdentityCheck verify_d0_half_sum(const MetricLieAlgebra& g, int order);

struct CharReport {
  int order = 0;
  int window = 0;
  std::vector<IdentityCheck> checks;
  bool solver_run = false;
  bool solver_feasible = false;
  std::string solver_message;
  bool passed() const;
};
/// Φ = d₀ − j^{−1/2} d_Br j^{1/2} equals dK − Kd on outputs of y-degree ≤ N−1,
/// plus the supporting identities. With run_solver, also confirms Φ is
/// null-homotopic on the truncated forms complex by find_chain_homotopy.
CharReport verify_char(const MetricLieAlgebra& g, int order, bool run_solver = true);

/// Matrices of an operator of ξ-degree `shift` on the forms complex truncated at
/// y-degree ≤ max_ydeg, one per source degree.
std::vector<SparseMatrix> operator_matrices(const FormAlgebra& f, const FormOperator& op, int shift, int max_ydeg);

}  // namespace duflo
