#include "duflo/duflo_calculus.hpp"

#include "duflo/errors.hpp"

#include <algorithm>
#include <numeric>

namespace duflo {

std::vector<Rational> bernoulli(int k) {
  if (k < 0) throw UsageError("bernoulli: negative order");
  std::vector<Rational> b(k + 1);
  b[0] = 1;
  for (int m = 1; m <= k; ++m) {
    // Σ_{j=0}^{m} C(m+1, j) B_j = 0
    Rational s = 0;
    mpz_class binom = 1;  // C(m+1, 0)
    for (int j = 0; j < m; ++j) {
      s += Rational(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -s / Rational(binom);
  }
  return b;
}

PolyMatrix zero_matrix(int n) { return PolyMatrix(n, std::vector<Poly>(n, Poly(n))); }

PolyMatrix identity_matrix(int n) {
  auto m = zero_matrix(n);
  for (int i = 0; i < n; ++i) m[i][i] = Poly::constant(n, 1);
  return m;
}

PolyMatrix add(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) out[i][j] += b[i][j];
  return out;
}

PolyMatrix scale(const PolyMatrix& a, const Rational& s) {
  PolyMatrix out = a;
  for (auto& row : out)
    for (auto& p : row) p *= s;
  return out;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, int max_degree) {
  const int n = static_cast<int>(a.size());
  auto out = zero_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) out[i][j] += duflo::multiply(a[i][k], b[k][j], max_degree);
    }
  return out;
}

PolyMatrix matrix_power(const PolyMatrix& a, int k, int max_degree) {
  auto out = identity_matrix(static_cast<int>(a.size()));
  for (int i = 0; i < k; ++i) out = multiply(out, a, max_degree);
  return out;
}

Poly trace(const PolyMatrix& a) {
  Poly t(a.empty() ? 0 : a[0][0].nvars());
  for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

PolyMatrix truncated(const PolyMatrix& a, int max_degree) {
  PolyMatrix out = a;
  for (auto& row : out)
    for (auto& p : row) p = p.truncated(max_degree);
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (!(a[i][j] == b[i][j])) return false;
  return true;
}

PolyMatrix ad_tensor(const MetricLieAlgebra& g) {
  const int n = g.dim();
  auto m = zero_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (g.c(k, j, i) != 0) m[i][j] += Poly::variable(n, k, g.c(k, j, i));
  return m;
}

std::vector<std::vector<Rational>> evaluate(const PolyMatrix& m, const std::vector<Rational>& point) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [e, c] : m[i][j].terms()) {
        Rational v = c;
        for (size_t t = 0; t < e.size(); ++t)
          for (int r = 0; r < e[t]; ++r) v *= point[t];
        out[i][j] += v;
      }
  return out;
}

PolyMatrix even_bernoulli_matrix(const MetricLieAlgebra& g, int order, int drop_from) {
  const int n = g.dim();
  auto b = bernoulli(std::max(order, 1));
  auto ad = ad_tensor(g);
  auto out = identity_matrix(n);
  auto power = identity_matrix(n);
  for (int m = 1; m <= order; ++m) {
    power = multiply(power, ad);
    if (m % 2 == 1) continue;
    if (drop_from > 0 && m >= drop_from) break;
    out = add(out, scale(power, b[m] / factorial(m)));
  }
  return out;
}

PolyMatrix invariant_field_matrix(const MetricLieAlgebra& g, Side side, int order) {
  auto out = even_bernoulli_matrix(g, order);
  if (order >= 1) out = add(out, scale(ad_tensor(g), side == Side::Left ? Rational(1, 2) : Rational(-1, 2)));
  return out;
}

PolyMatrix exponential_differential(const MetricLieAlgebra& g, Side side, int order) {
  const int n = g.dim();
  auto ad = ad_tensor(g);
  auto out = zero_matrix(n);
  auto power = identity_matrix(n);
  for (int k = 0; k <= order; ++k) {
    Rational c = 1 / factorial(k + 1);
    if (side == Side::Left && k % 2 == 1) c = -c;
    out = add(out, scale(power, c));
    power = multiply(power, ad);
  }
  return out;
}

bool invariant_field_oracle(const MetricLieAlgebra& g, Side side, int order) {
  auto m = invariant_field_matrix(g, side, order);
  auto s = exponential_differential(g, side, order);
  return multiply(m, s, order) == identity_matrix(g.dim());
}

Poly duflo_log(const MetricLieAlgebra& g, int order) {
  const int n = g.dim();
  auto b = bernoulli(std::max(order, 1));
  auto ad = ad_tensor(g);
  Poly out(n);
  auto power = identity_matrix(n);
  for (int m = 1; m <= order; ++m) {
    power = multiply(power, ad);
    if (m % 2 == 1) continue;
    out += trace(power) * (b[m] / (Rational(2 * m) * factorial(m)));
  }
  return out;
}

Poly duflo_character(const MetricLieAlgebra& g, int order, int sign) {
  return exp_series(duflo_log(g, order) * Rational(sign), order);
}

Poly jacobian_oracle(const MetricLieAlgebra& g, int order) {
  const int n = g.dim();
  auto j = exponential_differential(g, Side::Left, order);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly det(n);
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Poly term = Poly::constant(n, inversions % 2 ? -1 : 1);
    for (int r = 0; r < n && !term.is_zero(); ++r) term = duflo::multiply(term, j[r][perm[r]], order);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

bool character_oracle(const MetricLieAlgebra& g, int order) {
  Poly half = duflo_character(g, order);
  return duflo::multiply(half, half, order) == jacobian_oracle(g, order);
}

namespace {

Form times_poly(const FormAlgebra& f, const Poly& p, const Form& a, int max_ydeg = -1) {
  if (p.is_zero() || a.empty()) return {};
  return f.multiply(f.from_poly(p), a, max_ydeg);
}

// Q[i][k] = Σ_j M^i_j P^{jk}
std::vector<std::vector<Poly>> raise_index(const MetricLieAlgebra& g, const PolyMatrix& m) {
  const int n = g.dim();
  std::vector<std::vector<Poly>> q(n, std::vector<Poly>(n, Poly(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (m[i][j].is_zero()) continue;
      for (int k = 0; k < n; ++k)
        if (g.metric_inverse(j, k) != 0) q[i][k] += m[i][j] * g.metric_inverse(j, k);
    }
  return q;
}

}  // namespace

FormOperator contraction_operator(const FormAlgebra& f, const PolyMatrix& m) {
  auto q = raise_index(f.algebra(), m);
  return [&f, q](const Form& a) {
    Form out;
    const int n = f.n();
    for (int i = 0; i < n; ++i) {
      Form di = f.d_y(i, a);
      if (di.empty()) continue;
      for (int k = 0; k < n; ++k) {
        if (q[i][k].is_zero()) continue;
        axpy(out, -1, times_poly(f, q[i][k], f.d_xi(k, di)));
      }
    }
    return out;
  };
}

FormOperator brylinski_operator(const FormAlgebra& f) { return contraction_operator(f, identity_matrix(f.n())); }

FormOperator d0_operator(const FormAlgebra& f, int order, int drop_from) {
  return contraction_operator(f, even_bernoulli_matrix(f.algebra(), order, drop_from));
}

FormOperator homotopy_h_operator(const FormAlgebra& f, int n) {
  auto power = matrix_power(ad_tensor(f.algebra()), 2 * n - 1);
  auto q = raise_index(f.algebra(), power);
  return [&f, q](const Form& a) {
    Form out;
    const int dim = f.n();
    for (int i = 0; i < dim; ++i) {
      Form di = f.d_xi(i, a);
      if (di.empty()) continue;
      for (int k = 0; k < dim; ++k) {
        if (q[i][k].is_zero()) continue;
        axpy(out, 1, times_poly(f, q[i][k], f.d_xi(k, di)));
      }
    }
    return out;
  };
}

FormOperator homotopy_k_operator(const FormAlgebra& f, int order) {
  const int n = f.n();
  auto b = bernoulli(std::max(order, 1));
  auto ad = ad_tensor(f.algebra());
  // K = ½ Σ B_{2m}/(2m)! H_{2m−1}: one contraction with the combined odd-power matrix
  auto combined = zero_matrix(n);
  auto power = ad;
  for (int m = 2; m <= order; m += 2) {
    combined = add(combined, scale(power, b[m] / (2 * factorial(m))));
    power = multiply(power, multiply(ad, ad));
  }
  auto q = raise_index(f.algebra(), combined);
  return [&f, q](const Form& a) {
    Form out;
    const int dim = f.n();
    for (int i = 0; i < dim; ++i) {
      Form di = f.d_xi(i, a);
      if (di.empty()) continue;
      for (int k = 0; k < dim; ++k) {
        if (q[i][k].is_zero()) continue;
        axpy(out, 1, times_poly(f, q[i][k], f.d_xi(k, di)));
      }
    }
    return out;
  };
}

FormOperator multiplication_operator(const FormAlgebra& f, const Poly& p, int max_ydeg) {
  return [&f, p, max_ydeg](const Form& a) { return times_poly(f, p, a, max_ydeg); };
}

FormOperator ce_operator(const FormAlgebra& f) {
  return [&f](const Form& a) { return f.d_ce(a); };
}

FormOperator compose(FormOperator outer, FormOperator inner) {
  return [outer = std::move(outer), inner = std::move(inner)](const Form& a) { return outer(inner(a)); };
}

FormOperator combine(FormOperator x, const Rational& ca, FormOperator y, const Rational& cb) {
  return [x = std::move(x), y = std::move(y), ca, cb](const Form& a) {
    Form out = scaled(x(a), ca);
    axpy(out, cb, y(a));
    return out;
  };
}

FormOperator commutator(FormOperator x, FormOperator y, int sign) {
  return [x = std::move(x), y = std::move(y), sign](const Form& a) {
    Form out = x(y(a));
    axpy(out, -sign, y(x(a)));
    return out;
  };
}

IdentityCheck compare_operators(const std::string& name, const FormAlgebra& f, const FormOperator& lhs,
                                const FormOperator& rhs, int source_ydeg, int window) {
  IdentityCheck out;
  out.name = name;
  out.window = window;
  for (int k = 0; k <= f.n(); ++k)
    for (const auto& key : f.basis(k, source_ydeg)) {
      Form a = f.monomial(key.mask, key.y);
      Form diff = truncated(lhs(a), window);
      axpy(diff, -1, truncated(rhs(a), window));
      ++out.checked;
      if (!diff.empty()) {
        out.passed = false;
        out.witness_degree = k;
        out.witness = key;
        out.message = name + " fails on a basis form of ξ-degree " + std::to_string(k);
        return out;
      }
    }
  return out;
}

IdentityCheck verify_homotopy_commutator(const MetricLieAlgebra& g, int n, int order) {
  if (2 * n > order) throw UsageError("homotopy identity for n needs order ≥ 2n");
  FormAlgebra f(g, order);
  auto d = ce_operator(f);
  auto h = homotopy_h_operator(f, n);
  auto power = matrix_power(ad_tensor(g), 2 * n);
  auto lhs = commutator(d, h);
  auto rhs = combine(contraction_operator(f, power), 2,
                     commutator(brylinski_operator(f), multiplication_operator(f, trace(power))),
                     Rational(-1, 2 * n));
  return compare_operators("homotopy_commutator_n" + std::to_string(n), f, lhs, rhs, order - 2 * n, order);
}

IdentityCheck verify_d0_half_sum(const MetricLieAlgebra& g, int order) {
  FormAlgebra f(g, order);
  auto left = contraction_operator(f, invariant_field_matrix(g, Side::Left, order));
  auto right = contraction_operator(f, invariant_field_matrix(g, Side::Right, order));
  auto half_sum = combine(left, Rational(1, 2), right, Rational(1, 2));
  return compare_operators("d0_half_sum", f, half_sum, d0_operator(f, order), order, order + order);
}

std::vector<SparseMatrix> operator_matrices(const FormAlgebra& f, const FormOperator& op, int shift, int max_ydeg) {
  std::vector<SparseMatrix> out;
  for (int k = 0; k <= f.n(); ++k) {
    const int target = k + shift;
    if (target < 0 || target > f.n()) {
      out.emplace_back(0, static_cast<int>(f.basis(k, max_ydeg).size()));
      continue;
    }
    out.push_back(f.matrix(op, k, target, max_ydeg, max_ydeg));
  }
  return out;
}

bool CharReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !solver_run || solver_feasible;
}

CharReport verify_char(const MetricLieAlgebra& g, int order, bool run_solver) {
  if (order < 2) throw UsageError("char-check needs order N ≥ 2");
  CharReport report;
  report.order = order;
  report.window = order - 1;
  FormAlgebra f(g, order);
  const int window = order - 1;
  // series are truncated at N; the identities are exact on outputs of y-degree ≤ N − 1,
  // and d_Br lowers y-degree by one, so the inner product only needs degree ≤ window + 1
  const int inner = window + 1;
  Poly half = duflo_character(g, order);
  Poly inv_half = duflo_character(g, order, -1);
  Poly log_half = duflo_log(g, order);

  {
    IdentityCheck c;
    c.name = "character_inverse";
    c.window = order;
    // monomials of degree ≤ N compared
    mpz_class count;
    mpz_bin_uiui(count.get_mpz_t(), g.dim() + order, order);
    c.checked = static_cast<int>(count.get_si());
    c.passed = duflo::multiply(half, inv_half, order) == Poly::constant(g.dim(), 1);
    if (!c.passed) c.message = "j^{1/2}·j^{−1/2} ≠ 1 through degree N";
    report.checks.push_back(c);
  }

  auto d = ce_operator(f);
  auto dbr = brylinski_operator(f);
  auto d0 = d0_operator(f, order);
  auto conj = compose(multiplication_operator(f, inv_half, window),
                      compose(dbr, multiplication_operator(f, half, inner)));
  auto phi = combine(d0, 1, conj, -1);
  auto k = homotopy_k_operator(f, order);
  report.checks.push_back(compare_operators("phi_equals_dK_minus_Kd", f, phi, commutator(d, k), order, window));

  auto log_mult = multiplication_operator(f, log_half);
  auto conjugation_rhs = combine(dbr, 1, commutator(dbr, log_mult), 1);
  report.checks.push_back(compare_operators("conjugation_identity", f, conj, conjugation_rhs, order, window));

  report.checks.push_back(compare_operators("d0_anticommutes_with_dce", f, commutator(d, d0, -1),
                                            [](const Form&) { return Form{}; }, order, 2 * order));
  report.checks.push_back(verify_d0_half_sum(g, order));
  for (int n = 1; 2 * n <= order && n <= 2; ++n) report.checks.push_back(verify_homotopy_commutator(g, n, order));

  if (run_solver) {
    report.solver_run = true;
    FormAlgebra fw(g, window);
    auto phi_w = combine(d0_operator(fw, order), 1,
                         compose(multiplication_operator(fw, inv_half, window),
                                 compose(brylinski_operator(fw), multiplication_operator(fw, half, inner))),
                         -1);
    auto complex = fw.ce_complex(window);
    auto result = find_chain_homotopy(complex, operator_matrices(fw, phi_w, -1, window));
    report.solver_feasible = result.feasible;
    report.solver_message = result.feasible ? "null-homotopy found" : result.message;
  }
  return report;
}

}  // namespace duflo
