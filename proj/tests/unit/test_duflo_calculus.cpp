#include <doctest.h>

#include "duflo/duflo_calculus.hpp"
#include "duflo/errors.hpp"

using namespace duflo;

namespace {

// Bernoulli oracle by power-series division: z/(e^z − 1) = Σ B_k z^k / k!.
std::vector<Rational> bernoulli_by_division(int k) {
  // (e^z − 1)/z = Σ z^m/(m+1)!; invert the series
  std::vector<Rational> denom(k + 1), inv(k + 1);
  for (int m = 0; m <= k; ++m) denom[m] = 1 / factorial(m + 1);
  inv[0] = 1;
  for (int m = 1; m <= k; ++m) {
    Rational s = 0;
    for (int j = 1; j <= m; ++j) s += denom[j] * inv[m - j];
    inv[m] = -s;
  }
  std::vector<Rational> b(k + 1);
  for (int m = 0; m <= k; ++m) b[m] = inv[m] * factorial(m);
  return b;
}

Poly y_poly(int n, std::initializer_list<std::pair<Exponents, long>> terms) {
  Poly p(n);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

}  // namespace

TEST_CASE("Bernoulli numbers agree with series division") {
  auto b = bernoulli(20);
  auto oracle = bernoulli_by_division(20);
  CHECK(b == oracle);
  CHECK(b[0] == 1);
  CHECK(b[1] == Rational(-1, 2));
  CHECK(b[2] == Rational(1, 6));
  CHECK(b[4] == Rational(-1, 30));
  for (int m = 3; m <= 20; m += 2) CHECK(b[m] == 0);
}

TEST_CASE("Ad tensor reproduces ad and the Killing form") {
  auto g = sl2();
  auto ad = ad_tensor(g);
  for (int i = 0; i < 3; ++i) {
    std::vector<Rational> e(3);
    e[i] = 1;
    auto m = evaluate(ad, e);
    auto ref = duflo::ad(g, e).matrix;
    CHECK(m == ref);
  }
  Poly tr = trace(multiply(ad, ad));
  CHECK(tr == dual_casimir(g));
  CHECK(tr.coeff({2, 0, 0}) == 8);
  CHECK(trace(ad).is_zero());
  for (int n = 1; n <= 3; ++n) CHECK(ad_tensor(abelian(n)) == zero_matrix(n));
}

TEST_CASE("invariant-field matrices and their oracle") {
  auto g = sl2();
  auto ad = ad_tensor(g);
  auto expected = add(add(add(identity_matrix(3), scale(ad, Rational(1, 2))),
                          scale(matrix_power(ad, 2), Rational(1, 12))),
                      scale(matrix_power(ad, 4), Rational(-1, 720)));
  CHECK(invariant_field_matrix(g, Side::Left, 4) == expected);
  CHECK(invariant_field_matrix(abelian(2), Side::Left, 6) == identity_matrix(2));
  for (const char* name : {"sl2", "so3", "oscillator"})
    for (int n : {2, 4, 6}) {
      CAPTURE(name);
      CHECK(invariant_field_oracle(builtin(name), Side::Left, n));
      CHECK(invariant_field_oracle(builtin(name), Side::Right, n));
    }
  // the oracle detects a wrong Bernoulli coefficient
  auto broken = add(invariant_field_matrix(g, Side::Left, 4), scale(matrix_power(ad, 2), Rational(1, 100)));
  CHECK_FALSE(multiply(broken, exponential_differential(g, Side::Left, 4), 4) == identity_matrix(3));
}

TEST_CASE("Duflo character: degree-2 term and Jacobian oracle") {
  auto g = sl2();
  Poly j = duflo_character(g, 6);
  Poly tr2 = trace(matrix_power(ad_tensor(g), 2));
  CHECK(j.homogeneous_part(2) == tr2 * Rational(1, 48));
  CHECK(j.constant_term() == 1);
  CHECK(duflo_character(abelian(3), 6) == Poly::constant(3, 1));
  for (const char* name : {"sl2", "so3", "oscillator", "abelian:2"}) {
    CAPTURE(name);
    CHECK(character_oracle(builtin(name), 6));
  }
  // inverse series
  for (const char* name : {"sl2", "oscillator"}) {
    auto h = builtin(name);
    CHECK(multiply(duflo_character(h, 6), duflo_character(h, 6, -1), 6) == Poly::constant(h.dim(), 1));
  }
}

TEST_CASE("Brylinski differential on abelian(2) by hand") {
  auto g = abelian(2);
  FormAlgebra f(g, 3);
  auto dbr = brylinski_operator(f);
  // d_Br = −Σ P^{ik} ∂_{ξ^k}∂_{y^i}; with P = id: d_Br(ξ^0 y^0) = −1, d_Br(ξ^0 y^1) = 0
  CHECK(dbr(f.monomial(0b01, {1, 0})) == f.monomial(0, {0, 0}, -1));
  CHECK(dbr(f.monomial(0b01, {0, 1})).empty());
  // ξ^0ξ^1 y^1: ∂_{y^1} → ξ^0ξ^1, ∂_{ξ^1} → −ξ^0
  CHECK(dbr(f.monomial(0b11, {0, 1})) == f.monomial(0b01, {0, 0}, 1));
  // d_Br² = 0
  for (int k = 0; k <= 2; ++k)
    for (const auto& key : f.basis(k)) CHECK(dbr(dbr(f.monomial(key.mask, key.y))).empty());
}

TEST_CASE("contraction is linear in M") {
  auto g = oscillator();
  FormAlgebra f(g, 3);
  auto ad = ad_tensor(g);
  auto m1 = matrix_power(ad, 2), m2 = add(identity_matrix(4), ad);
  auto lhs = contraction_operator(f, add(m1, scale(m2, 3)));
  auto rhs = combine(contraction_operator(f, m1), 1, contraction_operator(f, m2), 3);
  CHECK(compare_operators("linearity", f, lhs, rhs, 3, 10).passed);
}

TEST_CASE("d₀: abelian reduces to d_Br, sl2 Bernoulli decomposition, half-sum") {
  FormAlgebra fa(abelian(2), 4);
  CHECK(compare_operators("abelian", fa, d0_operator(fa, 4), brylinski_operator(fa), 4, 8).passed);

  auto g = sl2();
  FormAlgebra f(g, 4);
  auto ad = ad_tensor(g);
  auto expected = combine(combine(brylinski_operator(f), 1, contraction_operator(f, matrix_power(ad, 2)),
                                  Rational(1, 12)),
                          1, contraction_operator(f, matrix_power(ad, 4)), Rational(-1, 720));
  CHECK(compare_operators("bernoulli", f, d0_operator(f, 4), expected, 4, 8).passed);
  for (const char* name : {"sl2", "so3", "oscillator"}) CHECK(verify_d0_half_sum(builtin(name), 4).passed);
}

TEST_CASE("homotopy commutator identity for n = 1, 2") {
  for (const char* name : {"sl2", "so3", "oscillator"}) {
    for (int n = 1; n <= 2; ++n) {
      auto r = verify_homotopy_commutator(builtin(name), n, 4);
      CAPTURE(name);
      CAPTURE(n);
      CHECK(r.passed);
      CHECK(r.checked > 0);
    }
  }
  FormAlgebra f(abelian(2), 3);
  CHECK(compare_operators("H1", f, homotopy_h_operator(f, 1), [](const Form&) { return Form{}; }, 3, 6).passed);
}

TEST_CASE("homotopy identity fails when the trace term is dropped") {
  auto g = sl2();
  FormAlgebra f(g, 4);
  auto power = matrix_power(ad_tensor(g), 2);
  auto lhs = commutator(ce_operator(f), homotopy_h_operator(f, 1));
  auto rhs = scale(power, 2);
  CHECK_FALSE(compare_operators("no trace", f, lhs, contraction_operator(f, rhs), 2, 4).passed);
}

TEST_CASE("verify_char on sl2 and abelian") {
  auto r = verify_char(sl2(), 4);
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
  CHECK(r.solver_run);
  CHECK(r.solver_feasible);
  CHECK(r.passed());
  CHECK(verify_char(abelian(2), 4).passed());
  CHECK_THROWS_AS(verify_char(sl2(), 1), UsageError);
}

TEST_CASE("character as differential operator on the Casimir") {
  // j^{1/2}(∂) t for sl2: degree-2 part (1/48) Tr Ad² acting on t gives (1/48)·2·Σ g_ij g^ij = 1/8
  auto g = sl2();
  Poly j = duflo_character(g, 2);
  CHECK(apply_as_differential_operator(j, casimir(g)).constant_term() == Rational(1, 8));
  (void)y_poly;
}
