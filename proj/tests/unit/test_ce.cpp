#include <doctest.h>

#include "duflo/ce.hpp"
#include "duflo/errors.hpp"
#include "duflo/forms.hpp"

#include <random>

using namespace duflo;

namespace {

int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Oracle for d on the exterior algebra: expand the derivation generator by
// generator, ξ^{i1}⋯ξ^{ik} ↦ Σ_t (−1)^t ξ^{i1}⋯dξ^{it}⋯ξ^{ik}, multiplying
// left to right with FormAlgebra::multiply.
Form ce_oracle(const FormAlgebra& f, std::uint32_t mask) {
  std::vector<int> letters;
  for (int i = 0; i < f.n(); ++i)
    if (mask & (1u << i)) letters.push_back(i);
  Form total;
  for (size_t t = 0; t < letters.size(); ++t) {
    Form prod = f.one();
    for (size_t s = 0; s < letters.size(); ++s) {
      Form factor = f.xi(letters[s]);
      if (s == t) factor = f.d_ce(factor);
      prod = f.multiply(prod, factor);
    }
    axpy(total, (t % 2) ? -1 : 1, prod);
  }
  return total;
}

}  // namespace

TEST_CASE("module specs parse and print") {
  CHECK(ModuleSpec::parse("trivial").kind == ModuleSpec::Kind::Trivial);
  auto j = ModuleSpec::parse("jets:6");
  CHECK(j.kind == ModuleSpec::Kind::Jets);
  CHECK(j.order == 6);
  CHECK(ModuleSpec::parse("uea:4").to_string() == "uea:4");
  CHECK_THROWS_AS(ModuleSpec::parse("jets"), UsageError);
  CHECK_THROWS_AS(ModuleSpec::parse("jets:x"), UsageError);
  CHECK_THROWS_AS(ModuleSpec::parse("spin:2"), UsageError);
}

TEST_CASE("sl2 CE differential on generators") {
  auto g = sl2();
  // dξ^h = −c[e][f][h] ξ^eξ^f = −ξ^eξ^f
  auto dh = ce_differential(g, 0b001);
  REQUIRE(dh.size() == 1);
  CHECK(dh.at(0b110) == -1);
  // dξ^e = −c[h][e][e] ξ^hξ^e = −2 ξ^hξ^e
  CHECK(ce_differential(g, 0b010).at(0b011) == -2);
  CHECK(ce_differential(g, 0b100).at(0b101) == 2);
}

TEST_CASE("CE differential matches the derivation expansion on every basis element") {
  for (const char* name : {"sl2", "so3", "oscillator"}) {
    auto g = builtin(name);
    FormAlgebra f(g, 0);
    for (std::uint32_t mask = 0; mask < (1u << g.dim()); ++mask) {
      Form expected = ce_oracle(f, mask);
      Form got;
      for (const auto& [m, c] : ce_differential(g, mask)) add_term(got, {m, Exponents(g.dim(), 0)}, c);
      CAPTURE(name);
      CAPTURE(mask);
      CHECK(got == expected);
      CHECK(f.d_ce(f.monomial(mask, Exponents(g.dim(), 0))) == expected);
    }
  }
}

TEST_CASE("d² = 0 for trivial, jets and uea coefficients") {
  for (const char* name : {"abelian:1", "abelian:2", "abelian:3", "sl2", "so3", "oscillator"}) {
    auto g = builtin(name);
    for (const char* m : {"trivial", "jets:3", "uea:2"}) {
      CAPTURE(name);
      CAPTURE(m);
      auto c = build_ce_module(g, ModuleSpec::parse(m));
      CHECK_FALSE(c.complex.d_squared_failure().has_value());
    }
  }
}

TEST_CASE("a non-representation is caught by the d² sentinel") {
  auto g = sl2();
  std::vector<SparseMatrix> rho(3, SparseMatrix::identity(2));
  auto c = build_ce_with_action(g, rho, ModuleSpec{}, false);
  CHECK(c.complex.d_squared_failure().has_value());
  CHECK_THROWS_AS(build_ce_with_action(g, rho, ModuleSpec{}, true), InvariantError);
}

TEST_CASE("trivial-coefficient cohomology") {
  for (int n = 1; n <= 4; ++n) {
    auto dims = ce_cohomology(build_ce(abelian(n))).dims;
    for (int k = 0; k <= n; ++k) CHECK(dims[k] == binomial(n, k));
  }
  for (const char* name : {"sl2", "so3", "sl2:3"}) {
    auto dims = ce_cohomology(build_ce(builtin(name))).dims;
    CHECK(dims == std::map<int, int>{{0, 1}, {1, 0}, {2, 0}, {3, 1}});
  }
  auto osc = ce_cohomology(build_ce(oscillator()), true);
  int chi = 0;
  for (const auto& [k, d] : osc.dims) chi += (k % 2 ? -1 : 1) * d;
  CHECK(chi == 0);
  CHECK(osc.dims[0] == 1);
}

TEST_CASE("H⁰ with jets and uea coefficients is the invariants") {
  auto g = sl2();
  CHECK(ce_cohomology(build_ce_module(g, ModuleSpec::parse("jets:2"))).dims[0] == 2);
  CHECK(ce_cohomology(build_ce_module(g, ModuleSpec::parse("uea:2"))).dims[0] == 2);
  CHECK(ce_cohomology(build_ce_module(g, ModuleSpec::parse("jets:4"))).dims[0] == 3);
  // abelian: zero differential, cohomology is everything
  auto a = build_ce_module(abelian(2), ModuleSpec::parse("jets:2"));
  auto dims = ce_cohomology(a).dims;
  for (int k = 0; k <= 2; ++k) CHECK(dims[k] == a.complex.dim(k));
  // H⁰ non-decreasing in N
  int prev = 0;
  for (int n = 0; n <= 5; ++n) {
    int h0 = ce_cohomology(build_ce_module(so3(), ModuleSpec{ModuleSpec::Kind::Jets, n})).dims[0];
    CHECK(h0 >= prev);
    prev = h0;
  }
}

TEST_CASE("forms: d_dR² = 0, d_CE² = 0 and they anticommute") {
  for (const char* name : {"sl2", "oscillator"}) {
    auto g = builtin(name);
    FormAlgebra f(g, 3);
    for (int k = 0; k <= g.dim(); ++k)
      for (const auto& key : f.basis(k, 2)) {
        Form a = f.monomial(key.mask, key.y);
        CHECK(f.d_dr(f.d_dr(a)).empty());
        CHECK(f.d_ce(f.d_ce(a)).empty());
        Form anti = f.d_dr(f.d_ce(a));
        axpy(anti, 1, f.d_ce(f.d_dr(a)));
        CHECK(anti.empty());
      }
  }
}

TEST_CASE("forms: d_dR on low-degree elements") {
  FormAlgebra f(abelian(3), 2);
  CHECK(f.d_dr(f.one()).empty());
  // d_dR(ξ^1ξ^2) = y^1 ξ^2 − ξ^1 y^2
  Form expected = f.multiply(f.y(1), f.xi(2));
  axpy(expected, -1, f.multiply(f.xi(1), f.y(2)));
  CHECK(f.d_dr(f.multiply(f.xi(1), f.xi(2))) == expected);
}

TEST_CASE("property: derivation rules on random basis pairs") {
  std::mt19937 rng(17);
  auto g = oscillator();
  FormAlgebra f(g, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> deg(0, g.dim());
    int ka = deg(rng), kb = deg(rng);
    const auto& ba = f.basis(ka, 2);
    const auto& bb = f.basis(kb, 2);
    if (ba.empty() || bb.empty()) continue;
    auto a = ba[std::uniform_int_distribution<size_t>(0, ba.size() - 1)(rng)];
    auto b = bb[std::uniform_int_distribution<size_t>(0, bb.size() - 1)(rng)];
    Form fa = f.monomial(a.mask, a.y), fb = f.monomial(b.mask, b.y);
    int sign = (ka % 2) ? -1 : 1;
    for (auto op : {&FormAlgebra::d_ce, &FormAlgebra::d_dr}) {
      Form lhs = (f.*op)(f.multiply(fa, fb));
      Form rhs = f.multiply((f.*op)(fa), fb);
      axpy(rhs, sign, f.multiply(fa, (f.*op)(fb)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("d_dR is a chain map Ch(g) → jets-forms of shift −1") {
  auto g = sl2();
  FormAlgebra f(g, 1);
  auto ce = f.ce_complex(0);
  auto forms = f.ce_complex(1);
  std::vector<SparseMatrix> maps;
  for (int k = 0; k <= g.dim(); ++k) {
    if (k == 0) {
      maps.emplace_back(0, ce.dim(0));
      continue;
    }
    maps.push_back(f.matrix([&f](const Form& a) { return f.d_dr(a); }, k, k - 1, 0, 1));
  }
  FiniteChainComplex shifted(-1, {0, forms.dim(0), forms.dim(1), forms.dim(2), forms.dim(3)});
  for (int k = 0; k < 3; ++k) shifted.set_d(k, forms.d(k));
  // maps[k] goes from degree k to k − 1
  CHECK(is_chain_map(maps, ce, shifted, -1).ok);
}
