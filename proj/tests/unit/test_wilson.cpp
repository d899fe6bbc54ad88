#include <doctest.h>

#include "duflo/errors.hpp"
#include "duflo/wilson.hpp"

#include <cstdio>
#include <fstream>
#include <random>

using namespace duflo;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/duflo_test_" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("invariant function specs") {
  auto g = sl2();
  CHECK(parse_invariant_function(g, "one").poly() == Poly::constant(3, 1));
  CHECK(parse_invariant_function(g, "casimir^2").poly() == power(dual_casimir(g), 2));
  CHECK(parse_invariant_function(g, "casimir^0").degree() == 0);
  CHECK_THROWS_AS(parse_invariant_function(g, "casimir^x"), UsageError);
  CHECK_THROWS_AS(parse_invariant_function(g, "casimir^2x"), UsageError);
  CHECK_THROWS_AS(parse_invariant_function(g, "cubic"), UsageError);
  // y^h alone is not invariant
  CHECK_THROWS_AS(InvariantFunction(g, Poly::variable(3, 0)), UsageError);
  CHECK_THROWS_AS(InvariantFunction(g, Poly::constant(2, 1)), UsageError);

  // dual Casimir of sl2 = 8 y_h² + 8 y_e y_f
  auto path = write_temp("inv.json", R"({"terms": [[[2,0,0], 8, 1], [[0,1,1], "8", "1"]]})");
  CHECK(parse_invariant_function(g, "file:" + path).poly() == dual_casimir(g));
  auto bad = write_temp("bad.json", R"({"terms": [[[1,0,0], 1, 1]]})");
  CHECK_THROWS_AS(parse_invariant_function(g, "file:" + bad), UsageError);
  auto zero = write_temp("zero.json", R"({"terms": [[[0,0,0], 1, 0]]})");
  CHECK_THROWS_AS(parse_invariant_function(g, "file:" + zero), UsageError);
  auto junk = write_temp("junk.json", "{terms");
  CHECK_THROWS_AS(parse_invariant_function(g, "file:" + junk), UsageError);
  CHECK_THROWS_AS(parse_invariant_function(g, "file:/nonexistent/x.json"), UsageError);
}

TEST_CASE("budget rule N ≥ 2K + deg f") {
  auto g = sl2();
  auto t = parse_invariant_function(g, "casimir^1");
  CHECK_NOTHROW(check_wilson_budget(t, 2, 6));
  CHECK_THROWS_AS(check_wilson_budget(t, 2, 5), UsageError);
  CHECK_THROWS_AS(unknot_invariant(g, t, 3, 6), UsageError);
}

TEST_CASE("abelian, f = 1: chain composition is exp(ht) symmetrized") {
  auto g = abelian(2);
  auto one = parse_invariant_function(g, "one");
  auto stages = chain_composition(g, one, 3, 6);
  Poly t = casimir(g);
  CHECK(stages[0] == Poly::constant(2, 1));
  CHECK(stages[1] == t);
  CHECK(stages[2] == t * t * Rational(1, 2));
  auto z = unknot_invariant(g, one, 3, 6);
  CHECK(z == HSeries{1, 0, 0, 0});
  CHECK(unknot_oracle(g, one, 3, 6) == z);
}

TEST_CASE("abelian, f = Σ y_i²: order h is 2n") {
  for (int n = 1; n <= 3; ++n) {
    auto g = abelian(n);
    auto f = parse_invariant_function(g, "casimir^1");
    auto z = unknot_invariant(g, f, 3, 8);
    CHECK(z[0] == 0);
    CHECK(z[1] == 2 * n);
    CHECK(z[2] == 0);
    CHECK(unknot_oracle(g, f, 3, 8) == z);
  }
}

TEST_CASE("sl2, f = 1: order h is 1/8") {
  auto g = sl2();
  auto one = parse_invariant_function(g, "one");
  auto z = unknot_invariant(g, one, 3, 6);
  CHECK(z[0] == 1);
  CHECK(z[1] == Rational(1, 8));
  CHECK(unknot_oracle(g, one, 3, 6) == z);
  // the h¹ stage is sym(t) + 1/8
  auto stages = chain_composition(g, one, 1, 2);
  Enveloping u(g);
  CHECK(stages[1] == u.symmetrize(casimir(g)) + Poly::constant(3, Rational(1, 8)));
}

TEST_CASE("pipeline equals oracle; linearity in f") {
  for (const char* name : {"sl2", "so3", "oscillator", "abelian:3"}) {
    auto g = builtin(name);
    for (const char* spec : {"one", "casimir^1", "casimir^2"}) {
      auto f = parse_invariant_function(g, spec);
      int n = 2 * 3 + f.degree();
      CAPTURE(name);
      CAPTURE(spec);
      CHECK(unknot_invariant(g, f, 3, n) == unknot_oracle(g, f, 3, n));
    }
    auto a = parse_invariant_function(g, "one").poly(), b = parse_invariant_function(g, "casimir^1").poly();
    InvariantFunction sum(g, a * Rational(3) + b * Rational(-2));
    auto za = unknot_invariant(g, InvariantFunction(g, a), 2, 6);
    auto zb = unknot_invariant(g, InvariantFunction(g, b), 2, 6);
    auto zs = unknot_invariant(g, sum, 2, 6);
    for (int m = 0; m <= 2; ++m) CHECK(zs[m] == 3 * za[m] - 2 * zb[m]);
  }
}

TEST_CASE("property: abelian invariant is unchanged by a congruence of the metric") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    // metric A^T A with A unimodular upper-triangular
    std::vector<std::vector<Rational>> a(3, std::vector<Rational>(3));
    for (int i = 0; i < 3; ++i) {
      a[i][i] = 1;
      for (int j = i + 1; j < 3; ++j) a[i][j] = entry(rng);
    }
    std::vector<Rational> metric(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) metric[i * 3 + j] += a[k][i] * a[k][j];
    auto g = abelian(3, metric);
    auto f = parse_invariant_function(g, "casimir^1");
    auto z = unknot_invariant(g, f, 3, 8);
    CHECK(z == unknot_invariant(abelian(3), parse_invariant_function(abelian(3), "casimir^1"), 3, 8));
  }
}
