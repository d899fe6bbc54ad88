#pragma once

#include "duflo/rational.hpp"

#include <functional>
#include <map>
#include <string>

namespace duflo {

/// Polynomial in commuting variables with exact coefficients. Used for the
/// symmetric algebra S(g), for truncated jets on g, and for PBW-coefficient
/// bookkeeping. No zero coefficients are stored.
class Poly {
 public:
  using Terms = std::map<Exponents, Rational>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int i, const Rational& c = 1);
  static Poly monomial(const Exponents& e, const Rational& c = 1);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  int min_degree() const;
  Rational coeff(const Exponents& e) const;
  Rational constant_term() const;

  void add_term(const Exponents& e, const Rational& c);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);

  Poly homogeneous_part(int d) const;
  /// Drops every term of total degree > max_degree.
  Poly truncated(int max_degree) const;
  Poly derivative(int var) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int nvars_ = 0;
  Terms terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(Poly a, const Rational& c);
Poly operator*(const Poly& a, const Poly& b);
/// Product truncated at total degree `max_degree` (negative means no truncation).
Poly multiply(const Poly& a, const Poly& b, int max_degree);
Poly power(const Poly& a, int k, int max_degree = -1);
/// exp(p) for p without constant term, truncated at `max_degree`.
Poly exp_series(const Poly& p, int max_degree);

/// Constant-coefficient differential operator action: every monomial y^a of
/// `op` acts on x^b as ∂^a x^b = b!/(b-a)! x^{b-a}. This is the pairing
/// S(g^∨) ⊗ S(g) → S(g) with no 1/k! normalisation.
Poly apply_as_differential_operator(const Poly& op, const Poly& target);

/// Applies a derivation given on generators: var i ↦ images[i].
Poly apply_derivation(const Poly& p, const std::vector<Poly>& images);

}  // namespace duflo
