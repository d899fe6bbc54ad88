#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace duflo {

using Rational = mpq_class;

/// Exponent vector of a commuting monomial (jets, symmetric algebra, PBW words).
using Exponents = std::vector<int>;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(const std::string& num, const std::string& den = "1") {
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

/// Exact (numerator, denominator) decimal strings, used by every machine-readable report.
inline std::pair<std::string, std::string> to_pair(const Rational& r) {
  return {r.get_num().get_str(), r.get_den().get_str()};
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline int total_degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

inline int popcount(std::uint32_t m) { return __builtin_popcount(m); }

/// All exponent vectors in `n` variables with total degree exactly `d`, in
/// lexicographically decreasing order of the first variable.
std::vector<Exponents> monomials_of_degree(int n, int d);

/// All exponent vectors with total degree <= `max_degree`, grouped by degree.
std::vector<Exponents> monomials_up_to(int n, int max_degree);

Rational factorial(int k);

}  // namespace duflo
