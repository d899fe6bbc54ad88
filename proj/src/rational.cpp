#include "duflo/rational.hpp"

namespace duflo {

namespace {
void fill(int var, int n, int left, Exponents& cur, std::vector<Exponents>& out) {
  if (var == n - 1) {
    cur[var] = left;
    out.push_back(cur);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur[var] = k;
    fill(var + 1, n, left - k, cur, out);
  }
  cur[var] = 0;
}
}  // namespace

std::vector<Exponents> monomials_of_degree(int n, int d) {
  std::vector<Exponents> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponents cur(n, 0);
  fill(0, n, d, cur, out);
  return out;
}

std::vector<Exponents> monomials_up_to(int n, int max_degree) {
  std::vector<Exponents> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto part = monomials_of_degree(n, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Rational factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

}  // namespace duflo
