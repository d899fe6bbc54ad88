#include "duflo/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace duflo {

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i, const Rational& c) {
  Exponents e(nvars, 0);
  e.at(i) = 1;
  Poly p(nvars);
  p.add_term(e, c);
  return p;
}

Poly Poly::monomial(const Exponents& e, const Rational& c) {
  Poly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

int Poly::min_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = total_degree(e);
    if (d < 0 || t < d) d = t;
  }
  return d;
}

Rational Poly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_term() const { return coeff(Exponents(nvars_, 0)); }

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("Poly: exponent arity mismatch");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly Poly::homogeneous_part(int d) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d) out.terms_.emplace(e, c);
  return out;
}

Poly Poly::truncated(int max_degree) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) <= max_degree) out.terms_.emplace(e, c);
  return out;
}

Poly Poly::derivative(int var) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    out.add_term(f, c * e[var]);
  }
  return out;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      os << "*" << (i < static_cast<int>(names.size()) ? names[i] : "v" + std::to_string(i));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(Poly a, const Rational& c) { return a *= c; }

Poly multiply(const Poly& a, const Poly& b, int max_degree) {
  int n = std::max(a.nvars(), b.nvars());
  Poly out(n);
  for (const auto& [ea, ca] : a.terms()) {
    int da = total_degree(ea);
    for (const auto& [eb, cb] : b.terms()) {
      if (max_degree >= 0 && da + total_degree(eb) > max_degree) continue;
      Exponents e(n);
      for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b, -1); }

Poly power(const Poly& a, int k, int max_degree) {
  Poly out = Poly::constant(a.nvars(), 1);
  for (int i = 0; i < k; ++i) out = multiply(out, a, max_degree);
  return out;
}

Poly exp_series(const Poly& p, int max_degree) {
  if (p.constant_term() != 0) throw std::invalid_argument("exp_series: argument has a constant term");
  Poly out = Poly::constant(p.nvars(), 1);
  Poly term = out;
  for (int k = 1; k <= max_degree; ++k) {
    term = multiply(term, p, max_degree);
    term *= Rational(1, k);
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

Poly apply_as_differential_operator(const Poly& op, const Poly& target) {
  int n = target.nvars();
  Poly out(n);
  for (const auto& [a, ca] : op.terms()) {
    for (const auto& [b, cb] : target.terms()) {
      Rational c = ca * cb;
      Exponents e(n);
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        if (a[i] > b[i]) {
          ok = false;
          break;
        }
        e[i] = b[i] - a[i];
        for (int t = 0; t < a[i]; ++t) c *= (b[i] - t);
      }
      if (ok) out.add_term(e, c);
    }
  }
  return out;
}

Poly apply_derivation(const Poly& p, const std::vector<Poly>& images) {
  int n = p.nvars();
  Poly out(n);
  for (int i = 0; i < n; ++i) {
    if (images[i].is_zero()) continue;
    Poly d = p.derivative(i);
    if (d.is_zero()) continue;
    out += d * images[i];
  }
  return out;
}

}  // namespace duflo
