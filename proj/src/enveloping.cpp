#include "duflo/enveloping.hpp"

#include "duflo/duflo_calculus.hpp"
#include "duflo/errors.hpp"

namespace duflo {

Enveloping::Enveloping(const MetricLieAlgebra& g) : g_(g) {}

PBWElement Enveloping::one() const { return Poly::constant(n(), 1); }

PBWElement Enveloping::generator(int i) const { return Poly::variable(n(), i); }

const PBWElement& Enveloping::times_generator(const Exponents& a, int j) const {
  auto key = std::make_pair(a, j);
  auto it = right_cache_.find(key);
  if (it != right_cache_.end()) return it->second;

  int m = -1;
  for (int i = n() - 1; i >= 0; --i)
    if (a[i] > 0) {
      m = i;
      break;
    }
  PBWElement result(n());
  if (m <= j) {
    Exponents e = a;
    e[j] += 1;
    result.add_term(e, 1);
  } else {
    // x^{a'} x_m x_j = (x^{a'} x_j) x_m + x^{a'} [x_m, x_j]
    Exponents ap = a;
    ap[m] -= 1;
    PBWElement first = times_generator(ap, j);
    for (const auto& [e, c] : first.terms()) result += times_generator(e, m) * c;
    for (int k = 0; k < n(); ++k) {
      const Rational& c = g_.c(m, j, k);
      if (c != 0) result += times_generator(ap, k) * c;
    }
  }
  return right_cache_.emplace(std::move(key), std::move(result)).first->second;
}

PBWElement Enveloping::product(const PBWElement& u, const PBWElement& v) const {
  PBWElement out(n());
  for (const auto& [b, cb] : v.terms()) {
    PBWElement cur = u;
    for (int j = 0; j < n(); ++j)
      for (int r = 0; r < b[j]; ++r) {
        PBWElement next(n());
        for (const auto& [e, c] : cur.terms()) next += times_generator(e, j) * c;
        cur = std::move(next);
      }
    out += cur * cb;
  }
  return out;
}

PBWElement Enveloping::commutator(const PBWElement& u, const PBWElement& v) const {
  return product(u, v) - product(v, u);
}

PBWElement Enveloping::ad(int i, const PBWElement& u) const { return commutator(generator(i), u); }

const PBWElement& Enveloping::symmetrized_monomial(const Exponents& e) const {
  auto it = sym_cache_.find(e);
  if (it != sym_cache_.end()) return it->second;
  const int d = total_degree(e);
  PBWElement result(n());
  if (d <= 1) {
    result.add_term(e, 1);
  } else {
    // sum over words = Σ_i x_i · (sum over words of e − e_i), hence
    // sym(e) = (1/d) Σ_i e_i x_i sym(e − e_i)
    for (int i = 0; i < n(); ++i) {
      if (e[i] == 0) continue;
      Exponents f = e;
      f[i] -= 1;
      result += product(generator(i), symmetrized_monomial(f)) * make_rational(e[i], d);
    }
  }
  return sym_cache_.emplace(e, std::move(result)).first->second;
}

PBWElement Enveloping::symmetrize(const SymElement& s) const {
  PBWElement out(n());
  for (const auto& [e, c] : s.terms()) out += symmetrized_monomial(e) * c;
  return out;
}

std::vector<SparseMatrix> Enveloping::adjoint_action_matrices(int max_degree) const {
  auto basis = monomials_up_to(n(), max_degree);
  std::map<Exponents, int> index;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) index[basis[i]] = i;
  std::vector<SparseMatrix> out;
  for (int i = 0; i < n(); ++i) {
    SparseMatrix m(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
    for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
      PBWElement image = ad(i, Poly::monomial(basis[j]));
      for (const auto& [e, c] : image.terms()) m.add(index.at(e), j, c);
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool Enveloping::is_central(const PBWElement& u) const {
  for (int i = 0; i < n(); ++i)
    if (!ad(i, u).is_zero()) return false;
  return true;
}

std::vector<SymElement> invariants_basis(const MetricLieAlgebra& g, int max_degree) {
  const int n = g.dim();
  std::vector<SymElement> out;
  for (int k = 0; k <= max_degree; ++k) {
    auto basis = monomials_of_degree(n, k);
    std::map<Exponents, int> index;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) index[basis[i]] = i;
    const int dk = static_cast<int>(basis.size());
    SparseMatrix m(n * dk, dk);
    for (int j = 0; j < dk; ++j)
      for (int i = 0; i < n; ++i) {
        Poly image = adjoint_action_on_sym(g, i, Poly::monomial(basis[j]));
        for (const auto& [e, c] : image.terms()) m.add(i * dk + index.at(e), j, c);
      }
    for (const auto& v : rank_kernel_image(m).kernel) {
      Rational lead = v.begin()->second;
      Poly p(n);
      for (const auto& [j, c] : v) p.add_term(basis[j], c / lead);
      out.push_back(std::move(p));
    }
  }
  return out;
}

bool is_invariant(const MetricLieAlgebra& g, const SymElement& s) {
  for (int i = 0; i < g.dim(); ++i)
    if (!adjoint_action_on_sym(g, i, s).is_zero()) return false;
  return true;
}

PBWElement duflo_map(const Enveloping& u, const SymElement& s, int character_order) {
  const auto& g = u.algebra();
  if (!is_invariant(g, s)) throw UsageError("duflo_map: input is not ad-invariant");
  if (character_order < s.degree()) throw UsageError("duflo_map: character order below the input degree");
  Poly character = duflo_character(g, character_order);
  return u.symmetrize(apply_as_differential_operator(character, s));
}

bool DufloIsoReport::multiplicative() const {
  for (const auto& p : pairs)
    if (!p.passed) return false;
  return central;
}

bool DufloIsoReport::control_detects() const {
  for (const auto& p : control_pairs)
    if (!p.passed) return true;
  return false;
}

DufloIsoReport verify_duflo_isomorphism(const MetricLieAlgebra& g, int max_degree, int character_order) {
  if (max_degree > character_order) throw UsageError("iso-check needs degree D ≤ character order N");
  DufloIsoReport report;
  Enveloping u(g);
  report.invariants = invariants_basis(g, max_degree);
  const int count = static_cast<int>(report.invariants.size());
  std::vector<PBWElement> images, sym;
  for (const auto& s : report.invariants) {
    images.push_back(duflo_map(u, s, character_order));
    sym.push_back(u.symmetrize(s));
    if (!u.is_central(images.back())) report.central = false;
  }
  for (int a = 0; a < count; ++a)
    for (int b = a; b < count; ++b) {
      const auto& sa = report.invariants[a];
      const auto& sb = report.invariants[b];
      if (sa.degree() + sb.degree() > max_degree) continue;
      Poly prod = sa * sb;
      PairCheck p{a, b, false, u.product(images[a], images[b]) - duflo_map(u, prod, character_order)};
      p.passed = p.difference.is_zero();
      report.pairs.push_back(std::move(p));
      PairCheck q{a, b, false, u.product(sym[a], sym[b]) - u.symmetrize(prod)};
      q.passed = q.difference.is_zero();
      report.control_pairs.push_back(std::move(q));
    }
  return report;
}

}  // namespace duflo
