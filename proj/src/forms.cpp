#include "duflo/forms.hpp"

#include <stdexcept>

namespace duflo {

void add_term(Form& f, const FormKey& k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = f.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) f.erase(it);
  }
}

void axpy(Form& y, const Rational& a, const Form& x) {
  if (a == 0) return;
  for (const auto& [k, v] : x) add_term(y, k, a * v);
}

Form scaled(const Form& f, const Rational& a) {
  Form out;
  if (a == 0) return out;
  for (const auto& [k, v] : f) out.emplace_hint(out.end(), k, v * a);
  return out;
}

Form truncated(const Form& f, int max_ydeg) {
  Form out;
  for (const auto& [k, v] : f)
    if (k.y_degree() <= max_ydeg) out.emplace_hint(out.end(), k, v);
  return out;
}

int wedge_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  while (b) {
    int j = __builtin_ctz(b);
    b &= b - 1;
    swaps += popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

FormAlgebra::FormAlgebra(const MetricLieAlgebra& g, int jet_order) : g_(g), order_(jet_order) {
  const int n = g.dim();
  if (n > 30) throw std::invalid_argument("forms: dimension too large for bitmask exterior algebra");
  if (jet_order < 0) throw std::invalid_argument("forms: negative jet order");
  dxi_.resize(n);
  dy_.resize(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (g.c(i, j, k) != 0) add_term(dxi_[k], {(1u << i) | (1u << j), Exponents(n, 0)}, -g.c(i, j, k));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (g.c(i, j, k) != 0) {
          Exponents e(n, 0);
          e[j] = 1;
          add_term(dy_[k], {1u << i, e}, -g.c(i, j, k));
        }
  }
}

Form FormAlgebra::one() const { return monomial(0, Exponents(n(), 0)); }

Form FormAlgebra::xi(int k) const { return monomial(1u << k, Exponents(n(), 0)); }

Form FormAlgebra::y(int k) const {
  Exponents e(n(), 0);
  e.at(k) = 1;
  return monomial(0, e);
}

Form FormAlgebra::monomial(std::uint32_t mask, const Exponents& e, const Rational& c) const {
  Form f;
  add_term(f, {mask, e}, c);
  return f;
}

Form FormAlgebra::from_poly(const Poly& p) const {
  Form f;
  for (const auto& [e, c] : p.terms()) add_term(f, {0, e}, c);
  return f;
}

Form FormAlgebra::multiply(const Form& a, const Form& b, int max_ydeg) const {
  Form out;
  const int nv = n();
  for (const auto& [ka, ca] : a) {
    const int da = ka.y_degree();
    for (const auto& [kb, cb] : b) {
      if (ka.mask & kb.mask) continue;
      if (max_ydeg >= 0 && da + kb.y_degree() > max_ydeg) continue;
      Exponents e(nv);
      for (int i = 0; i < nv; ++i) e[i] = ka.y[i] + kb.y[i];
      add_term(out, {ka.mask | kb.mask, std::move(e)}, wedge_sign(ka.mask, kb.mask) * ca * cb);
    }
  }
  return out;
}

Form FormAlgebra::d_xi(int k, const Form& a) const {
  Form out;
  const std::uint32_t bit = 1u << k;
  for (const auto& [key, c] : a) {
    if (!(key.mask & bit)) continue;
    int sign = (popcount(key.mask & (bit - 1)) & 1) ? -1 : 1;
    add_term(out, {key.mask & ~bit, key.y}, sign * c);
  }
  return out;
}

Form FormAlgebra::d_xi_right(int k, const Form& a) const {
  Form out;
  const std::uint32_t bit = 1u << k;
  for (const auto& [key, c] : a) {
    if (!(key.mask & bit)) continue;
    int sign = (popcount(key.mask >> (k + 1)) & 1) ? -1 : 1;
    add_term(out, {key.mask & ~bit, key.y}, sign * c);
  }
  return out;
}

Form FormAlgebra::d_y(int k, const Form& a) const {
  Form out;
  for (const auto& [key, c] : a) {
    if (key.y[k] == 0) continue;
    FormKey t = key;
    t.y[k] -= 1;
    add_term(out, t, c * key.y[k]);
  }
  return out;
}

Form FormAlgebra::d_ce(const Form& a) const {
  Form out;
  for (int k = 0; k < n(); ++k) {
    if (!dxi_[k].empty()) axpy(out, 1, multiply(dxi_[k], d_xi(k, a)));
    if (!dy_[k].empty()) axpy(out, 1, multiply(dy_[k], d_y(k, a)));
  }
  return out;
}

Form FormAlgebra::d_dr(const Form& a) const {
  Form out;
  for (int k = 0; k < n(); ++k) {
    Form part = d_xi(k, a);
    if (!part.empty()) axpy(out, 1, multiply(y(k), part));
  }
  return out;
}

const FormAlgebra::Basis& FormAlgebra::basis_for(int k, int max_ydeg) const {
  if (max_ydeg < 0) max_ydeg = order_;
  auto key = std::make_pair(k, max_ydeg);
  auto it = bases_.find(key);
  if (it != bases_.end()) return it->second;
  Basis b;
  const int nv = n();
  if (k >= 0 && k <= nv) {
    auto monos = monomials_up_to(nv, max_ydeg);
    for (std::uint32_t mask = 0; mask < (1u << nv); ++mask) {
      if (popcount(mask) != k) continue;
      for (const auto& e : monos) {
        b.index.emplace(FormKey{mask, e}, static_cast<int>(b.keys.size()));
        b.keys.push_back({mask, e});
      }
    }
  }
  return bases_.emplace(key, std::move(b)).first->second;
}

const std::vector<FormKey>& FormAlgebra::basis(int k, int max_ydeg) const { return basis_for(k, max_ydeg).keys; }

int FormAlgebra::index(const FormKey& key, int max_ydeg) const {
  const auto& b = basis_for(key.xi_degree(), max_ydeg);
  auto it = b.index.find(key);
  return it == b.index.end() ? -1 : it->second;
}

SparseVector FormAlgebra::to_vector(const Form& f, int max_ydeg) const {
  SparseVector v;
  int degree = -1;
  for (const auto& [key, c] : f) {
    if (degree < 0) degree = key.xi_degree();
    if (key.xi_degree() != degree) throw std::invalid_argument("to_vector: form is not homogeneous in ξ-degree");
    int i = index(key, max_ydeg);
    if (i < 0) throw std::invalid_argument("to_vector: term outside the truncated basis");
    v.emplace(i, c);
  }
  return v;
}

Form FormAlgebra::from_vector(const SparseVector& v, int k, int max_ydeg) const {
  const auto& keys = basis(k, max_ydeg);
  Form f;
  for (const auto& [i, c] : v) f.emplace(keys.at(i), c);
  return f;
}

SparseMatrix FormAlgebra::matrix(const std::function<Form(const Form&)>& op, int from, int to, int source_ydeg,
                                 int target_ydeg) const {
  if (source_ydeg < 0) source_ydeg = order_;
  if (target_ydeg < 0) target_ydeg = order_;
  const auto& src = basis_for(from, source_ydeg);
  const auto& dst = basis_for(to, target_ydeg);
  SparseMatrix m(static_cast<int>(dst.keys.size()), static_cast<int>(src.keys.size()));
  for (int j = 0; j < static_cast<int>(src.keys.size()); ++j) {
    Form image = op(monomial(src.keys[j].mask, src.keys[j].y));
    SparseVector col;
    for (const auto& [key, c] : image) {
      if (key.xi_degree() != to)
        throw std::logic_error("forms operator changed ξ-degree unexpectedly (" + std::to_string(from) + " → " +
                               std::to_string(key.xi_degree()) + ")");
      if (key.y_degree() > target_ydeg) continue;
      col.emplace(dst.index.at(key), c);
    }
    m.set_column(j, std::move(col));
  }
  return m;
}

FiniteChainComplex FormAlgebra::ce_complex(int max_ydeg) const {
  std::vector<int> dims;
  for (int k = 0; k <= n(); ++k) dims.push_back(static_cast<int>(basis(k, max_ydeg).size()));
  FiniteChainComplex c(0, dims);
  for (int k = 0; k < n(); ++k)
    c.set_d(k, matrix([this](const Form& f) { return d_ce(f); }, k, k + 1, max_ydeg, max_ydeg));
  return c;
}

}  // namespace duflo
