#include "duflo/hochschild.hpp"

#include "duflo/ce.hpp"
#include "duflo/duflo_calculus.hpp"
#include "duflo/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace duflo {

void add_term(ChainSum& s, const Chain& c, const Rational& v) {
  if (v == 0) return;
  auto [it, inserted] = s.try_emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) s.erase(it);
  }
}

void axpy(ChainSum& y, const Rational& a, const ChainSum& x) {
  if (a == 0) return;
  for (const auto& [c, v] : x) add_term(y, c, a * v);
}

int partial_degree(const Chain& c, int j) {
  int e = c.a0.xi_degree();
  for (int k = 0; k < j; ++k) e += popcount(c.letters[k]) - 1;
  return e;
}

int chain_degree(const Chain& c) { return partial_degree(c, c.length()); }

int chain_weight(const Chain& c) {
  int w = c.a0.xi_degree() + c.a0.y_degree();
  for (auto m : c.letters) w += popcount(m);
  return w;
}

namespace {

int sign_of(int e) { return (e % 2) ? -1 : 1; }

Form letter_form(std::uint32_t mask, int n) { return Form{{FormKey{mask, Exponents(n, 0)}, Rational(1)}}; }

Form key_form(const FormKey& k) { return Form{{k, Rational(1)}}; }

}  // namespace

ChainSum bar_differential(const ChainSum& x, const FormProduct& mu) {
  ChainSum out;
  for (const auto& [ch, u] : x) {
    const int len = ch.length();
    if (len == 0) continue;
    const int n = static_cast<int>(ch.a0.y.size());
    // (−1)^{|a₀|} μ(a₀, a₁)[a₂…]
    {
      std::vector<std::uint32_t> rest(ch.letters.begin() + 1, ch.letters.end());
      const int s = sign_of(ch.a0.xi_degree());
      for (const auto& [k, v] : mu(key_form(ch.a0), letter_form(ch.letters[0], n)))
        add_term(out, Chain{k, rest}, u * v * s);
    }
    for (int j = 1; j < len; ++j) {
      const int s = sign_of(partial_degree(ch, j));
      for (const auto& [k, v] : mu(letter_form(ch.letters[j - 1], n), letter_form(ch.letters[j], n))) {
        if (k.mask == 0) continue;
        Chain c{ch.a0, {}};
        c.letters.assign(ch.letters.begin(), ch.letters.begin() + (j - 1));
        c.letters.push_back(k.mask);
        c.letters.insert(c.letters.end(), ch.letters.begin() + (j + 1), ch.letters.end());
        add_term(out, c, u * v * s);
      }
    }
    // −(−1)^{(|a_i|−1)ε_{i−1}} μ(a_i, a₀)[a₁…a_{i−1}]
    {
      const std::uint32_t last = ch.letters.back();
      const int s = -sign_of((popcount(last) - 1) * partial_degree(ch, len - 1));
      std::vector<std::uint32_t> rest(ch.letters.begin(), ch.letters.end() - 1);
      for (const auto& [k, v] : mu(letter_form(last, n), key_form(ch.a0))) add_term(out, Chain{k, rest}, u * v * s);
    }
  }
  return out;
}

HochschildComplex::HochschildComplex(const MetricLieAlgebra& g, int max_weight, Coefficients coefficients)
    : forms_(g, coefficients == Coefficients::Algebra ? 0 : 1), max_weight_(max_weight), coefficients_(coefficients) {
  if (max_weight < 1) throw UsageError("Hochschild weight bound must be ≥ 1");
  const int n = g.dim();
  std::vector<FormKey> slot0;
  for (std::uint32_t a = 0; a < (1u << n); ++a) {
    if (coefficients == Coefficients::Algebra) {
      slot0.push_back({a, Exponents(n, 0)});
    } else {
      for (int k = 0; k < n; ++k) {
        Exponents e(n, 0);
        e[k] = 1;
        slot0.push_back({a, e});
      }
    }
  }
  std::vector<Chain> all;
  std::function<void(Chain&, int)> grow = [&](Chain& c, int w) {
    all.push_back(c);
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
      if (w + popcount(m) > max_weight) continue;
      c.letters.push_back(m);
      grow(c, w + popcount(m));
      c.letters.pop_back();
    }
  };
  for (const auto& k : slot0) {
    Chain c{k, {}};
    int w = chain_weight(c);
    if (w <= max_weight) grow(c, w);
  }
  for (const auto& c : all) hi_ = std::max(hi_, chain_degree(c));
  bases_.assign(hi_ + 1, {});
  for (auto& c : all) bases_[chain_degree(c)].push_back(std::move(c));
  std::vector<int> dims;
  for (auto& b : bases_) {
    std::sort(b.begin(), b.end());
    for (int i = 0; i < static_cast<int>(b.size()); ++i) index_[b[i]] = i;
    dims.push_back(static_cast<int>(b.size()));
  }
  complex_ = FiniteChainComplex(0, dims);
  for (int k = 0; k < hi_; ++k) complex_.set_d(k, matrix([this](const ChainSum& x) { return differential(x); }, k, k + 1));
  complex_.check();
}

ChainSum HochschildComplex::bar(const ChainSum& x) const {
  const FormAlgebra& f = forms_;
  return bar_differential(x, [&f](const Form& a, const Form& b) { return f.multiply(a, b); });
}

ChainSum HochschildComplex::internal(const ChainSum& x) const {
  ChainSum out;
  const auto& g = algebra();
  for (const auto& [ch, u] : x) {
    for (const auto& [k, v] : forms_.d_ce(key_form(ch.a0))) add_term(out, Chain{k, ch.letters}, u * v);
    for (int j = 1; j <= ch.length(); ++j) {
      const int s = -sign_of(partial_degree(ch, j - 1));
      for (const auto& [m, v] : ce_differential(g, ch.letters[j - 1])) {
        Chain c = ch;
        c.letters[j - 1] = m;
        add_term(out, c, u * v * s);
      }
    }
  }
  return out;
}

ChainSum HochschildComplex::truncate(const ChainSum& x) const {
  ChainSum out;
  for (const auto& [c, v] : x)
    if (chain_weight(c) <= max_weight_) out.emplace(c, v);
  return out;
}

ChainSum HochschildComplex::differential(const ChainSum& x) const {
  ChainSum out = bar(x);
  axpy(out, 1, internal(x));
  return truncate(out);
}

const std::vector<Chain>& HochschildComplex::basis(int degree) const {
  static const std::vector<Chain> empty;
  if (degree < 0 || degree > hi_) return empty;
  return bases_[degree];
}

int HochschildComplex::index(const Chain& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

SparseVector HochschildComplex::to_vector(const ChainSum& x, int degree) const {
  SparseVector v;
  for (const auto& [c, val] : truncate(x)) {
    if (chain_degree(c) != degree) throw std::logic_error("Hochschild chain of unexpected degree");
    v[index_.at(c)] = val;
  }
  return v;
}

ChainSum HochschildComplex::from_vector(const SparseVector& v, int degree) const {
  ChainSum out;
  for (const auto& [i, val] : v) add_term(out, basis(degree).at(i), val);
  return out;
}

SparseMatrix HochschildComplex::matrix(const std::function<ChainSum(const ChainSum&)>& op, int from, int to) const {
  const auto& src = basis(from);
  SparseMatrix m(static_cast<int>(basis(to).size()), static_cast<int>(src.size()));
  for (int j = 0; j < static_cast<int>(src.size()); ++j) m.set_column(j, to_vector(op(ChainSum{{src[j], 1}}), to));
  return m;
}

WeightedForms::WeightedForms(const FormAlgebra& f, int max_weight) : f_(f), max_weight_(max_weight) {
  const int n = f.n();
  bases_.assign(n + 1, {});
  for (std::uint32_t a = 0; a < (1u << n); ++a) {
    const int k = popcount(a);
    if (k > max_weight) continue;
    for (auto& e : monomials_up_to(n, max_weight - k)) bases_[k].push_back({a, std::move(e)});
  }
  std::vector<int> dims;
  for (auto& b : bases_) {
    std::sort(b.begin(), b.end());
    for (int i = 0; i < static_cast<int>(b.size()); ++i) index_[b[i]] = i;
    dims.push_back(static_cast<int>(b.size()));
  }
  complex_ = FiniteChainComplex(0, dims);
  for (int k = 0; k < n; ++k) {
    SparseMatrix m(dims[k + 1], dims[k]);
    for (int j = 0; j < dims[k]; ++j) m.set_column(j, to_vector(f.d_ce(key_form(bases_[k][j])), k + 1));
    complex_.set_d(k, std::move(m));
  }
  complex_.check();
}

Form WeightedForms::truncate(const Form& x) const {
  Form out;
  for (const auto& [k, v] : x)
    if (k.xi_degree() + k.y_degree() <= max_weight_) out.emplace(k, v);
  return out;
}

const std::vector<FormKey>& WeightedForms::basis(int degree) const {
  static const std::vector<FormKey> empty;
  if (degree < 0 || degree >= static_cast<int>(bases_.size())) return empty;
  return bases_[degree];
}

SparseVector WeightedForms::to_vector(const Form& x, int degree) const {
  SparseVector v;
  for (const auto& [k, val] : truncate(x)) {
    if (k.xi_degree() != degree) throw std::logic_error("form of unexpected degree");
    v[index_.at(k)] = val;
  }
  return v;
}

Form WeightedForms::from_vector(const SparseVector& v, int degree) const {
  Form out;
  for (const auto& [i, val] : v) add_term(out, basis(degree).at(i), val);
  return out;
}

Form hkr(const FormAlgebra& f, const ChainSum& x) {
  Form out;
  for (const auto& [ch, u] : x) {
    Form cur = key_form(ch.a0);
    for (auto m : ch.letters) cur = f.multiply(cur, f.d_dr(letter_form(m, f.n())));
    axpy(out, u / factorial(ch.length()), cur);
  }
  return out;
}

std::vector<SparseMatrix> hkr_matrices(const HochschildComplex& h, const WeightedForms& w) {
  std::vector<SparseMatrix> maps;
  for (int k = h.lo(); k <= h.hi(); ++k) {
    const auto& src = h.basis(k);
    SparseMatrix m(static_cast<int>(w.basis(k).size()), static_cast<int>(src.size()));
    for (int j = 0; j < static_cast<int>(src.size()); ++j)
      m.set_column(j, w.to_vector(hkr(h.forms(), ChainSum{{src[j], 1}}), k));
    maps.push_back(std::move(m));
  }
  return maps;
}

bool HkrReport::passed() const { return chain_map.ok && injective && hochschild_dims == forms_dims; }

HkrReport verify_hkr(const MetricLieAlgebra& g, int max_weight) {
  HochschildComplex h(g, max_weight);
  WeightedForms w(h.forms(), max_weight);
  HkrReport r;
  r.max_weight = max_weight;
  auto maps = hkr_matrices(h, w);
  r.chain_map = is_chain_map(maps, h.complex(), w.complex(), 0);
  r.hochschild_dims = homology_dims(h.complex());
  r.forms_dims = homology_dims(w.complex());
  for (int k = std::max(h.hi(), g.dim()); k > std::min(h.hi(), g.dim()); --k) {
    r.hochschild_dims.try_emplace(k, 0);
    r.forms_dims.try_emplace(k, 0);
  }
  for (int k = h.lo(); k <= h.hi(); ++k) {
    auto hb = homology(h.complex(), k);
    std::vector<SparseVector> images;
    for (const auto& z : hb.representatives) images.push_back(maps[k].apply(z));
    if (rank_modulo(images, w.complex().d(k - 1)) != hb.dimension) {
      r.injective = false;
      if (r.witness_degree < 0) r.witness_degree = k;
    }
  }
  return r;
}

bool in_filtration_one(const Chain& c) {
  for (auto m : c.letters)
    if (popcount(m) != 1) return false;
  return true;
}

namespace {

// Basis of Z ∩ V₁ in degree k, as full-index vectors.
std::vector<SparseVector> filtered_cycles(const HochschildComplex& h, int k) {
  const auto& b = h.basis(k);
  SparseMatrix d = h.complex().d(k);
  std::vector<int> cols;
  for (int j = 0; j < static_cast<int>(b.size()); ++j)
    if (in_filtration_one(b[j])) cols.push_back(j);
  SparseMatrix sub(d.rows(), static_cast<int>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j) sub.set_column(j, d.column(cols[j]));
  std::vector<SparseVector> out;
  for (const auto& v : rank_kernel_image(sub).kernel) {
    SparseVector full;
    for (const auto& [j, c] : v) full[cols[j]] = c;
    out.push_back(std::move(full));
  }
  return out;
}

}  // namespace

CorReport verify_cor(const HochschildComplex& h, bool drop_boundaries) {
  CorReport r;
  r.max_weight = h.max_weight();
  for (int k = h.lo(); k <= h.hi(); ++k) {
    auto cycles = rank_kernel_image(h.complex().d(k)).kernel;
    SparseMatrix din = h.complex().d(k - 1);
    r.homology_dims[k] = static_cast<int>(cycles.size()) - rank(din);
    Echelon e;
    if (!drop_boundaries)
      for (int j = 0; j < din.cols(); ++j) e.insert(din.column(j));
    const int boundary_rank = e.rank();
    for (auto& z : filtered_cycles(h, k)) e.insert(std::move(z));
    r.filtered_dims[k] = e.rank() - boundary_rank;
    for (const auto& z : cycles) {
      if (e.contains(z)) continue;
      if (r.passed) {
        r.passed = false;
        r.witness_degree = k;
        r.witness = h.from_vector(z, k);
      }
      break;
    }
  }
  return r;
}

std::optional<ChainSum> filtration_representative(const HochschildComplex& h, int degree, const ChainSum& z) {
  SparseMatrix din = h.complex().d(degree - 1);
  Echelon e;
  for (int j = 0; j < din.cols(); ++j) e.insert(din.column(j));
  for (auto& v : filtered_cycles(h, degree)) {
    SparseVector tag = v;
    e.insert(std::move(v), std::move(tag));
  }
  auto part = e.express(h.to_vector(z, degree));
  if (!part) return std::nullopt;
  return h.from_vector(*part, degree);
}

ChainSum at_first(const FormAlgebra& f, const ChainSum& x) {
  ChainSum out;
  for (const auto& [ch, u] : x) {
    if (ch.length() == 0) continue;
    std::vector<std::uint32_t> rest(ch.letters.begin() + 1, ch.letters.end());
    for (const auto& [k, v] : f.multiply(key_form(ch.a0), f.d_dr(letter_form(ch.letters[0], f.n()))))
      add_term(out, Chain{k, rest}, u * v);
  }
  return out;
}

ChainSum at_second(const FormAlgebra& f, const ChainSum& x) {
  ChainSum out;
  for (const auto& [ch, u] : x) {
    const int len = ch.length();
    if (len == 0) continue;
    const std::uint32_t last = ch.letters.back();
    const int s = sign_of((popcount(last) - 1) * partial_degree(ch, len - 1));
    std::vector<std::uint32_t> rest(ch.letters.begin(), ch.letters.end() - 1);
    for (const auto& [k, v] : f.multiply(f.d_dr(letter_form(last, f.n())), key_form(ch.a0)))
      add_term(out, Chain{k, rest}, u * v * s);
  }
  return out;
}

AtReport verify_at(const MetricLieAlgebra& g, int max_weight) {
  HochschildComplex source(g, max_weight);
  HochschildComplex target(g, max_weight, Coefficients::OneForms);
  auto maps_for = [&](ChainSum (*op)(const FormAlgebra&, const ChainSum&)) {
    std::vector<SparseMatrix> maps;
    for (int k = source.lo(); k <= source.hi(); ++k) {
      const auto& src = source.basis(k);
      SparseMatrix m(static_cast<int>(target.basis(k).size()), static_cast<int>(src.size()));
      for (int j = 0; j < static_cast<int>(src.size()); ++j)
        m.set_column(j, target.to_vector(op(target.forms(), ChainSum{{src[j], 1}}), k));
      maps.push_back(std::move(m));
    }
    return maps;
  };
  AtReport r;
  r.max_weight = max_weight;
  r.first = is_chain_map(maps_for(at_first), source.complex(), target.complex(), 0);
  r.second = is_chain_map(maps_for(at_second), source.complex(), target.complex(), 0);
  return r;
}

Form poisson_bracket(const FormAlgebra& f, const Form& a, const Form& b) {
  const auto& g = f.algebra();
  Form out;
  for (int k = 0; k < f.n(); ++k) {
    Form left = f.d_xi_right(k, a);
    if (left.empty()) continue;
    for (int l = 0; l < f.n(); ++l) {
      const Rational& p = g.metric_inverse(k, l);
      if (p == 0) continue;
      axpy(out, p, f.multiply(left, f.d_xi(l, b)));
    }
  }
  return out;
}

EpsilonElement EpsilonAlgebra::multiply(const EpsilonElement& a, const EpsilonElement& b) const {
  EpsilonElement out;
  out.constant = f_.multiply(a.constant, b.constant);
  out.linear = scaled(poisson_bracket(f_, a.constant, b.constant), Rational(1, 2));
  axpy(out.linear, 1, f_.multiply(a.constant, b.linear));
  axpy(out.linear, 1, f_.multiply(a.linear, b.constant));
  return out;
}

std::optional<std::vector<std::uint32_t>> EpsilonAlgebra::associativity_failure() const {
  const std::uint32_t count = 1u << f_.n();
  for (std::uint32_t a = 0; a < count; ++a)
    for (std::uint32_t b = 0; b < count; ++b)
      for (std::uint32_t c = 0; c < count; ++c) {
        auto x = lift(letter_form(a, f_.n())), y = lift(letter_form(b, f_.n())), z = lift(letter_form(c, f_.n()));
        if (!(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)))) return std::vector<std::uint32_t>{a, b, c};
      }
  return std::nullopt;
}

ChainSum d0_on_chains(const FormAlgebra& f, const ChainSum& x) {
  return bar_differential(
      x, [&f](const Form& a, const Form& b) { return scaled(poisson_bracket(f, a, b), Rational(1, 2)); });
}

ChainSum d0_by_extraction(const FormAlgebra& f, const ChainSum& x) {
  // b is affine in the product; the ε-coefficient is b_{μ_ε}|_{ε=1} − b_{μ_ε}|_{ε=0}.
  EpsilonAlgebra e(f);
  ChainSum out = bar_differential(x, [&](const Form& a, const Form& b) {
    auto p = e.multiply(e.lift(a), e.lift(b));
    Form sum = p.constant;
    axpy(sum, 1, p.linear);
    return sum;
  });
  axpy(out, -1, bar_differential(x, [&](const Form& a, const Form& b) { return e.multiply(e.lift(a), e.lift(b)).constant; }));
  return out;
}

D0ChainReport verify_d0_on_chains(const HochschildComplex& h) {
  D0ChainReport r;
  r.max_weight = h.max_weight();
  const auto& f = h.forms();
  auto low = [&h](const ChainSum& x) {
    ChainSum out;
    for (const auto& [c, v] : x)
      if (chain_weight(c) <= h.max_weight() - 2) out.emplace(c, v);
    return out;
  };
  for (int k = h.lo(); k <= h.hi(); ++k)
    for (const auto& c : h.basis(k)) {
      ChainSum x{{c, 1}};
      ++r.checked;
      ChainSum d0 = d0_on_chains(f, x);
      bool agree = d0 == d0_by_extraction(f, x);
      ChainSum anti = h.differential(d0);
      axpy(anti, 1, d0_on_chains(f, h.differential(x)));
      bool anticommutes = low(anti).empty();
      if (!agree) r.paths_agree = false;
      if (!anticommutes) r.anticommutes = false;
      if ((!agree || !anticommutes) && !r.witness) r.witness = c;
    }
  return r;
}

TransportReport verify_d0_transport(const MetricLieAlgebra& g, int max_weight, int jet_order, int drop_from) {
  if (max_weight < 2) throw UsageError("transport needs weight bound ≥ 2");
  if (jet_order < max_weight - 1) throw UsageError("transport needs jet order ≥ weight bound − 1");
  HochschildComplex h(g, max_weight);
  WeightedForms w(h.forms(), max_weight - 2);
  FormOperator d0_forms = d0_operator(h.forms(), jet_order, drop_from);
  TransportReport r;
  r.max_weight = max_weight;
  r.jet_order = jet_order;
  for (int k = h.lo(); k <= h.hi(); ++k) {
    auto hb = homology(h.complex(), k);
    SparseMatrix boundary = w.complex().d(k - 2);
    for (int idx = 0; idx < hb.dimension; ++idx) {
      ++r.classes;
      auto rep = filtration_representative(h, k, h.from_vector(hb.representatives[idx], k));
      bool ok = rep.has_value();
      if (ok) {
        Form diff = hkr(h.forms(), d0_on_chains(h.forms(), *rep));
        axpy(diff, -1, d0_forms(hkr(h.forms(), *rep)));
        diff = w.truncate(diff);
        if (k - 1 < 0 || k - 1 > g.dim())
          ok = diff.empty();
        else
          ok = rank_modulo({w.to_vector(diff, k - 1)}, boundary) == 0;
      }
      if (ok) {
        ++r.matched;
      } else if (r.witness_degree < 0) {
        r.witness_degree = k;
        r.witness_class = idx;
      }
    }
  }
  return r;
}

}  // namespace duflo
