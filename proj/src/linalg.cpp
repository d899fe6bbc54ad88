#include "duflo/linalg.hpp"

#include "duflo/errors.hpp"

#include <stdexcept>

namespace duflo {

void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  if (a == 0) return;
  auto hint = y.begin();
  for (const auto& [i, v] : x) {
    hint = y.lower_bound(i);
    if (hint != y.end() && hint->first == i) {
      hint->second += a * v;
      if (hint->second == 0) hint = y.erase(hint);
    } else {
      hint = y.emplace_hint(hint, i, a * v);
    }
  }
}

SparseVector scaled(const SparseVector& x, const Rational& a) {
  SparseVector out;
  if (a == 0) return out;
  for (const auto& [i, v] : x) out.emplace_hint(out.end(), i, v * a);
  return out;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.columns_[i].emplace(i, 1);
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseMatrix::check_index(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("SparseMatrix index (" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
}

Rational SparseMatrix::at(int r, int c) const {
  check_index(r, c);
  auto it = columns_[c].find(r);
  return it == columns_[c].end() ? Rational(0) : it->second;
}

void SparseMatrix::add(int r, int c, const Rational& v) {
  check_index(r, c);
  if (v == 0) return;
  auto [it, inserted] = columns_[c].try_emplace(r, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) columns_[c].erase(it);
  }
}

void SparseMatrix::set_column(int c, SparseVector v) {
  if (c < 0 || c >= cols_) throw std::out_of_range("set_column: column index out of range");
  for (auto it = v.begin(); it != v.end();) {
    if (it->first < 0 || it->first >= rows_) throw std::out_of_range("set_column: row index out of range");
    if (it->second == 0)
      it = v.erase(it);
    else
      ++it;
  }
  columns_[c] = std::move(v);
}

SparseVector SparseMatrix::apply(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [j, a] : v) {
    if (j < 0 || j >= cols_) throw std::out_of_range("apply: vector index out of range");
    axpy(out, a, columns_[j]);
  }
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : columns_[c]) t.columns_[r].emplace_hint(t.columns_[r].end(), c, v);
  return t;
}

SparseMatrix& SparseMatrix::operator+=(const SparseMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  for (int c = 0; c < cols_; ++c) axpy(columns_[c], 1, o.columns_[c]);
  return *this;
}

SparseMatrix& SparseMatrix::operator-=(const SparseMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
  for (int c = 0; c < cols_; ++c) axpy(columns_[c], -1, o.columns_[c]);
  return *this;
}

SparseMatrix& SparseMatrix::operator*=(const Rational& a) {
  for (auto& c : columns_) c = scaled(c, a);
  return *this;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && columns_ == o.columns_;
}

std::vector<SparseMatrix::Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : columns_[c]) out.push_back({r, c, v});
  return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: shape mismatch " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  SparseMatrix out(a.rows(), b.cols());
  for (int c = 0; c < b.cols(); ++c) out.set_column(c, a.apply(b.column(c)));
  return out;
}

SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }
SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) { return a -= b; }
SparseMatrix operator*(SparseMatrix a, const Rational& s) { return a *= s; }

void Echelon::reduce(SparseVector& v, SparseVector* track, bool full) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      if (!full) return;
      ++it;
      continue;
    }
    const int idx = it->first;
    const Rational f = it->second;
    axpy(v, -f, row->second.vec);
    if (track) axpy(*track, -f, row->second.track);
    it = v.lower_bound(idx);
  }
}

bool Echelon::contains(const SparseVector& v) const {
  SparseVector w = v;
  reduce(w);
  return w.empty();
}

bool Echelon::insert(SparseVector v, SparseVector track) {
  reduce(v, &track);
  if (v.empty()) return false;
  const int lead = v.begin()->first;
  const Rational inv = 1 / v.begin()->second;
  rows_.emplace(lead, Row{scaled(v, inv), scaled(track, inv)});
  return true;
}

std::optional<SparseVector> Echelon::express(const SparseVector& v) const {
  SparseVector w = v;
  SparseVector track;
  reduce(w, &track);
  if (!w.empty()) return std::nullopt;
  return scaled(track, -1);
}

RankKernelImage rank_kernel_image(const SparseMatrix& m) {
  RankKernelImage out;
  Echelon e;
  for (int j = 0; j < m.cols(); ++j) {
    SparseVector v = m.column(j);
    SparseVector track{{j, Rational(1)}};
    SparseVector w = v;
    SparseVector t = track;
    e.reduce(w, &t);
    if (w.empty()) {
      out.kernel.push_back(std::move(t));
    } else {
      e.insert(std::move(v), std::move(track));
      out.image.push_back(m.column(j));
      out.pivot_columns.push_back(j);
    }
  }
  out.rank = e.rank();
  return out;
}

int rank(const SparseMatrix& m) {
  Echelon e;
  for (int j = 0; j < m.cols(); ++j) e.insert(m.column(j));
  return e.rank();
}

int rank_modulo(const std::vector<SparseVector>& vectors, const SparseMatrix& boundary) {
  Echelon e;
  for (int j = 0; j < boundary.cols(); ++j) e.insert(boundary.column(j));
  int r = 0;
  for (const auto& v : vectors)
    if (e.insert(v)) ++r;
  return r;
}

FiniteChainComplex::FiniteChainComplex(int lo, std::vector<int> dims) : lo_(lo), dims_(std::move(dims)) {
  for (int i = 0; i < static_cast<int>(dims_.size()); ++i) d_.emplace_back(dim(lo_ + i + 1), dims_[i]);
}

int FiniteChainComplex::dim(int k) const {
  if (k < lo_ || k > hi()) return 0;
  return dims_[k - lo_];
}

SparseMatrix FiniteChainComplex::d(int k) const {
  if (k < lo_ || k > hi()) return SparseMatrix(dim(k + 1), dim(k));
  return d_[k - lo_];
}

void FiniteChainComplex::set_d(int k, SparseMatrix m) {
  if (k < lo_ || k > hi()) throw std::invalid_argument("set_d: degree outside complex");
  if (m.rows() != dim(k + 1) || m.cols() != dim(k))
    throw std::invalid_argument("set_d: differential at degree " + std::to_string(k) + " has wrong shape");
  d_[k - lo_] = std::move(m);
}

std::optional<FiniteChainComplex::DSquaredFailure> FiniteChainComplex::d_squared_failure() const {
  for (int k = lo_; k < hi(); ++k) {
    SparseMatrix dd = d(k + 1) * d(k);
    for (int c = 0; c < dd.cols(); ++c)
      if (!dd.column(c).empty()) return DSquaredFailure{k, c};
  }
  return std::nullopt;
}

void FiniteChainComplex::check() const {
  if (auto f = d_squared_failure())
    throw InvariantError("d∘d ≠ 0 starting at degree " + std::to_string(f->degree) + ", basis vector " +
                         std::to_string(f->column));
}

int FiniteChainComplex::euler_characteristic() const {
  int chi = 0;
  for (int k = lo_; k <= hi(); ++k) chi += ((k % 2 == 0) ? 1 : -1) * dim(k);
  return chi;
}

bool HomologyBasis::is_cycle(const SparseVector& z) const { return d_out_.apply(z).empty(); }

bool HomologyBasis::is_boundary(const SparseVector& z) const { return boundaries_->contains(z); }

std::vector<Rational> HomologyBasis::class_coordinates(const SparseVector& z) const {
  if (!is_cycle(z)) throw std::invalid_argument("class_coordinates: input is not a cycle");
  auto coords = classes_->express(z);
  if (!coords) throw InvariantError("cycle not spanned by boundaries and representatives");
  std::vector<Rational> out(dimension);
  for (const auto& [r, v] : *coords) out.at(r) = v;
  return out;
}

HomologyBasis homology(const FiniteChainComplex& c, int k) {
  HomologyBasis h;
  h.degree = k;
  h.d_out_ = c.d(k);
  auto z = rank_kernel_image(h.d_out_).kernel;
  h.boundaries_ = std::make_shared<Echelon>();
  SparseMatrix din = c.d(k - 1);
  for (int j = 0; j < din.cols(); ++j) h.boundaries_->insert(din.column(j));
  h.classes_ = std::make_shared<Echelon>(*h.boundaries_);
  for (auto& v : z) {
    int r = static_cast<int>(h.representatives.size());
    if (h.classes_->insert(v, SparseVector{{r, Rational(1)}})) h.representatives.push_back(std::move(v));
  }
  h.cycle_dimension = static_cast<int>(z.size());
  h.boundary_dimension = h.boundaries_->rank();
  h.dimension = static_cast<int>(h.representatives.size());
  if (h.dimension != h.cycle_dimension - h.boundary_dimension)
    throw InvariantError("boundaries are not cycles at degree " + std::to_string(k));
  return h;
}

std::map<int, int> homology_dims(const FiniteChainComplex& c) {
  std::map<int, int> ranks;
  for (int k = c.lo() - 1; k <= c.hi(); ++k) ranks[k] = rank(c.d(k));
  std::map<int, int> out;
  for (int k = c.lo(); k <= c.hi(); ++k) out[k] = c.dim(k) - ranks[k] - ranks[k - 1];
  return out;
}

bool same_class(const HomologyBasis& h, const SparseVector& z1, const SparseVector& z2) {
  if (!h.is_cycle(z1) || !h.is_cycle(z2)) throw std::invalid_argument("same_class: inputs must be cycles");
  SparseVector diff = z1;
  axpy(diff, -1, z2);
  return h.is_boundary(diff);
}

ChainMapCheck is_chain_map(const std::vector<SparseMatrix>& f, const FiniteChainComplex& c,
                           const FiniteChainComplex& d, int shift) {
  ChainMapCheck out;
  const int n = c.hi() - c.lo() + 1;
  if (static_cast<int>(f.size()) != n) {
    out.ok = false;
    out.message = "expected one matrix per source degree";
    return out;
  }
  auto fk = [&](int k) -> SparseMatrix {
    if (k < c.lo() || k > c.hi()) return SparseMatrix(d.dim(k + shift), c.dim(k));
    return f[k - c.lo()];
  };
  for (int k = c.lo(); k <= c.hi(); ++k) {
    const SparseMatrix& m = f[k - c.lo()];
    if (m.rows() != d.dim(k + shift) || m.cols() != c.dim(k)) {
      out = {false, k, -1, "shape mismatch at degree " + std::to_string(k)};
      return out;
    }
  }
  const Rational sign = (shift % 2 == 0) ? 1 : -1;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    SparseMatrix lhs = d.d(k + shift) * fk(k);
    SparseMatrix rhs = fk(k + 1) * c.d(k);
    for (int col = 0; col < lhs.cols(); ++col) {
      SparseVector diff = lhs.column(col);
      axpy(diff, -sign, rhs.column(col));
      if (!diff.empty()) {
        out = {false, k, col, "d f ≠ ±f d at degree " + std::to_string(k) + ", basis vector " + std::to_string(col)};
        return out;
      }
    }
  }
  return out;
}

HomotopyResult find_chain_homotopy(const FiniteChainComplex& c, const std::vector<SparseMatrix>& phi) {
  HomotopyResult out;
  const int lo = c.lo(), hi = c.hi();
  if (static_cast<int>(phi.size()) != hi - lo + 1) throw std::invalid_argument("find_chain_homotopy: one φ per degree");
  auto phik = [&](int k) -> SparseMatrix {
    if (k < lo || k > hi) return SparseMatrix(c.dim(k - 1), c.dim(k));
    return phi[k - lo];
  };
  for (int k = lo; k <= hi; ++k) {
    if (phi[k - lo].rows() != c.dim(k - 1) || phi[k - lo].cols() != c.dim(k))
      throw std::invalid_argument("find_chain_homotopy: φ has wrong shape at degree " + std::to_string(k));
    SparseMatrix anti = c.d(k - 1) * phik(k) + phik(k + 1) * c.d(k);
    if (!anti.is_zero()) {
      out.witness_degree = k;
      out.message = "φ does not anticommute with d at degree " + std::to_string(k);
      return out;
    }
  }

  // W^k: source columns whose images form a basis of B^{k+1}
  std::map<int, std::vector<int>> wcols;
  for (int k = lo - 1; k <= hi; ++k) wcols[k] = rank_kernel_image(c.d(k)).pivot_columns;

  for (int k = lo; k <= hi; ++k) {
    HomologyBasis h = homology(c, k);
    const int nprev = c.dim(k - 1);
    const int nreps = h.dimension;

    // s_r ∈ C^{k−2} with d s_r = φ(rep_r)
    Echelon lower;
    SparseMatrix d2 = c.d(k - 2);
    for (int j = 0; j < d2.cols(); ++j) lower.insert(d2.column(j), SparseVector{{j, Rational(1)}});
    std::vector<SparseVector> s(nreps);
    for (int r = 0; r < nreps; ++r) {
      SparseVector target = phik(k).apply(h.representatives[r]);
      auto sol = lower.express(target);
      if (!sol) {
        out.feasible = false;
        out.k.clear();
        out.witness_degree = k;
        out.witness_representative = r;
        out.message = "φ maps homology class " + std::to_string(r) + " in degree " + std::to_string(k) +
                      " to a non-boundary";
        return out;
      }
      s[r] = std::move(*sol);
    }

    // basis of C^k: d e_j (j ∈ W^{k−1}) | representatives | e_j (j ∈ W^k); tags 0.., nprev.., nprev+nreps..
    Echelon split;
    SparseMatrix din = c.d(k - 1);
    for (int j : wcols[k - 1]) split.insert(din.column(j), SparseVector{{j, Rational(1)}});
    for (int r = 0; r < nreps; ++r) split.insert(h.representatives[r], SparseVector{{nprev + r, Rational(1)}});
    for (int j : wcols[k]) split.insert(SparseVector{{j, Rational(1)}}, SparseVector{{nprev + nreps + j, Rational(1)}});
    if (split.rank() != c.dim(k)) throw InvariantError("splitting does not span degree " + std::to_string(k));

    SparseMatrix kmat(c.dim(k - 2), c.dim(k));
    SparseMatrix phi_prev = phik(k - 1);
    for (int i = 0; i < c.dim(k); ++i) {
      auto coords = split.express(SparseVector{{i, Rational(1)}});
      SparseVector hv, col;
      for (const auto& [tag, v] : *coords) {
        if (tag < nprev)
          hv.emplace(tag, v);
        else if (tag < nprev + nreps)
          axpy(col, v, s[tag - nprev]);
      }
      axpy(col, -1, phi_prev.apply(hv));
      kmat.set_column(i, std::move(col));
    }
    out.k.push_back(std::move(kmat));
  }

  for (int k = lo; k <= hi; ++k) {
    auto kk = [&](int j) -> SparseMatrix {
      if (j < lo || j > hi) return SparseMatrix(c.dim(j - 2), c.dim(j));
      return out.k[j - lo];
    };
    SparseMatrix lhs = c.d(k - 2) * kk(k) - kk(k + 1) * c.d(k);
    if (!(lhs == phik(k))) throw InvariantError("homotopy self-check failed at degree " + std::to_string(k));
  }
  out.feasible = true;
  return out;
}

}  // namespace duflo
