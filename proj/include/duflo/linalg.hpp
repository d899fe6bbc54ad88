#pragma once

#include "duflo/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace duflo {

/// index → nonzero coefficient
using SparseVector = std::map<int, Rational>;

void axpy(SparseVector& y, const Rational& a, const SparseVector& x);
SparseVector scaled(const SparseVector& x, const Rational& a);

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(cols) {}
  static SparseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  Rational at(int r, int c) const;
  void add(int r, int c, const Rational& v);
  void set_column(int c, SparseVector v);
  const SparseVector& column(int c) const { return columns_.at(c); }

  SparseVector apply(const SparseVector& v) const;
  SparseMatrix transpose() const;

  SparseMatrix& operator+=(const SparseMatrix& o);
  SparseMatrix& operator-=(const SparseMatrix& o);
  SparseMatrix& operator*=(const Rational& a);
  bool operator==(const SparseMatrix& o) const;

  /// (row, col, value) in column-major order.
  struct Triplet {
    int row, col;
    Rational value;
  };
  std::vector<Triplet> triplets() const;

 private:
  void check_index(int r, int c) const;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVector> columns_;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b);
SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b);
SparseMatrix operator*(SparseMatrix a, const Rational& s);

/// Row-echelon store over ℚ with pivots at leading (smallest) indices.
/// Each stored row may carry a tracking vector recording how it was formed
/// from the inserted vectors, which is what kernels and class coordinates read.
class Echelon {
 public:
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Eliminates stored pivots from v. With full = false it stops at the first
  /// leading index that has no pivot, which already decides membership.
  /// track accumulates −Σ f_p · track_p for the multiples f_p subtracted.
  void reduce(SparseVector& v, SparseVector* track = nullptr, bool full = false) const;

  bool contains(const SparseVector& v) const;

  /// Inserts v if independent of the stored rows. Returns true if the rank grew.
  bool insert(SparseVector v, SparseVector track = {});

  /// Writes v = Σ f_p row_p and returns Σ f_p track_p, i.e. v in terms of the
  /// inserted vectors' tags. nullopt if v is not in the span.
  std::optional<SparseVector> express(const SparseVector& v) const;

 private:
  struct Row {
    SparseVector vec;  // leading entry 1
    SparseVector track;
  };
  std::map<int, Row> rows_;
};

struct RankKernelImage {
  int rank = 0;
  std::vector<SparseVector> kernel;  // basis of ker M
  std::vector<SparseVector> image;   // independent columns spanning im M
  std::vector<int> pivot_columns;    // indices of those columns
};

RankKernelImage rank_kernel_image(const SparseMatrix& m);
int rank(const SparseMatrix& m);

/// Rank of span(vectors) modulo the column space of `boundary`.
int rank_modulo(const std::vector<SparseVector>& vectors, const SparseMatrix& boundary);

/// Cohomologically graded finite complex: d(k): C^k → C^{k+1}, degrees lo..hi.
class FiniteChainComplex {
 public:
  FiniteChainComplex() = default;
  FiniteChainComplex(int lo, std::vector<int> dims);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  int dim(int k) const;
  /// Matrix of d from degree k (dim(k+1) × dim(k)); zero outside the range.
  SparseMatrix d(int k) const;
  void set_d(int k, SparseMatrix m);

  struct DSquaredFailure {
    int degree;
    int column;
  };
  /// First degree/basis vector where d∘d ≠ 0, if any.
  std::optional<DSquaredFailure> d_squared_failure() const;
  /// Throws InvariantError naming the offending degree.
  void check() const;
  int euler_characteristic() const;

 private:
  int lo_ = 0;
  std::vector<int> dims_;
  std::vector<SparseMatrix> d_;
};

class HomologyBasis {
 public:
  int degree = 0;
  int dimension = 0;
  int cycle_dimension = 0;
  int boundary_dimension = 0;
  std::vector<SparseVector> representatives;

  /// Coordinates of the class of cycle z in the representative basis.
  /// Throws std::invalid_argument if z is not a cycle.
  std::vector<Rational> class_coordinates(const SparseVector& z) const;
  bool is_boundary(const SparseVector& z) const;
  bool is_cycle(const SparseVector& z) const;

 private:
  friend HomologyBasis homology(const FiniteChainComplex&, int);
  SparseMatrix d_out_;
  std::shared_ptr<Echelon> boundaries_;
  std::shared_ptr<Echelon> classes_;  // boundaries then representatives, tracked by representative index
};

HomologyBasis homology(const FiniteChainComplex& c, int k);
/// dim H^k for every degree, from ranks alone.
std::map<int, int> homology_dims(const FiniteChainComplex& c);

/// True iff z1 − z2 is a boundary. Both inputs must be cycles.
bool same_class(const HomologyBasis& h, const SparseVector& z1, const SparseVector& z2);

/// f[k − C.lo()] maps C^k → D^{k+shift}. Checks d_D f = (−1)^shift f d_C.
struct ChainMapCheck {
  bool ok = true;
  int degree = 0;
  int column = -1;
  std::string message;
};
ChainMapCheck is_chain_map(const std::vector<SparseMatrix>& f, const FiniteChainComplex& c,
                           const FiniteChainComplex& d, int shift);

/// Solves d K − K d = φ for an operator φ of degree −1 with dφ + φd = 0.
/// phi[k − C.lo()] maps C^k → C^{k−1}; the returned K[k − C.lo()] maps
/// C^k → C^{k−2}. Uses a splitting C^k = B ⊕ H ⊕ W; infeasible exactly when
/// φ of some homology representative is not a boundary.
struct HomotopyResult {
  bool feasible = false;
  std::vector<SparseMatrix> k;
  int witness_degree = 0;
  int witness_representative = -1;
  std::string message;
};
HomotopyResult find_chain_homotopy(const FiniteChainComplex& c, const std::vector<SparseMatrix>& phi);

}  // namespace duflo
