#include <doctest.h>

#include "duflo/errors.hpp"
#include "duflo/linalg.hpp"

#include <random>

using namespace duflo;

namespace {

// Dense row-reduction oracle, independent of the sparse echelon.
int dense_rank(const SparseMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (const auto& t : m.triplets()) a[t.row][t.col] = t.value;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (int i = r + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (int j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

SparseMatrix random_matrix(std::mt19937& rng, int rows, int cols, double density) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-4, 4);
  SparseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (u(rng) < density) {
        long num = v(rng);
        long den = 1 + (v(rng) + 4) % 3;
        m.add(i, j, make_rational(num, den));
      }
  return m;
}

SparseMatrix dense(int rows, int cols, std::initializer_list<long> values) {
  SparseMatrix m(rows, cols);
  int k = 0;
  for (long v : values) {
    m.add(k / cols, k % cols, v);
    ++k;
  }
  return m;
}

// Complex 0 → ℚ^a --A--> ℚ^b --B--> ℚ^c → 0 with B·A = 0 built from random factors.
FiniteChainComplex random_complex(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim(1, 6);
  int a = dim(rng), b = dim(rng) + 2, c = dim(rng);
  SparseMatrix first = random_matrix(rng, b, a, 0.5);
  // rows of `kill` span the annihilator of im A, so B = X · kill satisfies B A = 0
  auto rki = rank_kernel_image(first.transpose());
  SparseMatrix kill(static_cast<int>(rki.kernel.size()), b);
  for (int i = 0; i < static_cast<int>(rki.kernel.size()); ++i)
    for (const auto& [j, v] : rki.kernel[i]) kill.add(i, j, v);
  SparseMatrix second = random_matrix(rng, c, kill.rows(), 0.6) * kill;
  FiniteChainComplex cx(0, {a, b, c});
  cx.set_d(0, first);
  cx.set_d(1, second);
  return cx;
}

}  // namespace

TEST_CASE("rank/kernel/image on the reference matrices") {
  auto zero = rank_kernel_image(SparseMatrix(3, 3));
  CHECK(zero.rank == 0);
  CHECK(zero.kernel.size() == 3);

  auto id = rank_kernel_image(SparseMatrix::identity(4));
  CHECK(id.rank == 4);
  CHECK(id.kernel.empty());

  auto m = dense(2, 2, {1, 2, 2, 4});
  auto r = rank_kernel_image(m);
  CHECK(r.rank == 1);
  REQUIRE(r.kernel.size() == 1);
  // kernel proportional to (2, −1)
  const auto& k = r.kernel[0];
  CHECK(k.at(0) == -2 * k.at(1));
  CHECK(m.apply(k).empty());
}

TEST_CASE("property: sparse rank agrees with dense oracle, kernels are kernels") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> sz(1, 9);
    auto m = random_matrix(rng, sz(rng), sz(rng), trial % 2 ? 0.3 : 0.7);
    auto r = rank_kernel_image(m);
    CHECK(r.rank == dense_rank(m));
    CHECK(r.rank + static_cast<int>(r.kernel.size()) == m.cols());
    for (const auto& k : r.kernel) CHECK(m.apply(k).empty());
    SparseMatrix kmat(m.cols(), static_cast<int>(r.kernel.size()));
    for (int i = 0; i < kmat.cols(); ++i) kmat.set_column(i, r.kernel[i]);
    CHECK(rank(kmat) == kmat.cols());
  }
}

TEST_CASE("product, transpose and triplets are consistent") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_matrix(rng, 4, 5, 0.5), b = random_matrix(rng, 5, 3, 0.5);
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    SparseMatrix rebuilt(a.rows(), a.cols());
    for (const auto& t : a.triplets()) rebuilt.add(t.row, t.col, t.value);
    CHECK(rebuilt == a);
  }
  CHECK_THROWS(SparseMatrix(2, 3) * SparseMatrix(2, 3));
}

TEST_CASE("two-term complex with d = 1 is acyclic") {
  FiniteChainComplex c(0, {1, 1});
  c.set_d(0, SparseMatrix::identity(1));
  c.check();
  CHECK(homology(c, 0).dimension == 0);
  CHECK(homology(c, 1).dimension == 0);
}

TEST_CASE("d∘d ≠ 0 is rejected with the degree") {
  FiniteChainComplex c(0, {1, 1, 1});
  c.set_d(0, SparseMatrix::identity(1));
  c.set_d(1, SparseMatrix::identity(1));
  auto f = c.d_squared_failure();
  REQUIRE(f.has_value());
  CHECK(f->degree == 0);
  CHECK_THROWS_AS(c.check(), InvariantError);
}

TEST_CASE("property: homology dims, Euler characteristic and class coordinates") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = random_complex(rng);
    c.check();
    auto dims = homology_dims(c);
    int chi = 0;
    for (int k = c.lo(); k <= c.hi(); ++k) {
      auto h = homology(c, k);
      CHECK(h.dimension == dims[k]);
      chi += (k % 2 ? -1 : 1) * h.dimension;
      for (int r = 0; r < h.dimension; ++r) {
        CHECK(h.is_cycle(h.representatives[r]));
        auto coords = h.class_coordinates(h.representatives[r]);
        for (int s = 0; s < h.dimension; ++s) CHECK(coords[s] == (r == s ? 1 : 0));
        CHECK(same_class(h, h.representatives[r], h.representatives[r]));
        CHECK_FALSE(same_class(h, h.representatives[r], SparseVector{}));
      }
      // adding a boundary keeps the class
      if (h.dimension > 0 && c.dim(k - 1) > 0) {
        SparseVector z = h.representatives[0];
        axpy(z, 3, c.d(k - 1).apply(SparseVector{{0, Rational(1)}}));
        CHECK(same_class(h, z, h.representatives[0]));
      }
    }
    CHECK(chi == c.euler_characteristic());
  }
}

TEST_CASE("chain maps: identity passes, sign flip is caught") {
  std::mt19937 rng(3);
  auto c = random_complex(rng);
  std::vector<SparseMatrix> id;
  for (int k = c.lo(); k <= c.hi(); ++k) id.push_back(SparseMatrix::identity(c.dim(k)));
  CHECK(is_chain_map(id, c, c, 0).ok);
  // negating one component breaks commutation wherever d is nonzero
  bool d_nonzero = !c.d(0).is_zero() || !c.d(1).is_zero();
  if (d_nonzero) {
    auto flipped = id;
    flipped[1] *= Rational(-1);
    auto r = is_chain_map(flipped, c, c, 0);
    CHECK_FALSE(r.ok);
    CHECK(r.column >= 0);
  }
  std::vector<SparseMatrix> wrong_shape{SparseMatrix(1, 1)};
  CHECK_FALSE(is_chain_map(wrong_shape, c, c, 0).ok);
}

TEST_CASE("chain homotopy: φ = 0 gives K = 0") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = random_complex(rng);
    std::vector<SparseMatrix> zero;
    for (int k = c.lo(); k <= c.hi(); ++k) zero.emplace_back(c.dim(k - 1), c.dim(k));
    auto r = find_chain_homotopy(c, zero);
    CHECK(r.feasible);
    for (const auto& k : r.k) CHECK(k.is_zero());
  }
}

TEST_CASE("chain homotopy: φ nonzero on homology is infeasible with a witness") {
  // C^0 = C^1 = ℚ, d = 0, φ: C^1 → C^0 the identity.
  FiniteChainComplex c(0, {1, 1});
  std::vector<SparseMatrix> phi{SparseMatrix(0, 1), SparseMatrix::identity(1)};
  auto r = find_chain_homotopy(c, phi);
  CHECK_FALSE(r.feasible);
  CHECK(r.witness_degree == 1);
  CHECK(r.witness_representative == 0);

  // on an acyclic complex any φ of the form d K0 − K0 d is feasible
  FiniteChainComplex acyclic(0, {1, 2, 1});
  acyclic.set_d(0, dense(2, 1, {1, 0}));
  acyclic.set_d(1, dense(1, 2, {0, 1}));
  acyclic.check();
  SparseMatrix k0(1, 1);
  k0.add(0, 0, 5);  // C^2 → C^0
  std::vector<SparseMatrix> phi2{SparseMatrix(0, 1), SparseMatrix(1, 2), SparseMatrix(2, 1)};
  phi2[2] = acyclic.d(0) * k0;
  phi2[1] = (k0 * acyclic.d(1)) * Rational(-1);
  auto r2 = find_chain_homotopy(acyclic, phi2);
  CHECK(r2.feasible);
}
