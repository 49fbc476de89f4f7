#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "psdrec/errors.hpp"
#include "psdrec/linalg.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace psdrec;
using namespace psdrec::testing;
using psdrec::testing::random_matrix;
using psdrec::testing::random_orthonormal;
using psdrec::testing::random_sym;

namespace {

SymMatrix<double> sym2(double a, double b, double c) {
  return SymMatrix<double>(Matrix<double>(2, 2, {a, b, b, c}));
}

SymMatrix<double> diag(std::vector<double> d) {
  Matrix<double> m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return SymMatrix<double>(m);
}

template <Scalar T>
double orthonormality_error(const Matrix<T>& v) {
  const Matrix<T> g = matmul_ah_b(v, v);
  return max_abs_diff(g, Matrix<T>::identity(v.cols()));
}

}  // namespace

TEST(SymMatrix, ConstructionSymmetrizes) {
  const SymMatrix<double> s(Matrix<double>(2, 2, {1.0, 2.0, 4.0, 3.0}));
  EXPECT_DOUBLE_EQ(s(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(s(1, 0), 3.0);

  const SymMatrix<cdouble> h(Matrix<cdouble>(2, 2, {{1.0, 5.0}, {2.0, 1.0}, {0.0, 1.0}, {3.0, -2.0}}));
  EXPECT_EQ(h(0, 0).imag(), 0.0);
  EXPECT_EQ(h(1, 1).imag(), 0.0);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(LowRankFactor, RejectsBadRank) {
  EXPECT_THROW(LowRankFactor<double>(3, 0), ContractViolation);
  EXPECT_THROW(LowRankFactor<double>(3, 4), ContractViolation);
}

TEST(EigSym, DiagonalSortedWithBasisVectors) {
  const auto d = eig_sym(diag({3, 1, 2}));
  EXPECT_EQ(d.eigenvalues, (std::vector<double>{3, 2, 1}));
  EXPECT_DOUBLE_EQ(d.eigenvectors(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(d.eigenvectors(2, 1), 1.0);
  EXPECT_DOUBLE_EQ(d.eigenvectors(1, 2), 1.0);
}

TEST(EigSym, SwapMatrix) {
  const auto d = eig_sym(sym2(0, 1, 0));
  EXPECT_NEAR(d.eigenvalues[0], 1.0, 1e-15);
  EXPECT_NEAR(d.eigenvalues[1], -1.0, 1e-15);
}

template <typename T>
class EigTyped : public ::testing::Test {};
using ScalarTypes = ::testing::Types<double, cdouble>;
TYPED_TEST_SUITE(EigTyped, ScalarTypes);

TYPED_TEST(EigTyped, ReconstructionAndOrthonormality) {
  using T = TypeParam;
  for (std::size_t n : {1u, 2u, 5u, 12u, 40u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto m = random_sym<T>(n, 100 * n + seed);
      const auto d = eig_sym(m);
      const auto back = reconstruct(d);
      EXPECT_LE((back - m).frobenius_norm(), 1e-9 * m.frobenius_norm()) << "n=" << n;
      EXPECT_LE(orthonormality_error(d.eigenvectors), 1e-10);
      EXPECT_TRUE(std::is_sorted(d.eigenvalues.rbegin(), d.eigenvalues.rend()));
    }
  }
}

TYPED_TEST(EigTyped, SignConventionFirstComponentRealPositive) {
  using T = TypeParam;
  const auto d = eig_sym(random_sym<T>(6, 77));
  for (std::size_t j = 0; j < 6; ++j) {
    for (std::size_t i = 0; i < 6; ++i) {
      const T v = d.eigenvectors(i, j);
      if (std::abs(v) > 1e-12) {
        EXPECT_GT(real_part(v), 0.0);
        if constexpr (is_complex_v<T>) {
          EXPECT_EQ(v.imag(), 0.0);
        }
        break;
      }
    }
  }
}

TYPED_TEST(EigTyped, Deterministic) {
  using T = TypeParam;
  const auto m = random_sym<T>(9, 3);
  const auto a = eig_sym(m);
  const auto b = eig_sym(m);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors.data().size(), b.eigenvectors.data().size());
  EXPECT_TRUE(std::equal(a.eigenvectors.data().begin(), a.eigenvectors.data().end(),
                         b.eigenvectors.data().begin()));
}

TYPED_TEST(EigTyped, WarmStartAgreesWithColdStart) {
  using T = TypeParam;
  const auto m = random_sym<T>(10, 21);
  const auto cold = eig_sym(m);
  const auto nearby = m + 1e-3 * random_sym<T>(10, 22);
  const auto warm = eig_sym_from(nearby, cold.eigenvectors);
  const auto ref = eig_sym(nearby);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(warm.eigenvalues[i], ref.eigenvalues[i], 1e-12);
  EXPECT_LE((reconstruct(warm) - nearby).frobenius_norm(), 1e-9 * nearby.frobenius_norm());
}

TEST(EigSym, SweepCapRaisesNumericalFailure) {
  JacobiOptions opts;
  opts.max_sweeps = 1;
  EXPECT_THROW(eig_sym(random_sym<double>(12, 5), opts), NumericalFailure);
}

TEST(ProjectPsd, PsdInputUnchanged) {
  const LowRankFactor<double> u(random_matrix<double>(5, 3, 8));
  const auto x = u.gram();
  EXPECT_LE((project_psd(x) - x).frobenius_norm(), 1e-10 * x.frobenius_norm());
}

TEST(ProjectPsd, ClampsNegativeEigenvalue) {
  const auto p = project_psd(diag({2, -3}));
  EXPECT_NEAR(p(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(p(1, 1), 0.0, 1e-15);
  EXPECT_NEAR(p(0, 1), 0.0, 1e-15);
}

TEST(ProjectPsd, MatchesGridSearchOracle2x2) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto m = random_sym<double>(2, 500 + seed);
    const double dist = (project_psd(m) - m).frobenius_norm();
    const double oracle = grid_psd_distance_2x2(m);
    EXPECT_LE(dist, oracle + 1e-12);
    EXPECT_NEAR(dist, oracle, 1e-3) << "seed " << seed;
  }
}

TEST(ProjectPsd, MatchesPatternSearchOracle3x3) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto m = random_sym<double>(3, 600 + seed);
    const double dist = (project_psd(m) - m).frobenius_norm();
    const double oracle = pattern_search_psd_distance(m);
    EXPECT_LE(dist, oracle + 1e-12);
    EXPECT_NEAR(dist, oracle, 1e-3) << "seed " << seed;
  }
}

TYPED_TEST(EigTyped, ProjectPsdIdempotentAndFeasible) {
  using T = TypeParam;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = random_sym<T>(7, 700 + seed);
    const auto p = project_psd(m);
    EXPECT_LE((project_psd(p) - p).frobenius_norm(), 1e-10 * (1.0 + p.frobenius_norm()));
    EXPECT_GE(min_eigenvalue(p), -1e-10 * m.frobenius_norm());
  }
}

TYPED_TEST(EigTyped, PsdProjectorMatchesProjectPsd) {
  using T = TypeParam;
  PsdProjector<T> proj;
  auto m = random_sym<T>(8, 31);
  for (int step = 0; step < 5; ++step) {
    m = m + 0.01 * random_sym<T>(8, 40 + step);
    EXPECT_LE((proj(m) - project_psd(m)).frobenius_norm(), 1e-10 * m.frobenius_norm());
  }
}

TEST(BestRankR, ExactLowRankRecovered) {
  const LowRankFactor<double> u0(random_matrix<double>(6, 2, 9));
  const auto m = u0.gram();
  const auto u = best_rank_r(m, 2);
  EXPECT_EQ(u.rank(), 2u);
  EXPECT_LE((u.gram() - m).frobenius_norm(), 1e-9 * m.frobenius_norm());
}

TEST(BestRankR, DiagonalTopOne) {
  const auto u = best_rank_r(diag({5, 3, 1}), 1);
  const auto g = u.gram();
  EXPECT_NEAR(g(0, 0), 5.0, 1e-14);
  EXPECT_NEAR(g(1, 1), 0.0, 1e-14);
  EXPECT_NEAR(g(2, 2), 0.0, 1e-14);
}

TYPED_TEST(EigTyped, BestRankRMatchesClampedTruncation) {
  using T = TypeParam;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = random_sym<T>(6, 800 + seed);
    const auto d = eig_sym(m);
    ASSERT_LT(d.eigenvalues.back(), 0.0);
    Matrix<T> oracle(6, 6);
    for (std::size_t k = 0; k < 2; ++k) {
      const double lam = std::max(d.eigenvalues[k], 0.0);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
          oracle(i, j) += lam * d.eigenvectors(i, k) * conj(d.eigenvectors(j, k));
    }
    const auto u = best_rank_r(m, 2);
    EXPECT_EQ(u.rank(), 2u);
    EXPECT_LE(max_abs_diff(u.gram().matrix(), oracle), 1e-10 * m.frobenius_norm());
    // columns span orthogonal directions
    const Matrix<T> g = matmul_ah_b(u.matrix(), u.matrix());
    EXPECT_LE(std::abs(g(0, 1)), 1e-9 * (1.0 + std::abs(g(0, 0))));
  }
}

TEST(BestRankR, RejectsBadRank) {
  EXPECT_THROW(best_rank_r(diag({1, 2}), 0), ContractViolation);
  EXPECT_THROW(best_rank_r(diag({1, 2}), 3), ContractViolation);
}

TEST(ProjectToeplitz, AveragesDiagonals) {
  const auto t = project_toeplitz(diag({1, 3}));
  EXPECT_DOUBLE_EQ(t(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(t(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(t(0, 1), 0.0);
}

TEST(ProjectToeplitz, ToeplitzInputUnchanged) {
  const SymMatrix<double> t(Matrix<double>(3, 3, {4, 1, -2, 1, 4, 1, -2, 1, 4}));
  EXPECT_LE((project_toeplitz(t) - t).frobenius_norm(), 1e-15);
}

TEST(ProjectToeplitz, MatchesNormalEquationsOracle) {
  for (std::size_t n : {3u, 5u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto m = random_sym<double>(n, 900 + seed);
      const Matrix<double> oracle = normal_equations_projection(m.matrix(), real_toeplitz_basis(n));
      EXPECT_LE(max_abs_diff(project_toeplitz(m).matrix(), oracle), 1e-9);
    }
  }
}

TYPED_TEST(EigTyped, ProjectToeplitzIdempotentConstantDiagonals) {
  using T = TypeParam;
  const auto m = random_sym<T>(6, 41);
  const auto t = project_toeplitz(m);
  EXPECT_LE((project_toeplitz(t) - t).frobenius_norm(), 1e-12);
  for (std::size_t d = 0; d < 6; ++d)
    for (std::size_t i = 0; i + d < 6; ++i) EXPECT_LE(std::abs(t(i, i + d) - t(0, d)), 1e-12);
  // the residual is orthogonal to the Toeplitz subspace
  EXPECT_NEAR(inner(t.matrix(), (m - t).matrix()), 0.0, 1e-12 * m.frobenius_norm() * m.frobenius_norm());
}

TEST(RelError, Basics) {
  const auto b = random_sym<double>(4, 1);
  EXPECT_EQ(rel_error(b, b), 0.0);
  EXPECT_NEAR(rel_error(2.0 * b, b), 1.0, 1e-15);
  EXPECT_THROW(rel_error(b, SymMatrix<double>(4)), ContractViolation);
}

TYPED_TEST(EigTyped, RelErrorRotationInvariant) {
  using T = TypeParam;
  const LowRankFactor<T> u0(random_matrix<T>(10, 3, 2));
  const LowRankFactor<T> rotated(matmul(u0.matrix(), random_orthonormal<T>(3, 3)));
  EXPECT_LE(rel_error(rotated, u0), 1e-10);
  EXPECT_LE(rel_error(u0.gram(), rotated), 1e-10);
}

TYPED_TEST(EigTyped, FactoredRelErrorMatchesMaterialized) {
  using T = TypeParam;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LowRankFactor<T> a(random_matrix<T>(8, 2, 10 + seed));
    const LowRankFactor<T> b(random_matrix<T>(8, 3, 20 + seed));
    const double full = rel_error(a.gram(), b.gram());
    EXPECT_NEAR(rel_error(a, b), full, 1e-12 * (1.0 + full));
    EXPECT_NEAR(rel_error(a.gram(), b), full, 1e-12 * (1.0 + full));
    EXPECT_NEAR(frobenius_distance(a, b), (a.gram() - b.gram()).frobenius_norm(),
                1e-10 * b.gram().frobenius_norm());
  }
}

TEST(RelError, FactoredAvoidsCancellation) {
  // Û = U₀ + δe₁e₁ᵀ: ‖ÛÛᵀ − U₀U₀ᵀ‖_F = δ·√(2‖u‖² + 2u₁²) to first order.
  const LowRankFactor<double> u0(random_matrix<double>(6, 1, 3));
  const double delta = 1e-12;
  Matrix<double> shifted = u0.matrix();
  shifted(0, 0) += delta;
  const double u1 = u0.matrix()(0, 0);
  const double expected = delta * std::sqrt(2.0 * u0.frobenius_norm() * u0.frobenius_norm() + 2.0 * u1 * u1);
  const double err = frobenius_distance(LowRankFactor<double>(shifted), u0);
  EXPECT_NEAR(err, expected, 1e-3 * expected);
}

TYPED_TEST(EigTyped, HouseholderRPreservesGram) {
  using T = TypeParam;
  const Matrix<T> a = random_matrix<T>(9, 4, 4);
  const Matrix<T> r = householder_r(a);
  EXPECT_LE(max_abs_diff(matmul_ah_b(r, r), matmul_ah_b(a, a)), 1e-10 * a.frobenius_norm_sq());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < std::min(i, r.cols()); ++j) EXPECT_EQ(r(i, j), T{});
}
