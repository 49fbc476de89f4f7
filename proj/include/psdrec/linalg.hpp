#pragma once

// Dense symmetric / Hermitian linear algebra and the projections the solvers
// compose: PSD cone, best rank-r PSD factor, Hermitian Toeplitz subspace.

#include <cstddef>
#include <optional>
#include <vector>

#include "psdrec/matrix.hpp"

namespace psdrec {

/// Symmetric (real) or Hermitian (complex) matrix. Construction averages the
/// input with its conjugate transpose, so the invariant holds by construction.
template <Scalar T>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : m_(n, n) {}
  explicit SymMatrix(Matrix<T> m);

  static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix<T>::identity(n)); }

  std::size_t dim() const noexcept { return m_.rows(); }
  static constexpr bool is_complex() noexcept { return is_complex_v<T>; }

  const Matrix<T>& matrix() const noexcept { return m_; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }

  double frobenius_norm() const noexcept { return m_.frobenius_norm(); }
  double trace() const noexcept;

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
    return SymMatrix(Unchecked{}, a.m_ + b.m_);
  }
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
    return SymMatrix(Unchecked{}, a.m_ - b.m_);
  }
  friend SymMatrix operator*(double s, const SymMatrix& a) {
    return SymMatrix(Unchecked{}, s * a.m_);
  }

 private:
  struct Unchecked {};
  SymMatrix(Unchecked, Matrix<T> m) : m_(std::move(m)) {}

  Matrix<T> m_;
};

/// n×r factor U standing for the PSD matrix U Uᴴ.
template <Scalar T>
class LowRankFactor {
 public:
  LowRankFactor() = default;
  LowRankFactor(std::size_t n, std::size_t r);
  explicit LowRankFactor(Matrix<T> u);

  std::size_t dim() const noexcept { return u_.rows(); }
  std::size_t rank() const noexcept { return u_.cols(); }

  const Matrix<T>& matrix() const noexcept { return u_; }
  Matrix<T>& matrix() noexcept { return u_; }

  double frobenius_norm() const noexcept { return u_.frobenius_norm(); }

  /// U Uᴴ materialized; for tests and small-n reporting only.
  SymMatrix<T> gram() const;

 private:
  Matrix<T> u_;
};

template <Scalar T>
struct SpectralDecomp {
  std::vector<double> eigenvalues;  // descending
  Matrix<T> eigenvectors;           // columns
};

struct JacobiOptions {
  std::size_t max_sweeps = 100;
  double tolerance = 1e-15;  // relative off-diagonal Frobenius mass
};

template <Scalar T>
SpectralDecomp<T> eig_sym(const SymMatrix<T>& m, const JacobiOptions& opts = {});

/// Jacobi started from an orthonormal basis `guess` (for instance the
/// eigenvectors of a nearby matrix). Same output contract as eig_sym.
template <Scalar T>
SpectralDecomp<T> eig_sym_from(const SymMatrix<T>& m, const Matrix<T>& guess,
                               const JacobiOptions& opts = {});

/// V·diag(λ)·Vᴴ
template <Scalar T>
SymMatrix<T> reconstruct(const SpectralDecomp<T>& d);

template <Scalar T>
SymMatrix<T> project_psd(const SymMatrix<T>& m);

/// Repeated PSD projection of slowly varying inputs, warm-starting each
/// eigendecomposition from the previous eigenbasis.
template <Scalar T>
class PsdProjector {
 public:
  SymMatrix<T> operator()(const SymMatrix<T>& m);
  double last_min_eigenvalue() const noexcept { return last_min_eig_; }

 private:
  std::optional<Matrix<T>> basis_;
  double last_min_eig_ = 0.0;
};

template <Scalar T>
LowRankFactor<T> best_rank_r(const SymMatrix<T>& m, std::size_t r);

/// Orthogonal projection onto Hermitian Toeplitz matrices: each diagonal is
/// replaced by its mean.
template <Scalar T>
SymMatrix<T> project_toeplitz(const SymMatrix<T>& m);

template <Scalar T>
double min_eigenvalue(const SymMatrix<T>& m);

/// ‖A − B‖_F / ‖B‖_F
template <Scalar T>
double rel_error(const SymMatrix<T>& a, const SymMatrix<T>& b);
/// ‖ÂÂᴴ − BBᴴ‖_F / ‖BBᴴ‖_F without forming n×n matrices; ranks may differ.
template <Scalar T>
double rel_error(const LowRankFactor<T>& a, const LowRankFactor<T>& b);
template <Scalar T>
double rel_error(const SymMatrix<T>& a, const LowRankFactor<T>& b);

/// ‖ÂÂᴴ − BBᴴ‖_F, computed through a thin QR of [Â B].
template <Scalar T>
double frobenius_distance(const LowRankFactor<T>& a, const LowRankFactor<T>& b);
template <Scalar T>
double frobenius_distance(const SymMatrix<T>& a, const LowRankFactor<T>& b);

/// R factor of a Householder QR of `a` (rows ≥ cols); R is cols×cols.
template <Scalar T>
Matrix<T> householder_r(Matrix<T> a);

}  // namespace psdrec
