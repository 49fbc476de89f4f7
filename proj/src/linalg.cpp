#include "psdrec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace psdrec {

template <Scalar T>
SymMatrix<T>::SymMatrix(Matrix<T> m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ContractViolation("SymMatrix: input is not square");
  const std::size_t n = m_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = T{real_part(m_(i, i))};
    for (std::size_t j = i + 1; j < n; ++j) {
      const T avg = 0.5 * (m_(i, j) + conj(m_(j, i)));
      m_(i, j) = avg;
      m_(j, i) = conj(avg);
    }
  }
}

template <Scalar T>
double SymMatrix<T>::trace() const noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) acc += real_part(m_(i, i));
  return acc;
}

template <Scalar T>
LowRankFactor<T>::LowRankFactor(std::size_t n, std::size_t r) : u_(n, r) {
  if (r < 1 || r > n) throw ContractViolation("LowRankFactor: rank must satisfy 1 <= r <= n");
}

template <Scalar T>
LowRankFactor<T>::LowRankFactor(Matrix<T> u) : u_(std::move(u)) {
  if (u_.cols() < 1 || u_.cols() > u_.rows()) {
    throw ContractViolation("LowRankFactor: rank must satisfy 1 <= r <= n");
  }
}

template <Scalar T>
SymMatrix<T> LowRankFactor<T>::gram() const {
  const std::size_t n = dim();
  Matrix<T> g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto ui = u_.row(i);
    for (std::size_t j = i; j < n; ++j) {
      auto uj = u_.row(j);
      T acc{};
      for (std::size_t c = 0; c < rank(); ++c) acc += ui[c] * conj(uj[c]);
      g(i, j) = acc;
      g(j, i) = conj(acc);
    }
  }
  return SymMatrix<T>(std::move(g));
}

namespace {

// Cyclic Jacobi on the full Hermitian work matrix `a`, accumulating rotations
// into the columns of `v`. For complex entries each pivot is first made real
// by a diagonal phase on column/row q, then annihilated by a real rotation.
template <Scalar T>
void jacobi_sweeps(Matrix<T>& a, Matrix<T>& v, const JacobiOptions& opts) {
  const std::size_t n = a.rows();
  const double norm = a.frobenius_norm();
  if (norm == 0.0 || n < 2) return;
  const double abs_floor = std::max(opts.tolerance * 1e-2 * norm,
                                    std::numeric_limits<double>::min());

  for (std::size_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    std::size_t rotations = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::sqrt(abs2(a(p, q)));
        const double app = real_part(a(p, p));
        const double aqq = real_part(a(q, q));
        if (mag <= abs_floor ||
            mag <= opts.tolerance * 0.1 * std::sqrt(std::abs(app * aqq))) {
          a(p, q) = T{};
          a(q, p) = T{};
          continue;
        }
        ++rotations;

        if constexpr (is_complex_v<T>) {
          const T phase = conj(a(p, q)) / mag;
          for (std::size_t k = 0; k < n; ++k) a(k, q) *= phase;
          for (std::size_t k = 0; k < n; ++k) a(q, k) *= conj(phase);
          a(q, q) = T{aqq};
          a(p, q) = T{mag};
          a(q, p) = T{mag};
          for (std::size_t k = 0; k < n; ++k) v(k, q) *= phase;
        }
        const double g = real_part(a(p, q));

        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const T akp = a(k, p);
          const T akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
          a(p, k) = conj(a(k, p));
          a(q, k) = conj(a(k, q));
        }
        a(p, p) = T{app - t * g};
        a(q, q) = T{aqq + t * g};
        a(p, q) = T{};
        a(q, p) = T{};

        for (std::size_t k = 0; k < n; ++k) {
          const T vkp = v(k, p);
          const T vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    if (rotations == 0) return;
  }

  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) off += abs2(a(i, j));
  throw NumericalFailure("eig_sym: Jacobi did not converge in " +
                             std::to_string(opts.max_sweeps) + " sweeps",
                         std::sqrt(off) / norm);
}

template <Scalar T>
SpectralDecomp<T> finish(const Matrix<T>& a, const Matrix<T>& v) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return real_part(a(x, x)) > real_part(a(y, y));
  });

  SpectralDecomp<T> out{std::vector<double>(n), Matrix<T>(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = real_part(a(src, src));
    // first non-negligible coordinate made real-positive
    T phase{1.0};
    std::size_t lead = n;
    double lead_mag = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double mag = std::sqrt(abs2(v(k, src)));
      if (mag > 1e-12) {
        phase = conj(v(k, src)) / mag;
        lead = k;
        lead_mag = mag;
        break;
      }
    }
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, j) = v(k, src) * phase;
    if (lead < n) out.eigenvectors(lead, j) = T{lead_mag};
  }
  return out;
}

}  // namespace

template <Scalar T>
SpectralDecomp<T> eig_sym(const SymMatrix<T>& m, const JacobiOptions& opts) {
  Matrix<T> a = m.matrix();
  Matrix<T> v = Matrix<T>::identity(m.dim());
  jacobi_sweeps(a, v, opts);
  return finish(a, v);
}

template <Scalar T>
SpectralDecomp<T> eig_sym_from(const SymMatrix<T>& m, const Matrix<T>& guess,
                               const JacobiOptions& opts) {
  if (guess.rows() != m.dim() || guess.cols() != m.dim()) {
    throw ContractViolation("eig_sym_from: basis shape mismatch");
  }
  Matrix<T> a = SymMatrix<T>(matmul_ah_b(guess, matmul(m.matrix(), guess))).matrix();
  Matrix<T> v = guess;
  jacobi_sweeps(a, v, opts);
  return finish(a, v);
}

template <Scalar T>
SymMatrix<T> reconstruct(const SpectralDecomp<T>& d) {
  const std::size_t n = d.eigenvectors.rows();
  Matrix<T> out(n, n);
  for (std::size_t c = 0; c < d.eigenvalues.size(); ++c) {
    const double lam = d.eigenvalues[c];
    if (lam == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const T vi = lam * d.eigenvectors(i, c);
      for (std::size_t j = i; j < n; ++j) out(i, j) += vi * conj(d.eigenvectors(j, c));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out(i, j) = conj(out(j, i));
  return SymMatrix<T>(std::move(out));
}

namespace {

template <Scalar T>
SymMatrix<T> clamp_reconstruct(SpectralDecomp<T> d) {
  for (auto& lam : d.eigenvalues) lam = std::max(lam, 0.0);
  return reconstruct(d);
}

}  // namespace

template <Scalar T>
SymMatrix<T> project_psd(const SymMatrix<T>& m) {
  return clamp_reconstruct(eig_sym(m));
}

template <Scalar T>
SymMatrix<T> PsdProjector<T>::operator()(const SymMatrix<T>& m) {
  SpectralDecomp<T> d = (basis_ && basis_->rows() == m.dim()) ? eig_sym_from(m, *basis_)
                                                               : eig_sym(m);
  basis_ = d.eigenvectors;
  last_min_eig_ = d.eigenvalues.empty() ? 0.0 : d.eigenvalues.back();
  return clamp_reconstruct(std::move(d));
}

template <Scalar T>
LowRankFactor<T> best_rank_r(const SymMatrix<T>& m, std::size_t r) {
  const std::size_t n = m.dim();
  if (r < 1 || r > n) throw ContractViolation("best_rank_r: rank must satisfy 1 <= r <= n");
  const SpectralDecomp<T> d = eig_sym(m);
  LowRankFactor<T> u(n, r);
  for (std::size_t c = 0; c < r; ++c) {
    const double scale = std::sqrt(std::max(d.eigenvalues[c], 0.0));
    for (std::size_t i = 0; i < n; ++i) u.matrix()(i, c) = scale * d.eigenvectors(i, c);
  }
  return u;
}

template <Scalar T>
SymMatrix<T> project_toeplitz(const SymMatrix<T>& m) {
  const std::size_t n = m.dim();
  Matrix<T> out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    T mean{};
    for (std::size_t i = 0; i + k < n; ++i) mean += m(i, i + k);
    mean /= static_cast<double>(n - k);
    if (k == 0) mean = T{real_part(mean)};
    for (std::size_t i = 0; i + k < n; ++i) {
      out(i, i + k) = mean;
      out(i + k, i) = conj(mean);
    }
  }
  return SymMatrix<T>(std::move(out));
}

template <Scalar T>
double min_eigenvalue(const SymMatrix<T>& m) {
  return eig_sym(m).eigenvalues.back();
}

template <Scalar T>
Matrix<T> householder_r(Matrix<T> a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t p = std::min(rows, cols);
  std::vector<T> v(rows);
  for (std::size_t k = 0; k < p; ++k) {
    double norm_sq = 0.0;
    for (std::size_t i = k; i < rows; ++i) norm_sq += abs2(a(i, k));
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) continue;
    const double x0_mag = std::sqrt(abs2(a(k, k)));
    const T unit = x0_mag > 0.0 ? a(k, k) / x0_mag : T{1.0};
    const T alpha = -unit * norm;

    for (std::size_t i = k; i < rows; ++i) v[i] = a(i, k);
    v[k] -= alpha;
    double v_norm_sq = 0.0;
    for (std::size_t i = k; i < rows; ++i) v_norm_sq += abs2(v[i]);
    if (v_norm_sq == 0.0) continue;

    for (std::size_t j = k; j < cols; ++j) {
      T dot{};
      for (std::size_t i = k; i < rows; ++i) dot += conj(v[i]) * a(i, j);
      const T f = 2.0 * dot / v_norm_sq;
      for (std::size_t i = k; i < rows; ++i) a(i, j) -= f * v[i];
    }
  }
  Matrix<T> r(p, cols);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < cols; ++j) r(i, j) = a(i, j);
  return r;
}

template <Scalar T>
double frobenius_distance(const LowRankFactor<T>& a, const LowRankFactor<T>& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw ContractViolation("frobenius_distance: dimension mismatch");
  if (a.rank() == b.rank() &&
      std::equal(a.matrix().data().begin(), a.matrix().data().end(), b.matrix().data().begin())) {
    return 0.0;
  }
  const std::size_t ra = a.rank();
  const std::size_t k = ra + b.rank();
  Matrix<T> w(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < ra; ++c) w(i, c) = a.matrix()(i, c);
    for (std::size_t c = 0; c < b.rank(); ++c) w(i, ra + c) = b.matrix()(i, c);
  }
  // W J Wᴴ = Q (R J Rᴴ) Qᴴ with J = diag(I, -I): the difference is formed
  // entrywise in the small k-dimensional space.
  const Matrix<T> r = householder_r(std::move(w));
  const std::size_t p = r.rows();
  double acc = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      T d{};
      for (std::size_t c = 0; c < k; ++c) {
        const T term = r(i, c) * conj(r(j, c));
        if (c < ra) d += term;
        else d -= term;
      }
      acc += abs2(d);
    }
  }
  return std::sqrt(acc);
}

template <Scalar T>
double frobenius_distance(const SymMatrix<T>& a, const LowRankFactor<T>& b) {
  if (a.dim() != b.dim()) throw ContractViolation("frobenius_distance: dimension mismatch");
  return (a - b.gram()).frobenius_norm();
}

template <Scalar T>
double rel_error(const SymMatrix<T>& a, const SymMatrix<T>& b) {
  if (a.dim() != b.dim()) throw ContractViolation("rel_error: dimension mismatch");
  const double den = b.frobenius_norm();
  if (den == 0.0) throw ContractViolation("rel_error: reference matrix is zero");
  return (a - b).frobenius_norm() / den;
}

namespace {

template <Scalar T>
double gram_norm(const LowRankFactor<T>& b) {
  return matmul_ah_b(b.matrix(), b.matrix()).frobenius_norm();
}

}  // namespace

template <Scalar T>
double rel_error(const LowRankFactor<T>& a, const LowRankFactor<T>& b) {
  const double den = gram_norm(b);
  if (den == 0.0) throw ContractViolation("rel_error: reference matrix is zero");
  return frobenius_distance(a, b) / den;
}

template <Scalar T>
double rel_error(const SymMatrix<T>& a, const LowRankFactor<T>& b) {
  const double den = gram_norm(b);
  if (den == 0.0) throw ContractViolation("rel_error: reference matrix is zero");
  return frobenius_distance(a, b) / den;
}

#define PSDREC_INSTANTIATE(T)                                                        \
  template class SymMatrix<T>;                                                       \
  template class LowRankFactor<T>;                                                   \
  template class PsdProjector<T>;                                                    \
  template SpectralDecomp<T> eig_sym(const SymMatrix<T>&, const JacobiOptions&);     \
  template SpectralDecomp<T> eig_sym_from(const SymMatrix<T>&, const Matrix<T>&,     \
                                          const JacobiOptions&);                     \
  template SymMatrix<T> reconstruct(const SpectralDecomp<T>&);                       \
  template SymMatrix<T> project_psd(const SymMatrix<T>&);                            \
  template LowRankFactor<T> best_rank_r(const SymMatrix<T>&, std::size_t);           \
  template SymMatrix<T> project_toeplitz(const SymMatrix<T>&);                       \
  template double min_eigenvalue(const SymMatrix<T>&);                               \
  template Matrix<T> householder_r(Matrix<T>);                                       \
  template double frobenius_distance(const LowRankFactor<T>&, const LowRankFactor<T>&); \
  template double frobenius_distance(const SymMatrix<T>&, const LowRankFactor<T>&);  \
  template double rel_error(const SymMatrix<T>&, const SymMatrix<T>&);               \
  template double rel_error(const LowRankFactor<T>&, const LowRankFactor<T>&);       \
  template double rel_error(const SymMatrix<T>&, const LowRankFactor<T>&);

PSDREC_INSTANTIATE(double)
PSDREC_INSTANTIATE(cdouble)

#undef PSDREC_INSTANTIATE

}  // namespace psdrec
