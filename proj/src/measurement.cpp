#include "psdrec/measurement.hpp"

#include <algorithm>

namespace psdrec {

template <Scalar T>
double SensingEnsemble<T>::max_norm_sq() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (const T& v : vector(i)) acc += abs2(v);
    best = std::max(best, acc);
  }
  return best;
}

template <Scalar T>
std::vector<double> apply_measurement(const SensingEnsemble<T>& ens, const SymMatrix<T>& x) {
  const std::size_t n = ens.n;
  if (x.dim() != n) throw ContractViolation("apply_measurement: dimension mismatch");
  const Matrix<T>& xm = x.matrix();
  std::vector<double> z(ens.m);
  for (std::size_t i = 0; i < ens.m; ++i) {
    auto a = ens.vector(i);
    // aᴴXa = Σ_j X_jj |a_j|² + 2 Re Σ_{j<k} conj(a_j) X_jk a_k
    double diag = 0.0;
    T off{};
    for (std::size_t j = 0; j < n; ++j) {
      auto xrow = xm.row(j);
      diag += real_part(xrow[j]) * abs2(a[j]);
      T inner{};
      for (std::size_t k = j + 1; k < n; ++k) inner += xrow[k] * a[k];
      off += conj(a[j]) * inner;
    }
    z[i] = diag + 2.0 * real_part(off);
  }
  return z;
}

template <Scalar T>
std::vector<double> apply_measurement_factored(const SensingEnsemble<T>& ens,
                                               const LowRankFactor<T>& u) {
  const std::size_t n = ens.n;
  if (u.dim() != n) throw ContractViolation("apply_measurement_factored: dimension mismatch");
  const std::size_t r = u.rank();
  const Matrix<T>& um = u.matrix();
  std::vector<double> z(ens.m);
  std::vector<T> q(r);
  for (std::size_t i = 0; i < ens.m; ++i) {
    auto a = ens.vector(i);
    std::fill(q.begin(), q.end(), T{});
    for (std::size_t j = 0; j < n; ++j) {
      const T aj = conj(a[j]);
      auto urow = um.row(j);
      for (std::size_t c = 0; c < r; ++c) q[c] += aj * urow[c];
    }
    double acc = 0.0;
    for (const T& v : q) acc += abs2(v);
    z[i] = acc;
  }
  return z;
}

template <Scalar T>
SymMatrix<T> adjoint(const SensingEnsemble<T>& ens, std::span<const double> mu) {
  if (mu.size() != ens.m) throw ContractViolation("adjoint: length of mu differs from m");
  const std::size_t n = ens.n;
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < ens.m; ++i) {
    const double w = mu[i];
    if (w == 0.0) continue;
    auto a = ens.vector(i);
    for (std::size_t j = 0; j < n; ++j) {
      const T wa = w * a[j];
      auto orow = out.row(j);
      for (std::size_t k = j; k < n; ++k) orow[k] += wa * conj(a[k]);
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < j; ++k) out(j, k) = conj(out(k, j));
  return SymMatrix<T>(std::move(out));
}

template struct SensingEnsemble<double>;
template struct SensingEnsemble<cdouble>;
template std::vector<double> apply_measurement(const SensingEnsemble<double>&,
                                               const SymMatrix<double>&);
template std::vector<double> apply_measurement(const SensingEnsemble<cdouble>&,
                                               const SymMatrix<cdouble>&);
template std::vector<double> apply_measurement_factored(const SensingEnsemble<double>&,
                                                        const LowRankFactor<double>&);
template std::vector<double> apply_measurement_factored(const SensingEnsemble<cdouble>&,
                                                        const LowRankFactor<cdouble>&);
template SymMatrix<double> adjoint(const SensingEnsemble<double>&, std::span<const double>);
template SymMatrix<cdouble> adjoint(const SensingEnsemble<cdouble>&, std::span<const double>);

}  // namespace psdrec
