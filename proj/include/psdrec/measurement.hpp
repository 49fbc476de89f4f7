#pragma once

// The rank-one measurement operator A(X) = {a_iᴴ X a_i} and its adjoint
// A*(μ) = Σ μ_i a_i a_iᴴ.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "psdrec/linalg.hpp"

namespace psdrec {

template <Scalar T>
struct SensingEnsemble {
  std::size_t n = 0;
  std::size_t m = 0;
  Matrix<T> vectors;  // m×n, row i is a_i
  std::uint64_t seed = 0;

  static constexpr bool is_complex() noexcept { return is_complex_v<T>; }
  std::span<const T> vector(std::size_t i) const noexcept { return vectors.row(i); }
  /// max_i ‖a_i‖²
  double max_norm_sq() const noexcept;
};

template <Scalar T>
std::vector<double> apply_measurement(const SensingEnsemble<T>& ens, const SymMatrix<T>& x);

/// z_i = ‖Uᴴ a_i‖², O(mnr).
template <Scalar T>
std::vector<double> apply_measurement_factored(const SensingEnsemble<T>& ens,
                                               const LowRankFactor<T>& u);

template <Scalar T>
SymMatrix<T> adjoint(const SensingEnsemble<T>& ens, std::span<const double> mu);

}  // namespace psdrec
