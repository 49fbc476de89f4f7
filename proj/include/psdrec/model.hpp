#pragma once

// Seeded generators for sensing ensembles, ground truths and the corruption
// model z = A(X₀) + β + w.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "psdrec/measurement.hpp"

namespace psdrec {

enum class TruthKind { GaussianFactor, ToeplitzVandermonde };

std::string_view to_string(TruthKind kind);
TruthKind truth_kind_from_string(std::string_view s);

/// X₀ = F Fᴴ. For the Gaussian kind F = U₀ with i.i.d. N(0,1) entries; for the
/// Toeplitz kind F = V·diag(σ) with V the Vandermonde matrix of `frequencies`.
template <Scalar T>
struct GroundTruth {
  TruthKind kind = TruthKind::GaussianFactor;
  LowRankFactor<T> factor;
  std::vector<double> frequencies;  // toeplitz kind only
  std::vector<double> powers;       // σ_i², toeplitz kind only
  std::uint64_t seed = 0;

  SymMatrix<T> matrix() const { return factor.gram(); }
};

enum class OutlierModel { Rademacher, AdditiveGaussian, UniformAmplitude };
enum class NoiseModel { None, UniformEntrywise };

std::string_view to_string(OutlierModel model);
OutlierModel outlier_model_from_string(std::string_view s);

struct CorruptionSpec {
  double outlier_fraction = 0.0;
  OutlierModel outlier_model = OutlierModel::AdditiveGaussian;
  double amplitude = 1.0;  // rademacher: |β_i|; additive-gaussian: σ
  double lo = 0.0;         // uniform-amplitude range, random sign
  double hi = 10.0;
  /// Outlier entries replace the clean value instead of adding to it; β still
  /// records z − clean_z so the additive identity holds.
  bool replace = false;
  NoiseModel noise_model = NoiseModel::None;
  double noise_half_width = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
  std::size_t support_size(std::size_t m) const;
};

struct SparseVector {
  std::vector<std::size_t> support;  // ascending
  std::vector<double> values;

  std::vector<double> dense(std::size_t m) const;
};

struct Corruption {
  std::vector<double> z;
  SparseVector beta;
  std::vector<double> w;
  double w_l1 = 0.0;  // empirical ε
};

struct InstanceSeeds {
  std::uint64_t ensemble = 0;
  std::uint64_t truth = 0;
  std::uint64_t corruption = 0;

  /// Three independent stream keys from one user-facing seed.
  static InstanceSeeds from_master(std::uint64_t seed);
};

template <Scalar T>
struct Instance {
  SensingEnsemble<T> ensemble;
  GroundTruth<T> truth;
  std::size_t r = 0;
  CorruptionSpec corruption;
  InstanceSeeds seeds;
  std::vector<double> clean_z;
  std::vector<double> z;
  SparseVector beta;
  std::vector<double> w;
  double w_l1 = 0.0;
};

template <Scalar T>
SensingEnsemble<T> gen_ensemble(std::size_t n, std::size_t m, std::uint64_t seed);

template <Scalar T>
GroundTruth<T> gen_ground_truth(std::size_t n, std::size_t r, TruthKind kind,
                                std::uint64_t seed);

Corruption corrupt(std::span<const double> clean_z, const CorruptionSpec& spec);

/// `corruption.seed` is overwritten by `seeds.corruption`.
template <Scalar T>
Instance<T> make_instance(std::size_t n, std::size_t m, std::size_t r, TruthKind kind,
                          CorruptionSpec corruption, const InstanceSeeds& seeds);

}  // namespace psdrec
