#include "psdrec/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "psdrec/rng.hpp"

namespace psdrec {

std::string_view to_string(TruthKind kind) {
  switch (kind) {
    case TruthKind::GaussianFactor: return "gaussian-factor";
    case TruthKind::ToeplitzVandermonde: return "toeplitz-vandermonde";
  }
  return "?";
}

TruthKind truth_kind_from_string(std::string_view s) {
  if (s == "gaussian-factor" || s == "gaussian") return TruthKind::GaussianFactor;
  if (s == "toeplitz-vandermonde" || s == "toeplitz") return TruthKind::ToeplitzVandermonde;
  throw ContractViolation("unknown truth kind '" + std::string(s) + "'");
}

std::string_view to_string(OutlierModel model) {
  switch (model) {
    case OutlierModel::Rademacher: return "rademacher";
    case OutlierModel::AdditiveGaussian: return "gaussian";
    case OutlierModel::UniformAmplitude: return "uniform";
  }
  return "?";
}

OutlierModel outlier_model_from_string(std::string_view s) {
  if (s == "rademacher") return OutlierModel::Rademacher;
  if (s == "gaussian") return OutlierModel::AdditiveGaussian;
  if (s == "uniform") return OutlierModel::UniformAmplitude;
  throw ContractViolation("unknown outlier model '" + std::string(s) +
                          "' (expected rademacher, gaussian or uniform)");
}

void CorruptionSpec::validate() const {
  if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0)) {
    throw ContractViolation("corruption: outlier fraction must lie in [0, 1)");
  }
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw ContractViolation("corruption: amplitude must be finite and non-negative");
  }
  if (!(lo >= 0.0 && lo <= hi) || !std::isfinite(hi)) {
    throw ContractViolation("corruption: uniform range must satisfy 0 <= lo <= hi");
  }
  if (!(noise_half_width >= 0.0) || !std::isfinite(noise_half_width)) {
    throw ContractViolation("corruption: noise half-width must be finite and non-negative");
  }
}

std::size_t CorruptionSpec::support_size(std::size_t m) const {
  return static_cast<std::size_t>(std::llround(outlier_fraction * static_cast<double>(m)));
}

std::vector<double> SparseVector::dense(std::size_t m) const {
  std::vector<double> out(m, 0.0);
  for (std::size_t k = 0; k < support.size(); ++k) out.at(support[k]) = values[k];
  return out;
}

InstanceSeeds InstanceSeeds::from_master(std::uint64_t seed) {
  return {derive_seed(seed, {0x656E73ULL}), derive_seed(seed, {0x747275ULL}),
          derive_seed(seed, {0x636F72ULL})};
}

template <Scalar T>
SensingEnsemble<T> gen_ensemble(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ContractViolation("gen_ensemble: n and m must be positive");
  CounterRng rng(seed);
  SensingEnsemble<T> ens{n, m, Matrix<T>(m, n), seed};
  for (T& v : ens.vectors.data()) {
    if constexpr (is_complex_v<T>) {
      const double re = rng.normal();
      const double im = rng.normal();
      v = T{re, im};
    } else {
      v = rng.normal();
    }
  }
  return ens;
}

template <Scalar T>
GroundTruth<T> gen_ground_truth(std::size_t n, std::size_t r, TruthKind kind,
                                std::uint64_t seed) {
  if (r < 1 || r > n) throw ContractViolation("gen_ground_truth: rank must satisfy 1 <= r <= n");
  CounterRng rng(seed);
  GroundTruth<T> truth{kind, LowRankFactor<T>(n, r), {}, {}, seed};
  Matrix<T>& f = truth.factor.matrix();

  if (kind == TruthKind::GaussianFactor) {
    for (T& v : f.data()) {
      if constexpr (is_complex_v<T>) {
        const double re = rng.normal();
        const double im = rng.normal();
        v = T{re, im};
      } else {
        v = rng.normal();
      }
    }
    return truth;
  }

  if constexpr (!is_complex_v<T>) {
    throw ContractViolation("gen_ground_truth: the Toeplitz kind needs complex scalars");
  } else {
    truth.frequencies.resize(r);
    truth.powers.resize(r);
    for (auto& fi : truth.frequencies) fi = rng.uniform(0.0, 1.0);
    for (auto& pi : truth.powers) pi = rng.uniform(0.0, 1.0);
    for (std::size_t c = 0; c < r; ++c) {
      const double sigma = std::sqrt(truth.powers[c]);
      for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) * truth.frequencies[c];
        f(k, c) = std::polar(sigma, angle);
      }
    }
    return truth;
  }
}

Corruption corrupt(std::span<const double> clean_z, const CorruptionSpec& spec) {
  spec.validate();
  const std::size_t m = clean_z.size();
  const std::size_t k = spec.support_size(m);
  if (k > m) throw ContractViolation("corruption: support larger than m");

  CounterRng support_rng(derive_seed(spec.seed, {1}));
  CounterRng value_rng(derive_seed(spec.seed, {2}));
  CounterRng noise_rng(derive_seed(spec.seed, {3}));

  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t j = 0; j < k; ++j) {
    std::swap(idx[j], idx[j + support_rng.below(m - j)]);
  }
  Corruption out;
  out.beta.support.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.beta.support.begin(), out.beta.support.end());

  out.beta.values.reserve(k);
  for (std::size_t i : out.beta.support) {
    double v = 0.0;
    switch (spec.outlier_model) {
      case OutlierModel::Rademacher:
        v = value_rng.rademacher() * spec.amplitude;
        break;
      case OutlierModel::AdditiveGaussian:
        v = spec.amplitude * value_rng.normal();
        break;
      case OutlierModel::UniformAmplitude: {
        const double sign = value_rng.rademacher();
        v = sign * value_rng.uniform(spec.lo, spec.hi);
        break;
      }
    }
    if (spec.replace) v -= clean_z[i];
    out.beta.values.push_back(v);
  }

  out.w.assign(m, 0.0);
  if (spec.noise_model == NoiseModel::UniformEntrywise) {
    for (auto& wi : out.w) wi = noise_rng.uniform(-spec.noise_half_width, spec.noise_half_width);
  }
  for (double wi : out.w) out.w_l1 += std::abs(wi);

  const std::vector<double> beta = out.beta.dense(m);
  out.z.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.z[i] = (clean_z[i] + beta[i]) + out.w[i];
  return out;
}

template <Scalar T>
Instance<T> make_instance(std::size_t n, std::size_t m, std::size_t r, TruthKind kind,
                          CorruptionSpec corruption, const InstanceSeeds& seeds) {
  if (r < 1 || r > n) throw ContractViolation("make_instance: rank must satisfy 1 <= r <= n");
  corruption.seed = seeds.corruption;
  Instance<T> inst;
  inst.ensemble = gen_ensemble<T>(n, m, seeds.ensemble);
  inst.truth = gen_ground_truth<T>(n, r, kind, seeds.truth);
  inst.r = r;
  inst.corruption = corruption;
  inst.seeds = seeds;
  inst.clean_z = apply_measurement_factored(inst.ensemble, inst.truth.factor);
  Corruption c = corrupt(inst.clean_z, corruption);
  inst.z = std::move(c.z);
  inst.beta = std::move(c.beta);
  inst.w = std::move(c.w);
  inst.w_l1 = c.w_l1;
  return inst;
}

template SensingEnsemble<double> gen_ensemble(std::size_t, std::size_t, std::uint64_t);
template SensingEnsemble<cdouble> gen_ensemble(std::size_t, std::size_t, std::uint64_t);
template GroundTruth<double> gen_ground_truth(std::size_t, std::size_t, TruthKind, std::uint64_t);
template GroundTruth<cdouble> gen_ground_truth(std::size_t, std::size_t, TruthKind, std::uint64_t);
template Instance<double> make_instance(std::size_t, std::size_t, std::size_t, TruthKind,
                                        CorruptionSpec, const InstanceSeeds&);
template Instance<cdouble> make_instance(std::size_t, std::size_t, std::size_t, TruthKind,
                                         CorruptionSpec, const InstanceSeeds&);

}  // namespace psdrec
