#pragma once

// Recovery algorithms:
//  - spectral initialization (top-r eigenpairs of A*(z)/m),
//  - ℓ1 subgradient descent on the factor U (outlier-robust, non-convex),
//  - Wirtinger-Flow style ℓ2 gradient descent on U (baseline),
//  - projected subgradient on min_{X ⪰ 0} ‖z − A(X)‖₁ (convex),
//  - the same with an additional Hermitian Toeplitz constraint.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psdrec/model.hpp"

namespace psdrec {

enum class SolverId { Nonconvex, WirtingerFlow, PhaseLift, ToeplitzPhaseLift };

std::string_view to_string(SolverId id);
/// Throws ContractViolation listing the valid ids.
SolverId solver_from_string(std::string_view s);
inline constexpr std::string_view kSolverNames = "nonconvex, wf, phaselift, toeplitz";

struct NonconvexConfig {
  std::size_t rank = 1;
  std::size_t t_max = 30000;
  double step_base = 0.05;
  double step_halving_period = 1000.0;
  double step_floor = 1e-6;
  std::size_t history_every = 100;

  void validate() const;
};

/// μ_t = step_base · max(2^(−t/period), floor)
double step_schedule(const NonconvexConfig& cfg, std::size_t t);

struct WfConfig {
  std::size_t rank = 1;
  std::size_t t_max = 30000;
  double step_scale = 0.1;  // μ = step_scale / ‖U‖_F²
  bool use_truth_norm = true;
  std::size_t history_every = 100;

  void validate() const;
};

enum class StepDecay { InvSqrt, Geometric };

struct ConvexConfig {
  std::size_t t_max = 50000;
  double step_base = 0.0;  // η₀; 0 selects ‖z‖₁ / (m ‖A*(1)/m‖_F)
  /// Geometric: η_t = η₀·max(2^(−t/half_life), step_floor); InvSqrt: η₀/√(t+1).
  StepDecay decay = StepDecay::Geometric;
  double half_life = 1000.0;
  double step_floor = 1e-6;
  bool toeplitz = false;
  std::size_t dykstra_iters = 50;
  std::size_t history_every = 100;

  void validate() const;
};

double convex_step(const ConvexConfig& cfg, double eta0, std::size_t t);

template <Scalar T>
struct RecoveryResult {
  SolverId solver = SolverId::Nonconvex;
  std::variant<LowRankFactor<T>, SymMatrix<T>> estimate;
  /// Objective at iterates 0, k, 2k, … and at the returned iterate.
  std::vector<double> objective_history;
  /// Convex solvers: best objective seen up to each recorded iterate.
  std::vector<double> best_objective_history;
  std::size_t history_every = 0;
  std::size_t iterations_run = 0;
  std::optional<double> rel_error_vs_truth;
  double wall_time_s = 0.0;
  double step_base = 0.0;
  std::string step_source;  // "config", "auto", "truth" or "initializer"
  double final_objective = 0.0;

  /// ‖X̂ − X₀‖_F² against `truth`.
  double squared_error(const LowRankFactor<T>& truth) const;
};

template <Scalar T>
LowRankFactor<T> spectral_init(const SensingEnsemble<T>& ens, std::span<const double> z,
                               std::size_t r);
template <Scalar T>
LowRankFactor<T> spectral_init(const Instance<T>& inst, std::size_t r) {
  return spectral_init(inst.ensemble, inst.z, r);
}

/// f(U) = (1/2m) Σ |z_i − ‖Uᴴa_i‖²|
template <Scalar T>
double objective_f(const SensingEnsemble<T>& ens, std::span<const double> z,
                   const LowRankFactor<T>& u);

/// g(U) = (1/4m) Σ (z_i − ‖Uᴴa_i‖²)²
template <Scalar T>
double objective_wf(const SensingEnsemble<T>& ens, std::span<const double> z,
                    const LowRankFactor<T>& u);

/// ‖z − A(X)‖₁
template <Scalar T>
double objective_convex(const SensingEnsemble<T>& ens, std::span<const double> z,
                        const SymMatrix<T>& x);

/// −(1/m) Σ sgn(z_i − ‖Uᴴa_i‖²) a_i a_iᴴ U, with sgn(0) = 0.
template <Scalar T>
Matrix<T> subgrad_f(const SensingEnsemble<T>& ens, std::span<const double> z,
                    const LowRankFactor<T>& u);

/// Subgradient descent from the spectral initializer.
template <Scalar T>
RecoveryResult<T> solve_nonconvex(const Instance<T>& inst, const NonconvexConfig& cfg);
template <Scalar T>
RecoveryResult<T> solve_nonconvex_from(const Instance<T>& inst, const NonconvexConfig& cfg,
                                       LowRankFactor<T> start);

template <Scalar T>
RecoveryResult<T> solve_wf(const Instance<T>& inst, const WfConfig& cfg);

template <Scalar T>
RecoveryResult<T> solve_robust_phaselift(const Instance<T>& inst, const ConvexConfig& cfg);
template <Scalar T>
RecoveryResult<T> solve_robust_phaselift_from(const Instance<T>& inst, const ConvexConfig& cfg,
                                              SymMatrix<T> start);

/// Requires complex scalars; forces cfg.toeplitz.
RecoveryResult<cdouble> solve_toeplitz_phaselift(const Instance<cdouble>& inst,
                                                 ConvexConfig cfg);

/// Dykstra's alternating projections onto {PSD} ∩ {Toeplitz}. The result is
/// exactly Toeplitz; PSD up to the remaining Dykstra residual.
template <Scalar T>
SymMatrix<T> project_psd_toeplitz(const SymMatrix<T>& m, std::size_t iters,
                                  PsdProjector<T>* projector = nullptr);

}  // namespace psdrec
