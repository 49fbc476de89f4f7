#include "psdrec/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace psdrec {

std::string_view to_string(SolverId id) {
  switch (id) {
    case SolverId::Nonconvex: return "nonconvex";
    case SolverId::WirtingerFlow: return "wf";
    case SolverId::PhaseLift: return "phaselift";
    case SolverId::ToeplitzPhaseLift: return "toeplitz";
  }
  return "?";
}

SolverId solver_from_string(std::string_view s) {
  if (s == "nonconvex") return SolverId::Nonconvex;
  if (s == "wf") return SolverId::WirtingerFlow;
  if (s == "phaselift") return SolverId::PhaseLift;
  if (s == "toeplitz") return SolverId::ToeplitzPhaseLift;
  throw ContractViolation("unknown solver '" + std::string(s) + "' (expected one of: " +
                          std::string(kSolverNames) + ")");
}

void NonconvexConfig::validate() const {
  if (rank < 1) throw ContractViolation("nonconvex: rank must be >= 1");
  if (!(step_base > 0.0) || !(step_halving_period > 0.0) || !(step_floor > 0.0)) {
    throw ContractViolation("nonconvex: step parameters must be positive");
  }
  if (history_every < 1) throw ContractViolation("nonconvex: history_every must be >= 1");
}

void WfConfig::validate() const {
  if (rank < 1) throw ContractViolation("wf: rank must be >= 1");
  if (!(step_scale > 0.0)) throw ContractViolation("wf: step scale must be positive");
  if (history_every < 1) throw ContractViolation("wf: history_every must be >= 1");
}

void ConvexConfig::validate() const {
  if (!(step_base >= 0.0)) throw ContractViolation("convex: step base must be >= 0");
  if (!(half_life > 0.0) || !(step_floor > 0.0)) {
    throw ContractViolation("convex: decay parameters must be positive");
  }
  if (toeplitz && dykstra_iters < 1) throw ContractViolation("convex: dykstra_iters must be >= 1");
  if (history_every < 1) throw ContractViolation("convex: history_every must be >= 1");
}

double step_schedule(const NonconvexConfig& cfg, std::size_t t) {
  const double decay = std::exp2(-static_cast<double>(t) / cfg.step_halving_period);
  return cfg.step_base * std::max(decay, cfg.step_floor);
}

double convex_step(const ConvexConfig& cfg, double eta0, std::size_t t) {
  switch (cfg.decay) {
    case StepDecay::InvSqrt:
      return eta0 / std::sqrt(static_cast<double>(t) + 1.0);
    case StepDecay::Geometric:
      return eta0 * std::max(std::exp2(-static_cast<double>(t) / cfg.half_life), cfg.step_floor);
  }
  return eta0;
}

template <Scalar T>
double RecoveryResult<T>::squared_error(const LowRankFactor<T>& truth) const {
  return std::visit(
      [&](const auto& est) {
        const double d = frobenius_distance(est, truth);
        return d * d;
      },
      estimate);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double sgn(double x) noexcept { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

struct PassStats {
  double l1 = 0.0;
  double l2_sq = 0.0;
};

// One sweep over the measurements at U: residuals ρ_i = z_i − ‖Uᴴa_i‖² and,
// when `accum` is given, accum += Σ weight(ρ_i) a_i (a_iᴴ U). O(mnr).
template <Scalar T, typename Weight>
PassStats factored_pass(const SensingEnsemble<T>& ens, std::span<const double> z,
                        const Matrix<T>& u, Matrix<T>* accum, Weight weight) {
  const std::size_t n = ens.n;
  const std::size_t r = u.cols();
  std::vector<T> q(r);
  PassStats stats;
  for (std::size_t i = 0; i < ens.m; ++i) {
    auto a = ens.vector(i);
    std::fill(q.begin(), q.end(), T{});
    for (std::size_t j = 0; j < n; ++j) {
      const T aj = conj(a[j]);
      auto urow = u.row(j);
      for (std::size_t c = 0; c < r; ++c) q[c] += aj * urow[c];
    }
    double pred = 0.0;
    for (const T& v : q) pred += abs2(v);
    const double res = z[i] - pred;
    stats.l1 += std::abs(res);
    stats.l2_sq += res * res;
    if (accum == nullptr) continue;
    const double c_i = weight(res);
    if (c_i == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const T aj = c_i * a[j];
      auto grow = accum->row(j);
      for (std::size_t c = 0; c < r; ++c) grow[c] += aj * q[c];
    }
  }
  return stats;
}

template <Scalar T>
void check_lengths(const SensingEnsemble<T>& ens, std::span<const double> z, std::size_t n) {
  if (z.size() != ens.m) throw ContractViolation("measurement vector length differs from m");
  if (n != ens.n) throw ContractViolation("dimension mismatch between iterate and ensemble");
}

template <Scalar T>
std::optional<double> truth_error(const Instance<T>& inst, const auto& estimate) {
  if (inst.truth.factor.dim() != inst.ensemble.n) return std::nullopt;
  if (inst.truth.factor.frobenius_norm() == 0.0) return std::nullopt;
  return rel_error(estimate, inst.truth.factor);
}

double divergence_bound(double initial_norm) { return 1e6 * std::max(initial_norm, 1.0); }

}  // namespace

template <Scalar T>
LowRankFactor<T> spectral_init(const SensingEnsemble<T>& ens, std::span<const double> z,
                               std::size_t r) {
  if (r < 1) throw ContractViolation("spectral_init: rank must be >= 1");
  const SymMatrix<T> y = (1.0 / static_cast<double>(ens.m)) * adjoint(ens, z);
  return best_rank_r(y, r);
}

template <Scalar T>
double objective_f(const SensingEnsemble<T>& ens, std::span<const double> z,
                   const LowRankFactor<T>& u) {
  check_lengths(ens, z, u.dim());
  const auto s = factored_pass(ens, z, u.matrix(), static_cast<Matrix<T>*>(nullptr), [](double) { return 0.0; });
  return s.l1 / (2.0 * static_cast<double>(ens.m));
}

template <Scalar T>
double objective_wf(const SensingEnsemble<T>& ens, std::span<const double> z,
                    const LowRankFactor<T>& u) {
  check_lengths(ens, z, u.dim());
  const auto s = factored_pass(ens, z, u.matrix(), static_cast<Matrix<T>*>(nullptr), [](double) { return 0.0; });
  return s.l2_sq / (4.0 * static_cast<double>(ens.m));
}

template <Scalar T>
double objective_convex(const SensingEnsemble<T>& ens, std::span<const double> z,
                        const SymMatrix<T>& x) {
  check_lengths(ens, z, x.dim());
  const std::vector<double> ax = apply_measurement(ens, x);
  double acc = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) acc += std::abs(z[i] - ax[i]);
  return acc;
}

template <Scalar T>
Matrix<T> subgrad_f(const SensingEnsemble<T>& ens, std::span<const double> z,
                    const LowRankFactor<T>& u) {
  check_lengths(ens, z, u.dim());
  Matrix<T> g(u.dim(), u.rank());
  factored_pass(ens, z, u.matrix(), &g, [](double res) { return sgn(res); });
  g *= -1.0 / static_cast<double>(ens.m);
  return g;
}

template <Scalar T>
RecoveryResult<T> solve_nonconvex_from(const Instance<T>& inst, const NonconvexConfig& cfg,
                                       LowRankFactor<T> start) {
  cfg.validate();
  const auto t0 = Clock::now();
  const SensingEnsemble<T>& ens = inst.ensemble;
  check_lengths(ens, inst.z, start.dim());
  const double inv_m = 1.0 / static_cast<double>(ens.m);
  const double half_inv_m = 0.5 * inv_m;

  RecoveryResult<T> out;
  out.solver = SolverId::Nonconvex;
  out.history_every = cfg.history_every;
  out.step_base = cfg.step_base;
  out.step_source = "config";

  Matrix<T> u = std::move(start.matrix());
  Matrix<T> g(u.rows(), u.cols());
  const double bound = divergence_bound(u.frobenius_norm());

  for (std::size_t t = 0; t < cfg.t_max; ++t) {
    std::fill(g.data().begin(), g.data().end(), T{});
    const auto s = factored_pass(ens, inst.z, u, &g, [](double res) { return sgn(res); });
    if (t % cfg.history_every == 0) out.objective_history.push_back(s.l1 * half_inv_m);
    // U ← U − μ_t ∂f(U), and ∂f(U) = −(1/m) Σ sgn(ρ_i) a_i a_iᴴ U
    const double mu = step_schedule(cfg, t) * inv_m;
    auto ud = u.data();
    auto gd = g.data();
    for (std::size_t k = 0; k < ud.size(); ++k) ud[k] += mu * gd[k];
    const double norm = u.frobenius_norm();
    if (!std::isfinite(norm) || norm > bound) {
      throw DivergenceError("nonconvex: iterate diverged at iteration " + std::to_string(t + 1),
                            t + 1);
    }
    out.iterations_run = t + 1;
  }

  LowRankFactor<T> est(std::move(u));
  out.final_objective = objective_f(ens, inst.z, est);
  out.objective_history.push_back(out.final_objective);
  out.rel_error_vs_truth = truth_error(inst, est);
  out.estimate = std::move(est);
  out.wall_time_s = seconds_since(t0);
  return out;
}

template <Scalar T>
RecoveryResult<T> solve_nonconvex(const Instance<T>& inst, const NonconvexConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  auto out = solve_nonconvex_from(inst, cfg, spectral_init(inst, cfg.rank));
  out.wall_time_s = seconds_since(t0);
  return out;
}

template <Scalar T>
RecoveryResult<T> solve_wf(const Instance<T>& inst, const WfConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const SensingEnsemble<T>& ens = inst.ensemble;
  const double inv_m = 1.0 / static_cast<double>(ens.m);

  RecoveryResult<T> out;
  out.solver = SolverId::WirtingerFlow;
  out.history_every = cfg.history_every;

  LowRankFactor<T> init = spectral_init(inst, cfg.rank);
  double ref_norm_sq = 0.0;
  const double truth_norm = inst.truth.factor.dim() == ens.n ? inst.truth.factor.frobenius_norm() : 0.0;
  if (cfg.use_truth_norm && truth_norm > 0.0) {
    ref_norm_sq = truth_norm * truth_norm;
    out.step_source = "truth";
  } else {
    ref_norm_sq = init.matrix().frobenius_norm_sq();
    out.step_source = "initializer";
  }
  const double mu = ref_norm_sq > 0.0 ? cfg.step_scale / ref_norm_sq : 0.0;
  out.step_base = mu;

  Matrix<T> u = std::move(init.matrix());
  Matrix<T> g(u.rows(), u.cols());
  const double bound = divergence_bound(u.frobenius_norm());
  const double quarter_inv_m = 0.25 * inv_m;

  for (std::size_t t = 0; t < cfg.t_max; ++t) {
    std::fill(g.data().begin(), g.data().end(), T{});
    const auto s = factored_pass(ens, inst.z, u, &g, [](double res) { return res; });
    if (t % cfg.history_every == 0) out.objective_history.push_back(s.l2_sq * quarter_inv_m);
    const double step = mu * inv_m;
    auto ud = u.data();
    auto gd = g.data();
    for (std::size_t k = 0; k < ud.size(); ++k) ud[k] += step * gd[k];
    const double norm = u.frobenius_norm();
    if (!std::isfinite(norm) || norm > bound) {
      throw DivergenceError("wf: iterate diverged at iteration " + std::to_string(t + 1), t + 1);
    }
    out.iterations_run = t + 1;
  }

  LowRankFactor<T> est(std::move(u));
  out.final_objective = objective_wf(ens, inst.z, est);
  out.objective_history.push_back(out.final_objective);
  out.rel_error_vs_truth = truth_error(inst, est);
  out.estimate = std::move(est);
  out.wall_time_s = seconds_since(t0);
  return out;
}

template <Scalar T>
SymMatrix<T> project_psd_toeplitz(const SymMatrix<T>& m, std::size_t iters,
                                  PsdProjector<T>* projector) {
  PsdProjector<T> local;
  PsdProjector<T>& proj = projector ? *projector : local;
  // The Toeplitz set is a subspace, so only the PSD step carries a Dykstra
  // correction term.
  SymMatrix<T> x = m;
  SymMatrix<T> p(m.dim());
  for (std::size_t k = 0; k < iters; ++k) {
    const SymMatrix<T> xp = x + p;
    const SymMatrix<T> y = proj(xp);
    p = xp - y;
    x = project_toeplitz(y);
  }
  return x;
}

template <Scalar T>
RecoveryResult<T> solve_robust_phaselift_from(const Instance<T>& inst, const ConvexConfig& cfg,
                                              SymMatrix<T> start) {
  cfg.validate();
  const auto t0 = Clock::now();
  const SensingEnsemble<T>& ens = inst.ensemble;
  check_lengths(ens, inst.z, start.dim());
  const double inv_m = 1.0 / static_cast<double>(ens.m);

  RecoveryResult<T> out;
  out.solver = cfg.toeplitz ? SolverId::ToeplitzPhaseLift : SolverId::PhaseLift;
  out.history_every = cfg.history_every;

  double eta0 = cfg.step_base;
  out.step_source = "config";
  if (eta0 == 0.0) {
    double z_l1 = 0.0;
    for (double v : inst.z) z_l1 += std::abs(v);
    const std::vector<double> ones(ens.m, 1.0);
    const double denom = (inv_m * adjoint(ens, ones)).frobenius_norm();
    eta0 = denom > 0.0 ? z_l1 * inv_m / denom : 0.0;
    out.step_source = "auto";
  }
  out.step_base = eta0;

  PsdProjector<T> projector;
  auto project = [&](const SymMatrix<T>& y) {
    return cfg.toeplitz ? project_psd_toeplitz(y, cfg.dykstra_iters, &projector) : projector(y);
  };

  SymMatrix<T> x = std::move(start);
  const double bound = divergence_bound(x.frobenius_norm());
  SymMatrix<T> best = x;
  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<double> sign(ens.m);

  auto record = [&](std::size_t t, double obj) {
    if (t % cfg.history_every != 0) return;
    out.objective_history.push_back(obj);
    out.best_objective_history.push_back(best_obj);
  };

  std::size_t t = 0;
  for (; t < cfg.t_max; ++t) {
    const std::vector<double> ax = apply_measurement(ens, x);
    double obj = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < ens.m; ++i) {
      const double res = ax[i] - inst.z[i];
      obj += std::abs(res);
      sign[i] = sgn(res);
      any = any || sign[i] != 0.0;
    }
    if (obj < best_obj) {
      best_obj = obj;
      best = x;
    }
    record(t, obj);
    // zero residual: the subgradient vanishes and x is a fixed point
    if (!any) break;

    const SymMatrix<T> g = inv_m * adjoint(ens, sign);
    x = project(x - convex_step(cfg, eta0, t) * g);
    const double norm = x.frobenius_norm();
    if (!std::isfinite(norm) || norm > bound) {
      throw DivergenceError("convex: iterate diverged at iteration " + std::to_string(t + 1),
                            t + 1);
    }
  }
  out.iterations_run = t;
  if (t == cfg.t_max) {
    const double obj = objective_convex(ens, inst.z, x);
    if (obj < best_obj) {
      best_obj = obj;
      best = x;
    }
  }

  if (cfg.toeplitz) {
    // Dykstra leaves a small PSD violation; shifting by the identity keeps the
    // Toeplitz structure and restores feasibility exactly.
    const double lam_min = min_eigenvalue(best);
    if (lam_min < 0.0) best = best + (-lam_min) * SymMatrix<T>::identity(best.dim());
    best_obj = objective_convex(ens, inst.z, best);
  }

  out.final_objective = best_obj;
  out.objective_history.push_back(best_obj);
  out.best_objective_history.push_back(best_obj);
  out.rel_error_vs_truth = truth_error(inst, best);
  out.estimate = std::move(best);
  out.wall_time_s = seconds_since(t0);
  return out;
}

template <Scalar T>
RecoveryResult<T> solve_robust_phaselift(const Instance<T>& inst, const ConvexConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const double inv_m = 1.0 / static_cast<double>(inst.ensemble.m);
  const SymMatrix<T> y = inv_m * adjoint(inst.ensemble, inst.z);
  SymMatrix<T> start = cfg.toeplitz ? project_psd_toeplitz(y, cfg.dykstra_iters) : project_psd(y);
  auto out = solve_robust_phaselift_from(inst, cfg, std::move(start));
  out.wall_time_s = seconds_since(t0);
  return out;
}

RecoveryResult<cdouble> solve_toeplitz_phaselift(const Instance<cdouble>& inst,
                                                 ConvexConfig cfg) {
  cfg.toeplitz = true;
  return solve_robust_phaselift(inst, cfg);
}

#define PSDREC_INSTANTIATE(T)                                                                \
  template struct RecoveryResult<T>;                                                         \
  template LowRankFactor<T> spectral_init(const SensingEnsemble<T>&, std::span<const double>, \
                                          std::size_t);                                      \
  template double objective_f(const SensingEnsemble<T>&, std::span<const double>,            \
                              const LowRankFactor<T>&);                                      \
  template double objective_wf(const SensingEnsemble<T>&, std::span<const double>,           \
                               const LowRankFactor<T>&);                                     \
  template double objective_convex(const SensingEnsemble<T>&, std::span<const double>,       \
                                   const SymMatrix<T>&);                                     \
  template Matrix<T> subgrad_f(const SensingEnsemble<T>&, std::span<const double>,           \
                               const LowRankFactor<T>&);                                     \
  template RecoveryResult<T> solve_nonconvex(const Instance<T>&, const NonconvexConfig&);    \
  template RecoveryResult<T> solve_nonconvex_from(const Instance<T>&, const NonconvexConfig&, \
                                                  LowRankFactor<T>);                         \
  template RecoveryResult<T> solve_wf(const Instance<T>&, const WfConfig&);                  \
  template RecoveryResult<T> solve_robust_phaselift(const Instance<T>&, const ConvexConfig&); \
  template RecoveryResult<T> solve_robust_phaselift_from(const Instance<T>&,                 \
                                                         const ConvexConfig&, SymMatrix<T>); \
  template SymMatrix<T> project_psd_toeplitz(const SymMatrix<T>&, std::size_t,               \
                                             PsdProjector<T>*);

PSDREC_INSTANTIATE(double)
PSDREC_INSTANTIATE(cdouble)

#undef PSDREC_INSTANTIATE

}  // namespace psdrec
