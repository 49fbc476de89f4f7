#include "psdrec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "psdrec/io.hpp"
#include "psdrec/rng.hpp"

namespace psdrec {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs task(i) for i in [0, count) on `jobs` threads. Results must be written
// to per-index slots so the outcome is independent of scheduling.
template <typename Task>
void parallel_for(std::size_t count, std::size_t jobs, const Task& task, const ProgressFn& progress) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      task(i);
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(d, count);
      }
    }
  };
  if (jobs == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(jobs);
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
}

std::size_t checked_count(double v, const char* what) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) {
    throw ContractViolation(std::string(what) + " axis values must be positive integers");
  }
  return static_cast<std::size_t>(v);
}

ConvexConfig convex_config(const TrialParams& p) {
  ConvexConfig cfg;
  if (p.solver == SolverId::ToeplitzPhaseLift) {
    // Each Toeplitz iteration runs a Dykstra loop; the shorter horizon keeps
    // sweeps tractable and the step schedule is compressed to match.
    cfg.t_max = 1000;
    cfg.dykstra_iters = 10;
  }
  if (p.t_max > 0) cfg.t_max = p.t_max;
  if (p.dykstra_iters > 0) cfg.dykstra_iters = p.dykstra_iters;
  cfg.half_life = std::min(cfg.half_life, std::max(1.0, static_cast<double>(cfg.t_max) / 20.0));
  return cfg;
}

template <Scalar T>
RecoveryResult<T> solve_with(const Instance<T>& inst, SolverId solver, std::size_t rank,
                             const TrialParams& p) {
  switch (solver) {
    case SolverId::Nonconvex: {
      NonconvexConfig cfg;
      cfg.rank = rank;
      if (p.t_max > 0) cfg.t_max = p.t_max;
      return solve_nonconvex(inst, cfg);
    }
    case SolverId::WirtingerFlow: {
      WfConfig cfg;
      cfg.rank = rank;
      if (p.t_max > 0) cfg.t_max = p.t_max;
      return solve_wf(inst, cfg);
    }
    case SolverId::PhaseLift:
      return solve_robust_phaselift(inst, convex_config(p));
    case SolverId::ToeplitzPhaseLift:
      if constexpr (is_complex_v<T>) {
        return solve_toeplitz_phaselift(inst, convex_config(p));
      } else {
        throw ContractViolation("toeplitz solver requires a complex instance");
      }
  }
  throw ContractViolation("unknown solver");
}

template <Scalar T>
TrialOutcome run_on(const Instance<T>& inst, const TrialParams& p) {
  TrialOutcome out;
  try {
    const RecoveryResult<T> res = solve_with(inst, p.solver, p.resolved_rank(), p);
    out.rel_error = res.rel_error_vs_truth.value_or(kInf);
    out.wall_time_s = res.wall_time_s;
    if (!std::isfinite(out.rel_error)) out.diverged = true;
  } catch (const DivergenceError&) {
    out.diverged = true;
  } catch (const NumericalFailure&) {
    out.diverged = true;
  }
  if (out.diverged) out.rel_error = kInf;
  out.success = !out.diverged && out.rel_error <= p.resolved_tau();
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(AxisName name) {
  switch (name) {
    case AxisName::M: return "m";
    case AxisName::R: return "r";
    case AxisName::OutlierFraction: return "outlier_fraction";
  }
  return "?";
}

AxisName axis_name_from_string(std::string_view s) {
  if (s == "m") return AxisName::M;
  if (s == "r") return AxisName::R;
  if (s == "outlier_fraction" || s == "s") return AxisName::OutlierFraction;
  throw ContractViolation("unknown axis '" + std::string(s) + "' (expected m, r, outlier_fraction)");
}

double TrialParams::resolved_tau() const {
  if (tau) return *tau;
  return (solver == SolverId::PhaseLift || solver == SolverId::ToeplitzPhaseLift) ? 1e-3 : 1e-6;
}

void TrialParams::validate() const {
  if (n < 1 || m < 1 || r < 1) throw ContractViolation("trial: n, m, r must be >= 1");
  if (r > n || resolved_rank() > n) throw ContractViolation("trial: rank exceeds n");
  if (tau && (std::isnan(*tau) || *tau < 0.0)) throw ContractViolation("trial: tau must be >= 0");
  corruption.validate();
}

TrialOutcome run_trial(const TrialParams& params, std::uint64_t seed) {
  params.validate();
  const InstanceSeeds seeds = InstanceSeeds::from_master(seed);
  if (params.solver == SolverId::ToeplitzPhaseLift) {
    const auto inst = make_instance<cdouble>(params.n, params.m, params.r,
                                             TruthKind::ToeplitzVandermonde, params.corruption, seeds);
    return run_on(inst, params);
  }
  const auto inst = make_instance<double>(params.n, params.m, params.r, TruthKind::GaussianFactor,
                                          params.corruption, seeds);
  return run_on(inst, params);
}

void SweepSpec::validate() const {
  if (axis1.name == axis2.name) throw ContractViolation("sweep: axis names must be distinct");
  for (const Axis* axis : {&axis1, &axis2}) {
    if (axis->values.empty()) throw ContractViolation("sweep: axis has no values");
    for (std::size_t i = 0; i < axis->values.size(); ++i) {
      if (!std::isfinite(axis->values[i])) throw ContractViolation("sweep: axis values must be finite");
      if (i > 0 && !(axis->values[i] > axis->values[i - 1])) {
        throw ContractViolation("sweep: axis values must be strictly increasing");
      }
    }
  }
  if (trials < 1) throw ContractViolation("sweep: trials must be >= 1");
  for (double x1 : axis1.values) {
    for (double x2 : axis2.values) params_at(x1, x2).validate();
  }
}

TrialParams SweepSpec::params_at(double x1, double x2) const {
  TrialParams p = fixed;
  const auto apply = [&p](AxisName name, double v) {
    switch (name) {
      case AxisName::M: p.m = checked_count(v, "m"); break;
      case AxisName::R:
        p.r = checked_count(v, "r");
        p.rank_guess = 0;
        break;
      case AxisName::OutlierFraction: p.corruption.outlier_fraction = v; break;
    }
  };
  apply(axis1.name, x1);
  apply(axis2.name, x2);
  return p;
}

std::uint64_t trial_seed(std::uint64_t base_seed, double x1, double x2, std::size_t k) {
  return derive_seed(base_seed, {double_bits(x1), double_bits(x2), static_cast<std::uint64_t>(k)});
}

SweepGrid run_sweep(const SweepSpec& spec, std::size_t jobs, const ProgressFn& progress) {
  spec.validate();
  const std::size_t w = spec.axis1.values.size();
  const std::size_t h = spec.axis2.values.size();
  const std::size_t per_cell = spec.trials;
  std::vector<TrialOutcome> outcomes(w * h * per_cell);

  parallel_for(
      outcomes.size(), jobs,
      [&](std::size_t idx) {
        const std::size_t cell = idx / per_cell;
        const std::size_t k = idx % per_cell;
        const double x1 = spec.axis1.values[cell % w];
        const double x2 = spec.axis2.values[cell / w];
        outcomes[idx] = run_trial(spec.params_at(x1, x2), trial_seed(spec.base_seed, x1, x2, k));
      },
      progress);

  SweepGrid grid{spec, {}};
  grid.cells.reserve(w * h);
  for (std::size_t cell = 0; cell < w * h; ++cell) {
    SweepCell c;
    c.x1 = spec.axis1.values[cell % w];
    c.x2 = spec.axis2.values[cell / w];
    c.trials = per_cell;
    double err_sum = 0.0;
    double time_sum = 0.0;
    for (std::size_t k = 0; k < per_cell; ++k) {
      const TrialOutcome& o = outcomes[cell * per_cell + k];
      c.successes += o.success ? 1 : 0;
      time_sum += o.wall_time_s;
      if (o.diverged) {
        ++c.diverged;
      } else {
        err_sum += o.rel_error;
      }
    }
    const std::size_t finite = per_cell - c.diverged;
    c.mean_rel_error = finite > 0 ? err_sum / static_cast<double>(finite)
                                  : std::numeric_limits<double>::quiet_NaN();
    c.mean_wall_time = time_sum / static_cast<double>(per_cell);
    grid.cells.push_back(c);
  }
  return grid;
}

void write_sweep_csv(std::ostream& out, const SweepGrid& grid, bool include_timing) {
  out << "axis1,axis2,trials,successes,success_rate,mean_rel_error,mean_time_s,diverged\n";
  for (const SweepCell& c : grid.cells) {
    out << format_double(c.x1) << ',' << format_double(c.x2) << ',' << c.trials << ','
        << c.successes << ',' << format_double(c.success_rate()) << ','
        << format_double(c.mean_rel_error) << ','
        << format_double(include_timing ? c.mean_wall_time : 0.0) << ',' << c.diverged << '\n';
  }
}

std::vector<CsvRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "axis1,axis2,trials,successes,success_rate,mean_rel_error,mean_time_s,diverged") {
    throw SchemaError("sweep csv: unexpected header");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 8) throw SchemaError("sweep csv: expected 8 fields in '" + line + "'");
    try {
      CsvRow r;
      r.x1 = std::stod(f[0]);
      r.x2 = std::stod(f[1]);
      r.trials = std::stoul(f[2]);
      r.successes = std::stoul(f[3]);
      r.success_rate = std::stod(f[4]);
      r.mean_rel_error = std::stod(f[5]);
      r.mean_time_s = std::stod(f[6]);
      r.diverged = std::stoul(f[7]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw SchemaError("sweep csv: bad number in '" + line + "'");
    }
  }
  return rows;
}

namespace {

std::string pgm_bytes(std::size_t width, std::size_t height, const std::vector<double>& rates) {
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  for (double rate : rates) {
    const double g = std::round(255.0 * std::clamp(rate, 0.0, 1.0));
    out.push_back(static_cast<char>(static_cast<unsigned char>(g)));
  }
  return out;
}

}  // namespace

std::string heatmap_pgm(const SweepGrid& grid) {
  std::vector<double> rates;
  rates.reserve(grid.cells.size());
  for (const SweepCell& c : grid.cells) rates.push_back(c.success_rate());
  return pgm_bytes(grid.width(), grid.height(), rates);
}

std::string heatmap_pgm(const std::vector<CsvRow>& rows) {
  // Rows arrive axis2-major; the width is the run length of the first axis2 value.
  if (rows.empty()) throw SchemaError("sweep csv: no data rows");
  std::size_t width = 0;
  while (width < rows.size() && rows[width].x2 == rows.front().x2) ++width;
  if (rows.size() % width != 0) throw SchemaError("sweep csv: rows do not form a grid");
  std::vector<double> rates;
  rates.reserve(rows.size());
  for (const CsvRow& r : rows) rates.push_back(r.success_rate);
  return pgm_bytes(width, rows.size() / width, rates);
}

json to_json(const TrialParams& p) {
  json j = {{"n", p.n},
            {"m", p.m},
            {"r", p.r},
            {"rank_guess", p.resolved_rank()},
            {"solver", std::string(to_string(p.solver))},
            {"corruption", to_json(p.corruption)},
            {"tau", p.resolved_tau()},
            {"t_max", p.t_max},
            {"dykstra_iters", p.dykstra_iters}};
  return j;
}

json to_json(const SweepSpec& spec) {
  return {{"schema", kSweepSchema},
          {"axis1", {{"name", std::string(to_string(spec.axis1.name))}, {"values", spec.axis1.values}}},
          {"axis2", {{"name", std::string(to_string(spec.axis2.name))}, {"values", spec.axis2.values}}},
          {"fixed", to_json(spec.fixed)},
          {"trials", spec.trials},
          {"base_seed", spec.base_seed},
          {"seed_rule", "derive_seed(base_seed, {bits(axis1), bits(axis2), trial})"}};
}

SweepSpec sweep_spec_from_json(const json& j) {
  SweepSpec spec;
  try {
    spec.axis1.name = axis_name_from_string(j.at("axis1").at("name").get<std::string>());
    spec.axis1.values = j.at("axis1").at("values").get<std::vector<double>>();
    spec.axis2.name = axis_name_from_string(j.at("axis2").at("name").get<std::string>());
    spec.axis2.values = j.at("axis2").at("values").get<std::vector<double>>();
    spec.trials = j.value("trials", spec.trials);
    spec.base_seed = j.value("base_seed", spec.base_seed);
    if (j.contains("fixed")) {
      const json& f = j["fixed"];
      TrialParams& p = spec.fixed;
      p.n = f.value("n", p.n);
      p.m = f.value("m", p.m);
      p.r = f.value("r", p.r);
      p.rank_guess = f.value("rank_guess", p.rank_guess);
      if (f.contains("solver")) p.solver = solver_from_string(f["solver"].get<std::string>());
      if (f.contains("corruption")) p.corruption = corruption_from_json(f["corruption"]);
      if (f.contains("tau")) p.tau = f["tau"].get<double>();
      p.t_max = f.value("t_max", p.t_max);
      p.dykstra_iters = f.value("dykstra_iters", p.dykstra_iters);
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("sweep spec: ") + e.what());
  }
  return spec;
}

std::string CurveSolver::label() const {
  std::string s(to_string(solver));
  if (solver == SolverId::Nonconvex || solver == SolverId::WirtingerFlow) {
    s += "(r";
    if (rank_offset > 0) s += "+" + std::to_string(rank_offset);
    if (rank_offset < 0) s += std::to_string(rank_offset);
    s += ")";
  }
  return s;
}

std::vector<CurveSolver> default_curve_solvers(std::size_t r) {
  std::vector<CurveSolver> out;
  if (r >= 2) out.push_back({SolverId::Nonconvex, -1});
  out.push_back({SolverId::Nonconvex, 0});
  out.push_back({SolverId::Nonconvex, 1});
  out.push_back({SolverId::WirtingerFlow, 0});
  out.push_back({SolverId::PhaseLift, 0});
  return out;
}

void CurveSpec::validate() const {
  if (n < 1 || r < 1 || r > n) throw ContractViolation("curve: need 1 <= r <= n");
  if (m_values.empty() || solvers.empty()) throw ContractViolation("curve: empty m list or solver list");
  if (trials < 1) throw ContractViolation("curve: trials must be >= 1");
  for (const CurveSolver& s : solvers) {
    const long long rank = static_cast<long long>(r) + s.rank_offset;
    if (rank < 1 || rank > static_cast<long long>(n)) {
      throw ContractViolation("curve: rank guess out of range for " + s.label());
    }
    if (s.solver == SolverId::ToeplitzPhaseLift) {
      throw ContractViolation("curve: toeplitz solver is not supported on real instances");
    }
  }
  for (std::size_t m : m_values) {
    if (m < 1) throw ContractViolation("curve: m must be >= 1");
  }
  corruption.validate();
}

std::vector<CurvePoint> mse_curve(const CurveSpec& spec, std::size_t jobs, const ProgressFn& progress) {
  spec.validate();
  const std::size_t ns = spec.solvers.size();
  const std::size_t nm = spec.m_values.size();
  std::vector<double> sq(nm * spec.trials * ns, kInf);
  std::vector<double> rel(sq.size(), kInf);

  // One task per (m, trial) so every solver reuses the same instance.
  parallel_for(
      nm * spec.trials, jobs,
      [&](std::size_t task) {
        const std::size_t mi = task / spec.trials;
        const std::size_t k = task % spec.trials;
        const std::size_t m = spec.m_values[mi];
        const std::uint64_t seed =
            derive_seed(spec.base_seed, {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k)});
        const auto inst = make_instance<double>(spec.n, m, spec.r, TruthKind::GaussianFactor,
                                                spec.corruption, InstanceSeeds::from_master(seed));
        for (std::size_t si = 0; si < ns; ++si) {
          const CurveSolver& s = spec.solvers[si];
          TrialParams p;
          p.n = spec.n;
          p.m = m;
          p.r = spec.r;
          p.t_max = spec.t_max;
          p.solver = s.solver;
          const auto rank = static_cast<std::size_t>(static_cast<long long>(spec.r) + s.rank_offset);
          const std::size_t slot = task * ns + si;
          try {
            const auto res = solve_with(inst, s.solver, rank, p);
            sq[slot] = res.squared_error(inst.truth.factor);
            rel[slot] = res.rel_error_vs_truth.value_or(kInf);
          } catch (const DivergenceError&) {
          } catch (const NumericalFailure&) {
          }
        }
      },
      progress);

  std::vector<CurvePoint> out;
  for (std::size_t si = 0; si < ns; ++si) {
    for (std::size_t mi = 0; mi < nm; ++mi) {
      CurvePoint pt;
      pt.solver = spec.solvers[si];
      pt.m = spec.m_values[mi];
      pt.trials = spec.trials;
      std::vector<double> sqs;
      std::vector<double> rels;
      double sum = 0.0;
      for (std::size_t k = 0; k < spec.trials; ++k) {
        const std::size_t slot = (mi * spec.trials + k) * ns + si;
        if (!std::isfinite(sq[slot])) ++pt.diverged;
        sum += sq[slot];
        sqs.push_back(sq[slot]);
        rels.push_back(rel[slot]);
      }
      pt.mean_sq_error = sum / static_cast<double>(spec.trials);
      pt.median_sq_error = median(sqs);
      pt.median_rel_error = median(rels);
      out.push_back(pt);
    }
  }
  return out;
}

json to_json(const CurveSpec& spec, const std::vector<CurvePoint>& points) {
  json rows = json::array();
  for (const CurvePoint& p : points) {
    rows.push_back({{"solver", p.solver.label()},
                    {"m", p.m},
                    {"trials", p.trials},
                    {"diverged", p.diverged},
                    {"mean_sq_error", std::isfinite(p.mean_sq_error) ? json(p.mean_sq_error) : json()},
                    {"median_sq_error", std::isfinite(p.median_sq_error) ? json(p.median_sq_error) : json()},
                    {"median_rel_error", std::isfinite(p.median_rel_error) ? json(p.median_rel_error) : json()}});
  }
  json solvers = json::array();
  for (const CurveSolver& s : spec.solvers) solvers.push_back(s.label());
  return {{"schema", kCurveSchema},
          {"config",
           {{"n", spec.n},
            {"r", spec.r},
            {"corruption", to_json(spec.corruption)},
            {"m_values", spec.m_values},
            {"solvers", solvers},
            {"trials", spec.trials},
            {"base_seed", spec.base_seed},
            {"t_max", spec.t_max}}},
          {"points", rows}};
}

namespace {

struct ProbeSample {
  std::vector<double> ax;
  LowRankFactor<double> x;
};

// Fresh ensemble and random rank-`rank` PSD matrix for trial k; a zero matrix
// is redrawn.
ProbeSample probe_sample(std::size_t n, std::size_t m, std::size_t rank, std::uint64_t seed,
                         std::size_t k) {
  const std::uint64_t key = derive_seed(seed, {static_cast<std::uint64_t>(k)});
  const auto ens = gen_ensemble<double>(n, m, derive_seed(key, {1}));
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto truth = gen_ground_truth<double>(n, rank, TruthKind::GaussianFactor,
                                          derive_seed(key, {2, attempt}));
    if (truth.factor.matrix().frobenius_norm() > 0.0) {
      auto ax = apply_measurement_factored(ens, truth.factor);
      return {std::move(ax), std::move(truth.factor)};
    }
  }
}

// `ratios` are the normalized norms whose distance from 1 is reported.
void summarize(ProbeReport& rep, const std::vector<double>& ratios) {
  const auto& s = rep.samples;
  rep.min = *std::min_element(s.begin(), s.end());
  rep.max = *std::max_element(s.begin(), s.end());
  rep.mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  rep.spread = rep.max - rep.min;
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  rep.lower_deviation = std::max(0.0, 1.0 - *lo);
  rep.upper_deviation = std::max(0.0, *hi - 1.0);
}

void check_probe_args(std::size_t n, std::size_t m, std::size_t trials, std::size_t rank) {
  if (n < 1 || m < 1) throw ContractViolation("probe: n and m must be >= 1");
  if (trials < 1) throw ContractViolation("probe: trials must be >= 1");
  if (rank < 1 || rank > n) throw ContractViolation("probe: need 1 <= rank <= n");
}

}  // namespace

ProbeReport rip_l1_probe(std::size_t n, std::size_t m, std::size_t trials, std::size_t rank,
                         std::uint64_t seed) {
  check_probe_args(n, m, trials, rank);
  ProbeReport rep{"l1", n, m, trials, rank, seed, {}, 0, 0, 0, 0, 0, 0};
  std::vector<double> ratios;
  for (std::size_t k = 0; k < trials; ++k) {
    const ProbeSample smp = probe_sample(n, m, rank, seed, k);
    const double trace = smp.x.matrix().frobenius_norm_sq();
    double l1 = 0.0;
    for (double v : smp.ax) l1 += std::abs(v);
    ratios.push_back(l1 / static_cast<double>(m) / trace);
    rep.samples.push_back(std::abs(ratios.back() - 1.0));
  }
  summarize(rep, ratios);
  return rep;
}

std::vector<double> difference_measurements(std::span<const double> ax) {
  if (ax.size() % 2 != 0) throw ContractViolation("difference measurements need an even count");
  std::vector<double> b(ax.size() / 2);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = ax[2 * i] - ax[2 * i + 1];
  return b;
}

ProbeReport rip_l2l1_probe(std::size_t n, std::size_t m, std::size_t trials, std::size_t rank,
                           std::uint64_t seed) {
  check_probe_args(n, m, trials, rank);
  if (m % 2 != 0) throw ContractViolation("l2l1 probe: m must be even");
  ProbeReport rep{"l2l1", n, m, trials, rank, seed, {}, 0, 0, 0, 0, 0, 0};
  for (std::size_t k = 0; k < trials; ++k) {
    const ProbeSample smp = probe_sample(n, m, rank, seed, k);
    double l1 = 0.0;
    for (double v : difference_measurements(smp.ax)) l1 += std::abs(v);
    rep.samples.push_back(2.0 * l1 / static_cast<double>(m) / smp.x.gram().frobenius_norm());
  }
  summarize(rep, rep.samples);
  return rep;
}

json to_json(const ProbeReport& r) {
  return {{"schema", kProbeSchema},
          {"kind", r.kind},
          {"n", r.n},
          {"m", r.m},
          {"trials", r.trials},
          {"rank", r.rank},
          {"seed", r.seed},
          {"samples", r.samples},
          {"min", r.min},
          {"max", r.max},
          {"mean", r.mean},
          {"spread", r.spread},
          {"lower_deviation", r.lower_deviation},
          {"upper_deviation", r.upper_deviation},
          {"config",
           {{"kind", r.kind}, {"n", r.n}, {"m", r.m}, {"trials", r.trials}, {"rank", r.rank}, {"seed", r.seed}}}};
}

}  // namespace psdrec
