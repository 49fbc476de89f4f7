#pragma once

// Monte-Carlo experiments: phase-transition sweeps, error-vs-m curves and
// empirical isometry probes.
//
// Trial seeds are derive_seed(base_seed, {bits(axis1), bits(axis2), k}) with
// bits() the IEEE-754 pattern of the coordinate (-0.0 folded to 0.0) and
// derive_seed the SplitMix64 chain from rng.hpp. Outcomes depend only on the
// sweep configuration and a cell's coordinates, never on execution order or
// on other cells.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "psdrec/solvers.hpp"

namespace psdrec {

enum class AxisName { M, R, OutlierFraction };

std::string_view to_string(AxisName name);
AxisName axis_name_from_string(std::string_view s);

struct Axis {
  AxisName name = AxisName::M;
  std::vector<double> values;
};

/// Everything needed to generate and solve one instance.
struct TrialParams {
  std::size_t n = 20;
  std::size_t m = 400;
  std::size_t r = 1;
  std::size_t rank_guess = 0;  // 0: use r
  SolverId solver = SolverId::Nonconvex;
  CorruptionSpec corruption;
  std::optional<double> tau;  // default: 1e-6, or 1e-3 for the convex solvers
  std::size_t t_max = 0;      // 0: solver default
  std::size_t dykstra_iters = 0;  // 0: solver default

  double resolved_tau() const;
  std::size_t resolved_rank() const { return rank_guess == 0 ? r : rank_guess; }
  void validate() const;
};

struct TrialOutcome {
  bool success = false;
  bool diverged = false;  // divergence or numerical failure; counted as failure
  double rel_error = 0.0;  // +inf when diverged
  double wall_time_s = 0.0;
};

/// The Toeplitz solver runs on complex Toeplitz-Vandermonde truths, every other
/// solver on real Gaussian factors.
TrialOutcome run_trial(const TrialParams& params, std::uint64_t seed);

struct SweepSpec {
  Axis axis1{AxisName::M, {}};
  Axis axis2{AxisName::R, {}};
  TrialParams fixed;
  std::size_t trials = 100;
  std::uint64_t base_seed = 1;

  void validate() const;
  /// `fixed` with the coordinate values substituted.
  TrialParams params_at(double x1, double x2) const;
};

std::uint64_t trial_seed(std::uint64_t base_seed, double x1, double x2, std::size_t k);

struct SweepCell {
  double x1 = 0.0;
  double x2 = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t diverged = 0;
  double mean_rel_error = 0.0;  // over non-diverged trials; NaN if none
  double mean_wall_time = 0.0;

  double success_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

/// Cells are row-major with axis2 as rows: index = i2·|axis1| + i1.
struct SweepGrid {
  SweepSpec spec;
  std::vector<SweepCell> cells;

  std::size_t width() const { return spec.axis1.values.size(); }
  std::size_t height() const { return spec.axis2.values.size(); }
  const SweepCell& at(std::size_t i1, std::size_t i2) const { return cells[i2 * width() + i1]; }
};

/// Called after each finished trial with (done, total).
using ProgressFn = std::function<void(std::size_t, std::size_t)>;

/// `jobs` = 0 selects hardware concurrency.
SweepGrid run_sweep(const SweepSpec& spec, std::size_t jobs = 1, const ProgressFn& progress = {});

/// Timing varies between runs; when `include_timing` is false the
/// mean_time_s column is written as 0 so the file is reproducible.
void write_sweep_csv(std::ostream& out, const SweepGrid& grid, bool include_timing = false);

struct CsvRow {
  double x1 = 0.0;
  double x2 = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_rel_error = 0.0;
  double mean_time_s = 0.0;
  std::size_t diverged = 0;
};

/// Throws SchemaError on a malformed header or row.
std::vector<CsvRow> read_sweep_csv(std::istream& in);

/// Binary P5 image, one pixel per cell, gray = round(255·success_rate).
std::string heatmap_pgm(const SweepGrid& grid);
std::string heatmap_pgm(const std::vector<CsvRow>& rows);

nlohmann::json to_json(const TrialParams& p);
nlohmann::json to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

struct CurveSolver {
  SolverId solver = SolverId::Nonconvex;
  int rank_offset = 0;  // rank guess = r + rank_offset

  std::string label() const;
};

/// Nonconvex at r−1 (when r ≥ 2), r, r+1; WF at r; convex.
std::vector<CurveSolver> default_curve_solvers(std::size_t r);

struct CurvePoint {
  CurveSolver solver;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::size_t diverged = 0;
  double mean_sq_error = 0.0;
  double median_sq_error = 0.0;
  double median_rel_error = 0.0;
};

struct CurveSpec {
  std::size_t n = 20;
  std::size_t r = 3;
  CorruptionSpec corruption;
  std::vector<std::size_t> m_values;
  std::vector<CurveSolver> solvers;
  std::size_t trials = 20;
  std::uint64_t base_seed = 1;
  std::size_t t_max = 0;  // 0: solver default

  void validate() const;
};

/// All solvers see the same instance for a given (m, trial).
std::vector<CurvePoint> mse_curve(const CurveSpec& spec, std::size_t jobs = 1,
                                  const ProgressFn& progress = {});

nlohmann::json to_json(const CurveSpec& spec, const std::vector<CurvePoint>& points);

struct ProbeReport {
  std::string kind;  // "l1" or "l2l1"
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::size_t rank = 0;
  std::uint64_t seed = 0;
  /// l1: δ̂ per trial; l2l1: (2/m)‖B(X)‖₁/‖X‖_F per trial.
  std::vector<double> samples;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double spread = 0.0;
  double lower_deviation = 0.0;  // max(0, 1 − min ratio)
  double upper_deviation = 0.0;  // max(0, max ratio − 1)
};

/// δ̂ = |(1/m)‖A(X)‖₁ − Tr X| / Tr X for fresh ensembles and random rank-`rank`
/// PSD X.
ProbeReport rip_l1_probe(std::size_t n, std::size_t m, std::size_t trials, std::size_t rank,
                         std::uint64_t seed = 1);

/// B_i(X) = A_{2i}(X) − A_{2i+1}(X); requires even m.
ProbeReport rip_l2l1_probe(std::size_t n, std::size_t m, std::size_t trials, std::size_t rank,
                           std::uint64_t seed = 1);

std::vector<double> difference_measurements(std::span<const double> ax);

nlohmann::json to_json(const ProbeReport& report);

}  // namespace psdrec
