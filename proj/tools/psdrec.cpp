// psdrec: generate instances, run solvers, sweeps, curves and isometry probes.
//
// Exit codes: 0 ran to completion (a failed recovery is still a result),
// 1 I/O or data error, 2 usage error. Progress goes to stderr; stdout carries
// only results.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "psdrec/harness.hpp"
#include "psdrec/io.hpp"

namespace {

using nlohmann::json;
using namespace psdrec;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Values come from the flag when given, else from the --config JSON, else the
// built-in default. Keys in the file are the long flag names, with '-' or '_'.
class Resolver {
 public:
  explicit Resolver(const CLI::App* app) : app_(app) {}

  void load(const std::string& path) {
    if (path.empty()) return;
    config_ = read_json_file(path);
    if (!config_.is_object()) throw SchemaError(path + ": config must be a JSON object");
  }

  bool given(const std::string& name) const {
    return app_->count("--" + name) > 0 || lookup(name) != nullptr;
  }

  template <typename T>
  void merge(const std::string& name, T& var) const {
    if (app_->count("--" + name) > 0) return;
    if (const json* v = lookup(name)) {
      try {
        var = v->get<T>();
      } catch (const json::exception&) {
        throw UsageError("config: bad value for '" + name + "'");
      }
    }
  }

  const json* lookup(const std::string& name) const {
    if (!config_.is_object()) return nullptr;
    std::string underscored = name;
    for (char& c : underscored) {
      if (c == '-') c = '_';
    }
    for (const std::string& key : {name, underscored}) {
      auto it = config_.find(key);
      if (it != config_.end()) return &*it;
    }
    return nullptr;
  }

 private:
  const CLI::App* app_;
  json config_;
};

struct CorruptionFlags {
  double outlier_frac = 0.0;
  std::string outlier_model = "gaussian";
  double outlier_amplitude = 1.0;
  double noise_halfwidth = 0.0;

  void add(CLI::App* app) {
    app->add_option("--outlier-frac", outlier_frac, "Fraction s of corrupted measurements");
    app->add_option("--outlier-model", outlier_model, "rademacher, gaussian or uniform");
    app->add_option("--outlier-amplitude", outlier_amplitude,
                    "Rademacher magnitude or Gaussian standard deviation");
    app->add_option("--noise-halfwidth", noise_halfwidth, "Bounded noise w_i ~ Unif[-h, h]");
  }

  CorruptionSpec resolve(const Resolver& res) {
    res.merge("outlier-frac", outlier_frac);
    res.merge("outlier-model", outlier_model);
    res.merge("outlier-amplitude", outlier_amplitude);
    res.merge("noise-halfwidth", noise_halfwidth);
    CorruptionSpec spec;
    spec.outlier_fraction = outlier_frac;
    spec.outlier_model = outlier_model_from_string(outlier_model);
    spec.amplitude = outlier_amplitude;
    if (noise_halfwidth > 0.0) {
      spec.noise_model = NoiseModel::UniformEntrywise;
      spec.noise_half_width = noise_halfwidth;
    }
    spec.validate();
    return spec;
  }
};

// Prints "label: done/total" to stderr roughly every 5%.
ProgressFn progress_printer(std::string label) {
  return [label, last = std::size_t{0}](std::size_t done, std::size_t total) mutable {
    const std::size_t pct = done * 20 / total;
    if (pct != last || done == total) {
      last = pct;
      std::cerr << label << ": " << done << "/" << total << "\n";
    }
  };
}

Axis parse_axis(const json& v) {
  Axis axis;
  if (v.is_object()) {
    axis.name = axis_name_from_string(v.at("name").get<std::string>());
    axis.values = v.at("values").get<std::vector<double>>();
    return axis;
  }
  const std::string text = v.get<std::string>();
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("axis must look like name=v1,v2,...: " + text);
  axis.name = axis_name_from_string(text.substr(0, eq));
  std::stringstream ss(text.substr(eq + 1));
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      axis.values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("bad axis value '" + item + "'");
    }
  }
  return axis;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

// ---- gen ------------------------------------------------------------------

struct GenCmd {
  std::size_t n = 0, m = 0, r = 1;
  std::string kind = "gaussian";
  bool complex_scalars = false;
  std::uint64_t seed = 1;
  std::string out = "instance.json";
  std::string config;
  CorruptionFlags corruption;

  void add(CLI::App* app) {
    app->add_option("--n", n, "Matrix dimension");
    app->add_option("--m", m, "Number of measurements");
    app->add_option("--r", r, "Rank of the ground truth");
    app->add_option("--kind", kind, "gaussian or toeplitz (toeplitz is complex)");
    app->add_flag("--complex", complex_scalars, "Complex Gaussian instance");
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--out", out, "Instance JSON path");
    app->add_option("--config", config, "JSON file with default values for these flags");
    corruption.add(app);
  }

  int run(const CLI::App* app) {
    Resolver res(app);
    res.load(config);
    if (!res.given("n")) throw UsageError("gen: --n is required");
    if (!res.given("m")) throw UsageError("gen: --m is required");
    res.merge("n", n);
    res.merge("m", m);
    res.merge("r", r);
    res.merge("kind", kind);
    res.merge("complex", complex_scalars);
    res.merge("seed", seed);
    res.merge("out", out);
    const CorruptionSpec spec = corruption.resolve(res);
    const TruthKind tk = truth_kind_from_string(kind);
    const InstanceSeeds seeds = InstanceSeeds::from_master(seed);
    const bool is_complex = complex_scalars || tk == TruthKind::ToeplitzVandermonde;
    const json echo = {{"command", "gen"}, {"n", n},     {"m", m},
                       {"r", r},           {"kind", std::string(to_string(tk))},
                       {"complex", is_complex},          {"seed", seed},
                       {"corruption", to_json(spec)}};
    double w_l1 = 0.0;
    if (is_complex) {
      const auto inst = make_instance<cdouble>(n, m, r, tk, spec, seeds);
      write_json_file(out, instance_to_json(inst, echo));
      w_l1 = inst.w_l1;
    } else {
      const auto inst = make_instance<double>(n, m, r, tk, spec, seeds);
      write_json_file(out, instance_to_json(inst, echo));
      w_l1 = inst.w_l1;
    }
    std::cout << out << "\n" << "w_l1 " << format_double(w_l1) << "\n";
    return 0;
  }
};

// ---- solve ----------------------------------------------------------------

template <Scalar T>
json divergence_json(const DivergenceError& e, const Instance<T>& inst, const std::string& solver,
                     const json& config) {
  return {{"schema", kResultSchema},
          {"solver", std::string(to_string(solver_from_string(solver)))},
          {"n", inst.ensemble.n},
          {"m", inst.ensemble.m},
          {"r", inst.r},
          {"rank", config.value("rank", std::size_t{0})},
          {"complex", is_complex_v<T>},
          {"seeds",
           {{"ensemble", inst.seeds.ensemble},
            {"truth", inst.seeds.truth},
            {"corruption", inst.seeds.corruption}}},
          {"diverged", true},
          {"diverged_at", e.iteration()},
          {"reason", e.what()},
          {"rel_error", nullptr},
          {"squared_error", nullptr},
          {"config", config}};
}

struct SolveCmd {
  std::string instance;
  std::string solver = "nonconvex";
  std::size_t rank_guess = 0;
  std::size_t tmax = 0;
  std::size_t dykstra = 0;
  std::string out = "result.json";
  std::string config;

  void add(CLI::App* app) {
    app->add_option("instance,--instance", instance, "Instance JSON file");
    app->add_option("--solver", solver, std::string("One of: ") + std::string(kSolverNames));
    app->add_option("--rank-guess", rank_guess, "Factor rank for nonconvex/wf (default: true r)");
    app->add_option("--tmax", tmax, "Iteration budget (0 returns the initializer)");
    app->add_option("--dykstra", dykstra, "Dykstra iterations per step (toeplitz)");
    app->add_option("--out", out, "RecoveryResult JSON path");
    app->add_option("--config", config, "JSON file with default values for these flags");
  }

  template <Scalar T>
  int solve(const Instance<T>& inst, const Resolver& res) {
    const SolverId id = solver_from_string(solver);
    const std::size_t rank = rank_guess == 0 ? inst.r : rank_guess;
    json echo = {{"command", "solve"}, {"instance", instance}, {"solver", solver}};
    RecoveryResult<T> result;
    try {
    switch (id) {
      case SolverId::Nonconvex: {
        NonconvexConfig cfg;
        cfg.rank = rank;
        if (res.given("tmax")) cfg.t_max = tmax;
        echo.update({{"rank", cfg.rank}, {"t_max", cfg.t_max}, {"step_base", cfg.step_base},
                     {"step_halving_period", cfg.step_halving_period}, {"step_floor", cfg.step_floor}});
        result = solve_nonconvex(inst, cfg);
        break;
      }
      case SolverId::WirtingerFlow: {
        WfConfig cfg;
        cfg.rank = rank;
        if (res.given("tmax")) cfg.t_max = tmax;
        echo.update({{"rank", cfg.rank}, {"t_max", cfg.t_max}, {"step_scale", cfg.step_scale},
                     {"use_truth_norm", cfg.use_truth_norm}});
        result = solve_wf(inst, cfg);
        break;
      }
      case SolverId::PhaseLift:
      case SolverId::ToeplitzPhaseLift: {
        ConvexConfig cfg;
        cfg.toeplitz = id == SolverId::ToeplitzPhaseLift;
        if (cfg.toeplitz) {
          cfg.t_max = 1000;
          cfg.dykstra_iters = 10;
        }
        if (res.given("tmax")) cfg.t_max = tmax;
        if (res.given("dykstra")) cfg.dykstra_iters = dykstra;
        cfg.half_life = std::min(cfg.half_life, std::max(1.0, static_cast<double>(cfg.t_max) / 20.0));
        echo.update({{"t_max", cfg.t_max}, {"half_life", cfg.half_life}, {"step_floor", cfg.step_floor},
                     {"toeplitz", cfg.toeplitz}, {"dykstra_iters", cfg.dykstra_iters}});
        if constexpr (is_complex_v<T>) {
          result = cfg.toeplitz ? solve_toeplitz_phaselift(inst, cfg) : solve_robust_phaselift(inst, cfg);
        } else {
          if (cfg.toeplitz) throw SchemaError("toeplitz solver needs a complex instance");
          result = solve_robust_phaselift(inst, cfg);
        }
        break;
      }
    }
    } catch (const DivergenceError& e) {
      // Divergence is an outcome, not a tool failure.
      write_json_file(out, divergence_json(e, inst, solver, echo));
      std::cout << "diverged at iteration " << e.iteration() << "\n"
                << "rel_error inf\n";
      return 0;
    }
    echo["step_source"] = result.step_source;
    write_json_file(out, result_to_json(result, inst, echo));
    const double rel = result.rel_error_vs_truth.value_or(std::nan(""));
    std::cout << "rel_error " << format_double(rel) << "\n"
              << "wall_time_s " << format_double(result.wall_time_s) << "\n";
    return 0;
  }

  int run(const CLI::App* app) {
    Resolver res(app);
    res.load(config);
    res.merge("instance", instance);
    res.merge("solver", solver);
    res.merge("rank-guess", rank_guess);
    res.merge("tmax", tmax);
    res.merge("dykstra", dykstra);
    res.merge("out", out);
    if (instance.empty()) throw UsageError("solve: an instance file is required");
    solver_from_string(solver);
    const AnyInstance inst = instance_from_json(read_json_file(instance));
    return std::visit([&](const auto& i) { return solve(i, res); }, inst);
  }
};

// ---- sweep ----------------------------------------------------------------

struct SweepCmd {
  std::string axis1 = "m=100,200,400";
  std::string axis2 = "r=1,2";
  std::size_t n = 20, m = 400, r = 1, rank_guess = 0, tmax = 0, trials = 20, jobs = 0;
  std::string solver = "nonconvex";
  double tau = 0.0;
  std::uint64_t seed = 1;
  bool record_time = false;
  std::string out = "sweep";
  std::string config;
  CorruptionFlags corruption;

  void add(CLI::App* app) {
    app->add_option("--axis1", axis1, "name=v1,v2,... with name in m, r, outlier_fraction");
    app->add_option("--axis2", axis2, "Second axis; rows of the heatmap");
    app->add_option("--n", n, "Matrix dimension");
    app->add_option("--m", m, "Measurements when m is not an axis");
    app->add_option("--r", r, "Rank when r is not an axis");
    app->add_option("--rank-guess", rank_guess, "Factor rank (default: true r)");
    app->add_option("--solver", solver, std::string("One of: ") + std::string(kSolverNames));
    app->add_option("--tmax", tmax, "Iteration budget (default: solver default)");
    app->add_option("--tau", tau, "Success threshold (default 1e-6, 1e-3 for convex solvers)");
    app->add_option("--trials", trials, "Trials per cell");
    app->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
    app->add_option("--seed", seed, "Base seed");
    app->add_flag("--record-time", record_time, "Write measured wall time into the CSV");
    app->add_option("--out", out, "Output prefix for .csv, .pgm and .meta.json");
    app->add_option("--config", config, "JSON file with default values for these flags");
    corruption.add(app);
  }

  int run(const CLI::App* app) {
    Resolver res(app);
    res.load(config);
    SweepSpec spec;
    json a1 = axis1, a2 = axis2;
    if (app->count("--axis1") == 0 && res.lookup("axis1")) a1 = *res.lookup("axis1");
    if (app->count("--axis2") == 0 && res.lookup("axis2")) a2 = *res.lookup("axis2");
    spec.axis1 = parse_axis(a1);
    spec.axis2 = parse_axis(a2);
    for (auto [name, var] : {std::pair{"n", &n}, {"m", &m}, {"r", &r}, {"rank-guess", &rank_guess},
                             {"tmax", &tmax}, {"trials", &trials}, {"jobs", &jobs}}) {
      res.merge(name, *var);
    }
    res.merge("solver", solver);
    res.merge("tau", tau);
    res.merge("seed", seed);
    res.merge("record-time", record_time);
    res.merge("out", out);
    spec.fixed.n = n;
    spec.fixed.m = m;
    spec.fixed.r = r;
    spec.fixed.rank_guess = rank_guess;
    spec.fixed.t_max = tmax;
    spec.fixed.solver = solver_from_string(solver);
    spec.fixed.corruption = corruption.resolve(res);
    if (res.given("tau")) spec.fixed.tau = tau;
    spec.trials = trials;
    spec.base_seed = seed;
    spec.validate();

    const SweepGrid grid = run_sweep(spec, jobs, progress_printer("sweep"));

    std::ostringstream csv;
    write_sweep_csv(csv, grid, record_time);
    write_text(out + ".csv", csv.str());
    write_text(out + ".pgm", heatmap_pgm(grid));
    json meta = to_json(spec);
    meta["record_time"] = record_time;
    meta["outputs"] = {out + ".csv", out + ".pgm"};
    write_json_file(out + ".meta.json", meta);

    std::cout << to_string(spec.axis2.name) << " \\ " << to_string(spec.axis1.name) << "\n";
    for (std::size_t i2 = 0; i2 < grid.height(); ++i2) {
      std::cout << format_double(spec.axis2.values[i2]) << ":";
      for (std::size_t i1 = 0; i1 < grid.width(); ++i1) {
        std::cout << " " << format_double(grid.at(i1, i2).success_rate());
      }
      std::cout << "\n";
    }
    std::cout << "wrote " << out << ".csv " << out << ".pgm " << out << ".meta.json\n";
    return 0;
  }
};

// ---- probe ----------------------------------------------------------------

struct ProbeCmd {
  std::string kind = "l1";
  std::size_t n = 20, m = 1600, r = 1, trials = 50;
  std::uint64_t seed = 1;
  std::string out = "probe.json";
  std::string config;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "l1 or l2l1");
    app->add_option("--n", n, "Matrix dimension");
    app->add_option("--m", m, "Number of measurements");
    app->add_option("--r", r, "Rank of the random PSD test matrices");
    app->add_option("--trials", trials, "Number of trials");
    app->add_option("--seed", seed, "Seed");
    app->add_option("--out", out, "ProbeReport JSON path");
    app->add_option("--config", config, "JSON file with default values for these flags");
  }

  int run(const CLI::App* app) {
    Resolver res(app);
    res.load(config);
    res.merge("kind", kind);
    for (auto [name, var] : {std::pair{"n", &n}, {"m", &m}, {"r", &r}, {"trials", &trials}}) {
      res.merge(name, *var);
    }
    res.merge("seed", seed);
    res.merge("out", out);
    ProbeReport rep;
    if (kind == "l1") {
      rep = rip_l1_probe(n, m, trials, r, seed);
    } else if (kind == "l2l1") {
      rep = rip_l2l1_probe(n, m, trials, r, seed);
    } else {
      throw UsageError("probe: --kind must be l1 or l2l1");
    }
    write_json_file(out, to_json(rep));
    std::cout << "max " << format_double(rep.max) << "\nmean " << format_double(rep.mean) << "\nspread "
              << format_double(rep.spread) << "\n";
    return 0;
  }
};

// ---- curve ----------------------------------------------------------------

std::vector<CurveSolver> parse_curve_solvers(const std::string& text, std::size_t r) {
  if (text.empty() || text == "default") return default_curve_solvers(r);
  std::vector<CurveSolver> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    CurveSolver s;
    const auto colon = item.find(':');
    s.solver = solver_from_string(item.substr(0, colon));
    if (colon != std::string::npos) {
      try {
        s.rank_offset = std::stoi(item.substr(colon + 1));
      } catch (const std::logic_error&) {
        throw UsageError("bad rank offset in '" + item + "'");
      }
    }
    out.push_back(s);
  }
  return out;
}

struct CurveCmd {
  std::size_t n = 20, r = 3, trials = 20, tmax = 0, jobs = 0;
  std::string m_list = "200,400,800";
  std::string solvers = "default";
  std::uint64_t seed = 1;
  std::string out = "curve.json";
  std::string config;
  CorruptionFlags corruption;

  void add(CLI::App* app) {
    app->add_option("--n", n, "Matrix dimension");
    app->add_option("--r", r, "True rank");
    app->add_option("--m-list", m_list, "Comma-separated measurement counts");
    app->add_option("--solvers", solvers,
                    "default, or a list like nonconvex:-1,nonconvex:0,wf:0,phaselift");
    app->add_option("--trials", trials, "Trials per m");
    app->add_option("--tmax", tmax, "Iteration budget (default: solver default)");
    app->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
    app->add_option("--seed", seed, "Base seed");
    app->add_option("--out", out, "Curve JSON path");
    app->add_option("--config", config, "JSON file with default values for these flags");
    corruption.add(app);
  }

  int run(const CLI::App* app) {
    Resolver res(app);
    res.load(config);
    for (auto [name, var] : {std::pair{"n", &n}, {"r", &r}, {"trials", &trials}, {"tmax", &tmax},
                             {"jobs", &jobs}}) {
      res.merge(name, *var);
    }
    res.merge("m-list", m_list);
    res.merge("solvers", solvers);
    res.merge("seed", seed);
    res.merge("out", out);
    CurveSpec spec;
    spec.n = n;
    spec.r = r;
    spec.trials = trials;
    spec.t_max = tmax;
    spec.base_seed = seed;
    spec.corruption = corruption.resolve(res);
    spec.solvers = parse_curve_solvers(solvers, r);
    const Axis ms = parse_axis(json("m=" + m_list));
    for (double v : ms.values) {
      if (!(v >= 1.0) || v != std::floor(v)) throw UsageError("--m-list needs positive integers");
      spec.m_values.push_back(static_cast<std::size_t>(v));
    }
    const auto points = mse_curve(spec, jobs, progress_printer("curve"));
    write_json_file(out, to_json(spec, points));
    std::cout << "solver,m,mean_sq_error,median_sq_error\n";
    for (const CurvePoint& p : points) {
      std::cout << p.solver.label() << "," << p.m << "," << format_double(p.mean_sq_error) << ","
                << format_double(p.median_sq_error) << "\n";
    }
    return 0;
  }
};

// ---- report ---------------------------------------------------------------

struct ReportCmd {
  std::vector<std::string> files;
  std::string out;

  void add(CLI::App* app) {
    app->add_option("files", files, "RecoveryResult or curve JSON files, or sweep CSV files");
    app->add_option("--out", out, "Also write the comparison table to this CSV file");
  }

  static std::string result_label(const json& j) {
    const SolverId id = solver_from_string(j.at("solver").get<std::string>());
    CurveSolver s{id, 0};
    const auto rank = j.at("rank").get<long long>();
    if (rank > 0) s.rank_offset = static_cast<int>(rank - j.at("r").get<long long>());
    return s.label();
  }

  int run(const CLI::App*) {
    if (files.empty()) throw UsageError("report: at least one input file is required");
    struct Acc {
      std::size_t count = 0;
      double sum = 0.0;
      std::vector<double> values;
    };
    std::map<std::pair<std::string, std::size_t>, Acc> table;
    std::vector<std::string> sweep_lines;

    for (const std::string& path : files) {
      if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        for (const CsvRow& row : read_sweep_csv(in)) {
          sweep_lines.push_back(path + "," + format_double(row.x1) + "," + format_double(row.x2) + "," +
                                format_double(row.success_rate));
        }
        continue;
      }
      const json j = read_json_file(path);
      const std::string schema = j.is_object() ? j.value("schema", std::string()) : std::string();
      try {
        if (schema == kResultSchema) {
          Acc& acc = table[{result_label(j), j.at("m").get<std::size_t>()}];
          const json& sq = j.at("squared_error");
          const double v = sq.is_null() ? std::numeric_limits<double>::infinity() : sq.get<double>();
          acc.count += 1;
          acc.sum += v;
          acc.values.push_back(v);
        } else if (schema == kCurveSchema) {
          for (const json& p : j.at("points")) {
            Acc& acc = table[{p.at("solver").get<std::string>(), p.at("m").get<std::size_t>()}];
            const auto trials = p.at("trials").get<std::size_t>();
            const json& mean = p.at("mean_sq_error");
            const double v = mean.is_null() ? std::numeric_limits<double>::infinity() : mean.get<double>();
            acc.count += trials;
            acc.sum += v * static_cast<double>(trials);
            const json& med = p.at("median_sq_error");
            acc.values.push_back(med.is_null() ? std::numeric_limits<double>::infinity() : med.get<double>());
          }
        } else {
          throw SchemaError(path + ": unsupported schema '" + schema + "' (expected " + kResultSchema +
                            " or " + kCurveSchema + ")");
        }
      } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
      }
    }

    std::ostringstream text;
    if (!table.empty()) {
      text << "solver,m,trials,mean_sq_error,median_sq_error\n";
      for (auto& [key, acc] : table) {
        std::vector<double>& v = acc.values;
        std::sort(v.begin(), v.end());
        const double med = v.size() % 2 == 1 ? v[v.size() / 2]
                                             : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
        text << key.first << "," << key.second << "," << acc.count << ","
             << format_double(acc.sum / static_cast<double>(acc.count)) << "," << format_double(med)
             << "\n";
      }
    }
    if (!sweep_lines.empty()) {
      text << "file,axis1,axis2,success_rate\n";
      for (const std::string& line : sweep_lines) text << line << "\n";
    }
    std::cout << text.str();
    if (!out.empty()) write_text(out, text.str());
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank PSD matrix recovery from corrupted rank-one measurements"};
  app.require_subcommand(1);

  GenCmd gen;
  SolveCmd solve;
  SweepCmd sweep;
  ProbeCmd probe;
  CurveCmd curve;
  ReportCmd report;
  CLI::App* gen_app = app.add_subcommand("gen", "Generate a measurement instance");
  CLI::App* solve_app = app.add_subcommand("solve", "Run a solver on an instance");
  CLI::App* sweep_app = app.add_subcommand("sweep", "Phase-transition sweep (CSV + PGM)");
  CLI::App* probe_app = app.add_subcommand("probe", "Empirical isometry probe");
  CLI::App* curve_app = app.add_subcommand("curve", "Squared error versus m for several solvers");
  CLI::App* report_app = app.add_subcommand("report", "Merge result files into a comparison table");
  gen.add(gen_app);
  solve.add(solve_app);
  sweep.add(sweep_app);
  probe.add(probe_app);
  curve.add(curve_app);
  report.add(report_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen_app->parsed()) return gen.run(gen_app);
    if (solve_app->parsed()) return solve.run(solve_app);
    if (sweep_app->parsed()) return sweep.run(sweep_app);
    if (probe_app->parsed()) return probe.run(probe_app);
    if (curve_app->parsed()) return curve.run(curve_app);
    if (report_app->parsed()) return report.run(report_app);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
