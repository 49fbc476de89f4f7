#include "psdrec/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace psdrec {

using nlohmann::json;

namespace {

std::string_view to_string(NoiseModel model) {
  return model == NoiseModel::UniformEntrywise ? "uniform" : "none";
}

NoiseModel noise_model_from_string(std::string_view s) {
  if (s == "none") return NoiseModel::None;
  if (s == "uniform") return NoiseModel::UniformEntrywise;
  throw SchemaError("unknown noise model '" + std::string(s) + "'");
}

template <Scalar T>
json matrix_to_json(const Matrix<T>& m) {
  json out = {{"rows", m.rows()}, {"cols", m.cols()}};
  std::vector<double> re;
  re.reserve(m.data().size());
  for (const T& v : m.data()) re.push_back(real_part(v));
  out["re"] = re;
  if constexpr (is_complex_v<T>) {
    std::vector<double> im;
    im.reserve(m.data().size());
    for (const T& v : m.data()) im.push_back(v.imag());
    out["im"] = im;
  }
  return out;
}

// JSON has no NaN/Inf; non-finite values are written as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const CorruptionSpec& spec) {
  return {{"outlier_fraction", spec.outlier_fraction},
          {"outlier_model", std::string(to_string(spec.outlier_model))},
          {"amplitude", spec.amplitude},
          {"lo", spec.lo},
          {"hi", spec.hi},
          {"replace", spec.replace},
          {"noise_model", std::string(to_string(spec.noise_model))},
          {"noise_half_width", spec.noise_half_width},
          {"seed", spec.seed}};
}

CorruptionSpec corruption_from_json(const json& j) {
  CorruptionSpec spec;
  try {
    spec.outlier_fraction = j.value("outlier_fraction", spec.outlier_fraction);
    spec.outlier_model =
        outlier_model_from_string(j.value("outlier_model", std::string(to_string(spec.outlier_model))));
    spec.amplitude = j.value("amplitude", spec.amplitude);
    spec.lo = j.value("lo", spec.lo);
    spec.hi = j.value("hi", spec.hi);
    spec.replace = j.value("replace", spec.replace);
    spec.noise_model = noise_model_from_string(j.value("noise_model", std::string("none")));
    spec.noise_half_width = j.value("noise_half_width", spec.noise_half_width);
    spec.seed = j.value("seed", spec.seed);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("corruption spec: ") + e.what());
  } catch (const ContractViolation& e) {
    throw SchemaError(e.what());
  }
  return spec;
}

template <Scalar T>
json instance_to_json(const Instance<T>& inst, const json& config) {
  return {{"schema", kInstanceSchema},
          {"n", inst.ensemble.n},
          {"m", inst.ensemble.m},
          {"r", inst.r},
          {"kind", std::string(to_string(inst.truth.kind))},
          {"complex", is_complex_v<T>},
          {"seeds",
           {{"ensemble", inst.seeds.ensemble},
            {"truth", inst.seeds.truth},
            {"corruption", inst.seeds.corruption}}},
          {"corruption", to_json(inst.corruption)},
          {"truth", {{"frequencies", inst.truth.frequencies}, {"powers", inst.truth.powers}}},
          {"z", inst.z},
          {"beta", {{"support", inst.beta.support}, {"values", inst.beta.values}}},
          {"w", inst.w},
          {"w_l1", inst.w_l1},
          {"config", config.is_null() ? json::object() : config}};
}

namespace {

template <Scalar T>
Instance<T> load_instance(const json& j) {
  const auto n = j.at("n").get<std::size_t>();
  const auto m = j.at("m").get<std::size_t>();
  const auto r = j.at("r").get<std::size_t>();
  const TruthKind kind = truth_kind_from_string(j.at("kind").get<std::string>());
  InstanceSeeds seeds{j.at("seeds").at("ensemble").get<std::uint64_t>(),
                      j.at("seeds").at("truth").get<std::uint64_t>(),
                      j.at("seeds").at("corruption").get<std::uint64_t>()};

  Instance<T> inst;
  inst.ensemble = gen_ensemble<T>(n, m, seeds.ensemble);
  inst.truth = gen_ground_truth<T>(n, r, kind, seeds.truth);
  inst.r = r;
  inst.seeds = seeds;
  inst.corruption = corruption_from_json(j.at("corruption"));
  inst.clean_z = apply_measurement_factored(inst.ensemble, inst.truth.factor);
  inst.z = j.at("z").get<std::vector<double>>();
  inst.beta.support = j.at("beta").at("support").get<std::vector<std::size_t>>();
  inst.beta.values = j.at("beta").at("values").get<std::vector<double>>();
  inst.w = j.at("w").get<std::vector<double>>();
  inst.w_l1 = j.value("w_l1", 0.0);
  if (inst.z.size() != m || inst.w.size() != m ||
      inst.beta.support.size() != inst.beta.values.size()) {
    throw SchemaError("instance: array lengths do not match m");
  }
  for (std::size_t idx : inst.beta.support) {
    if (idx >= m) throw SchemaError("instance: outlier index out of range");
  }
  return inst;
}

}  // namespace

AnyInstance instance_from_json(const json& j) {
  require_schema(j, kInstanceSchema);
  try {
    if (j.at("complex").get<bool>()) return load_instance<cdouble>(j);
    return load_instance<double>(j);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("instance: ") + e.what());
  } catch (const ContractViolation& e) {
    throw SchemaError(std::string("instance: ") + e.what());
  }
}

template <Scalar T>
json result_to_json(const RecoveryResult<T>& res, const Instance<T>& inst, const json& config) {
  json est;
  std::size_t rank = 0;
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, LowRankFactor<T>>) {
          est = matrix_to_json(e.matrix());
          est["type"] = "factor";
          rank = e.rank();
        } else {
          est = matrix_to_json(e.matrix());
          est["type"] = "matrix";
        }
      },
      res.estimate);

  const bool has_truth = inst.truth.factor.frobenius_norm() > 0.0;
  return {{"schema", kResultSchema},
          {"solver", std::string(to_string(res.solver))},
          {"n", inst.ensemble.n},
          {"m", inst.ensemble.m},
          {"r", inst.r},
          {"rank", rank},
          {"complex", is_complex_v<T>},
          {"seeds",
           {{"ensemble", inst.seeds.ensemble},
            {"truth", inst.seeds.truth},
            {"corruption", inst.seeds.corruption}}},
          {"estimate", est},
          {"objective_history", res.objective_history},
          {"best_objective_history", res.best_objective_history},
          {"history_every", res.history_every},
          {"diverged", false},
          {"iterations_run", res.iterations_run},
          {"rel_error", res.rel_error_vs_truth ? number_or_null(*res.rel_error_vs_truth) : json()},
          {"squared_error", has_truth ? number_or_null(res.squared_error(inst.truth.factor)) : json()},
          {"final_objective", number_or_null(res.final_objective)},
          {"wall_time_s", res.wall_time_s},
          {"step_base", res.step_base},
          {"step_source", res.step_source},
          {"config", config.is_null() ? json::object() : config}};
}

void require_schema(const json& j, const std::string& expected) {
  if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string()) {
    throw SchemaError("document has no schema field (expected " + expected + ")");
  }
  const auto found = j["schema"].get<std::string>();
  if (found != expected) {
    throw SchemaError("schema mismatch: found " + found + ", expected " + expected);
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template json instance_to_json(const Instance<double>&, const json&);
template json instance_to_json(const Instance<cdouble>&, const json&);
template json result_to_json(const RecoveryResult<double>&, const Instance<double>&, const json&);
template json result_to_json(const RecoveryResult<cdouble>&, const Instance<cdouble>&, const json&);

}  // namespace psdrec
