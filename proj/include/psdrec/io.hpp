#pragma once

// JSON documents for instances and recovery results.
//
// Every document carries a "schema" string and a "config" object echoing the
// fully-resolved parameters that produced it. Instances store seeds plus the
// observed data (z, β, w); the ensemble and ground truth are regenerated from
// the seeds on load, so files stay small and replay is exact.

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "psdrec/solvers.hpp"

namespace psdrec {

inline constexpr const char* kInstanceSchema = "psdrec.instance.v1";
inline constexpr const char* kResultSchema = "psdrec.result.v1";
inline constexpr const char* kProbeSchema = "psdrec.probe.v1";
inline constexpr const char* kSweepSchema = "psdrec.sweep.v1";
inline constexpr const char* kCurveSchema = "psdrec.curve.v1";

/// Malformed or incompatible document.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const CorruptionSpec& spec);
CorruptionSpec corruption_from_json(const nlohmann::json& j);

template <Scalar T>
nlohmann::json instance_to_json(const Instance<T>& inst, const nlohmann::json& config = {});

using AnyInstance = std::variant<Instance<double>, Instance<cdouble>>;

/// Regenerates ensemble and truth from the stored seeds and takes z, β, w
/// verbatim from the document.
AnyInstance instance_from_json(const nlohmann::json& j);

template <Scalar T>
nlohmann::json result_to_json(const RecoveryResult<T>& res, const Instance<T>& inst,
                              const nlohmann::json& config = {});

/// Throws SchemaError when `j["schema"]` differs from `expected`.
void require_schema(const nlohmann::json& j, const std::string& expected);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace psdrec
