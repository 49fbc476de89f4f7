#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "psdrec/errors.hpp"
#include "psdrec/io.hpp"

using namespace psdrec;
using nlohmann::json;

namespace {

CorruptionSpec mixed_spec() {
  CorruptionSpec spec;
  spec.outlier_fraction = 0.1;
  spec.outlier_model = OutlierModel::UniformAmplitude;
  spec.lo = 1.0;
  spec.hi = 5.0;
  spec.noise_model = NoiseModel::UniformEntrywise;
  spec.noise_half_width = 0.01;
  return spec;
}

template <typename T>
std::vector<T> vec(std::span<const T> s) {
  return {s.begin(), s.end()};
}

template <Scalar T>
void expect_same_instance(const Instance<T>& a, const Instance<T>& b) {
  EXPECT_EQ(vec(a.ensemble.vectors.data()), vec(b.ensemble.vectors.data()));
  EXPECT_EQ(vec(a.truth.factor.matrix().data()), vec(b.truth.factor.matrix().data()));
  EXPECT_EQ(a.z, b.z);
  EXPECT_EQ(a.clean_z, b.clean_z);
  EXPECT_EQ(a.w, b.w);
  EXPECT_EQ(a.beta.support, b.beta.support);
  EXPECT_EQ(a.beta.values, b.beta.values);
  EXPECT_EQ(a.r, b.r);
}

}  // namespace

TEST(InstanceJson, RealRoundTripThroughText) {
  const auto inst = make_instance<double>(6, 40, 2, TruthKind::GaussianFactor, mixed_spec(),
                                          InstanceSeeds::from_master(17));
  const json doc = json::parse(instance_to_json(inst, {{"note", "x"}}).dump());
  EXPECT_EQ(doc["schema"], kInstanceSchema);
  EXPECT_EQ(doc["config"]["note"], "x");
  const AnyInstance back = instance_from_json(doc);
  ASSERT_TRUE(std::holds_alternative<Instance<double>>(back));
  expect_same_instance(inst, std::get<Instance<double>>(back));
}

TEST(InstanceJson, ComplexRoundTrip) {
  const auto inst = make_instance<cdouble>(8, 24, 2, TruthKind::ToeplitzVandermonde, CorruptionSpec{},
                                           InstanceSeeds::from_master(3));
  const AnyInstance back = instance_from_json(json::parse(instance_to_json(inst).dump()));
  ASSERT_TRUE(std::holds_alternative<Instance<cdouble>>(back));
  expect_same_instance(inst, std::get<Instance<cdouble>>(back));
}

TEST(InstanceJson, RejectsInconsistentDocuments) {
  const auto inst = make_instance<double>(4, 10, 1, TruthKind::GaussianFactor, CorruptionSpec{},
                                          InstanceSeeds::from_master(1));
  json doc = instance_to_json(inst);
  json short_z = doc;
  short_z["z"].erase(short_z["z"].begin());
  EXPECT_THROW(instance_from_json(short_z), SchemaError);
  json missing = doc;
  missing.erase("seeds");
  EXPECT_THROW(instance_from_json(missing), SchemaError);
  json wrong = doc;
  wrong["schema"] = kResultSchema;
  EXPECT_THROW(instance_from_json(wrong), SchemaError);
  json bad_index = doc;
  bad_index["beta"]["support"] = {42};
  bad_index["beta"]["values"] = {1.0};
  EXPECT_THROW(instance_from_json(bad_index), SchemaError);
}

TEST(CorruptionJson, RoundTrip) {
  const CorruptionSpec spec = mixed_spec();
  EXPECT_EQ(to_json(corruption_from_json(to_json(spec))), to_json(spec));
}

TEST(ResultJson, FieldsAndEstimate) {
  const auto inst = make_instance<double>(5, 60, 1, TruthKind::GaussianFactor, CorruptionSpec{},
                                          InstanceSeeds::from_master(2));
  NonconvexConfig cfg;
  cfg.t_max = 50;
  const auto res = solve_nonconvex(inst, cfg);
  const json doc = result_to_json(res, inst, {{"t_max", 50}});
  EXPECT_EQ(doc["schema"], kResultSchema);
  EXPECT_EQ(doc["solver"], "nonconvex");
  EXPECT_EQ(doc["rank"], 1);
  EXPECT_EQ(doc["diverged"], false);
  EXPECT_EQ(doc["iterations_run"], res.iterations_run);
  EXPECT_EQ(doc["rel_error"].get<double>(), *res.rel_error_vs_truth);
  EXPECT_EQ(doc["config"]["t_max"], 50);
  const json& est = doc["estimate"];
  EXPECT_EQ(est["type"], "factor");
  EXPECT_EQ(est["rows"], 5);
  EXPECT_EQ(est["cols"], 1);
  EXPECT_EQ(est["re"].size(), 5u);
  EXPECT_FALSE(est.contains("im"));
}

TEST(ResultJson, ComplexMatrixEstimate) {
  const auto inst = make_instance<cdouble>(4, 16, 1, TruthKind::ToeplitzVandermonde, CorruptionSpec{},
                                           InstanceSeeds::from_master(5));
  ConvexConfig cfg;
  cfg.t_max = 5;
  cfg.toeplitz = true;
  const json doc = result_to_json(solve_toeplitz_phaselift(inst, cfg), inst);
  EXPECT_EQ(doc["estimate"]["type"], "matrix");
  EXPECT_EQ(doc["estimate"]["im"].size(), 16u);
  EXPECT_EQ(doc["rank"], 0);
  EXPECT_TRUE(doc["config"].is_object());
}

TEST(RequireSchema, Mismatch) {
  EXPECT_NO_THROW(require_schema({{"schema", kCurveSchema}}, kCurveSchema));
  EXPECT_THROW(require_schema({{"schema", kCurveSchema}}, kResultSchema), SchemaError);
  EXPECT_THROW(require_schema(json::array(), kResultSchema), SchemaError);
  EXPECT_THROW(require_schema({{"x", 1}}, kResultSchema), SchemaError);
}

TEST(JsonFiles, WriteThenRead) {
  const auto path = std::filesystem::temp_directory_path() / "psdrec_io_test.json";
  const json doc = {{"schema", "t"}, {"v", {1.5, 2.25}}};
  write_json_file(path, doc);
  EXPECT_EQ(read_json_file(path), doc);
  std::filesystem::remove(path);
  EXPECT_THROW(read_json_file(path), std::runtime_error);
}

TEST(JsonFiles, ParseErrorIsSchemaError) {
  const auto path = std::filesystem::temp_directory_path() / "psdrec_io_bad.json";
  {
    std::ofstream(path) << "{not json";
  }
  EXPECT_THROW(read_json_file(path), SchemaError);
  std::filesystem::remove(path);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(400.0), "400");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  for (double v : {1.0 / 3.0, 2.5e-300, 12345.678901234567}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}
