// End-to-end runs of the psdrec executable.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "psdrec/io.hpp"

using namespace psdrec;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("psdrec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Exit status of `psdrec <args>`; stdout lands in out_.
  int run(const std::string& args) {
    const std::string cmd = std::string(PSDREC_CLI) + " " + args + " >" + path("stdout.txt") + " 2>" +
                            path("stderr.txt");
    const int status = std::system(cmd.c_str());
    out_ = slurp(path("stdout.txt"));
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::string out_;
};

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n' ? 1 : 0;
  return n;
}

}  // namespace

TEST_F(Cli, GenRequiresDimensions) {
  EXPECT_EQ(run("gen --m 40 --out " + path("a.json")), 2);
  EXPECT_FALSE(fs::exists(path("a.json")));
}

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run("gen --n 6 --m 40 --outlier-frac 0.1 --seed 4 --out " + path("a.json")), 0);
  ASSERT_EQ(run("gen --n 6 --m 40 --outlier-frac 0.1 --seed 4 --out " + path("b.json")), 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  ASSERT_EQ(run("gen --n 6 --m 40 --outlier-frac 0.1 --seed 5 --out " + path("c.json")), 0);
  EXPECT_NE(slurp(path("a.json")), slurp(path("c.json")));
}

TEST_F(Cli, ConfigFileSuppliesDefaults) {
  std::ofstream(path("cfg.json")) << R"({"n": 5, "m": 30, "seed": 9})";
  ASSERT_EQ(run("gen --config " + path("cfg.json") + " --out " + path("a.json")), 0);
  EXPECT_EQ(read_json_file(path("a.json"))["m"], 30);
  ASSERT_EQ(run("gen --config " + path("cfg.json") + " --m 44 --out " + path("b.json")), 0);
  EXPECT_EQ(read_json_file(path("b.json"))["m"], 44);
  EXPECT_EQ(read_json_file(path("b.json"))["n"], 5);
}

TEST_F(Cli, SolveRecoversCleanInstance) {
  ASSERT_EQ(run("gen --n 20 --m 400 --r 1 --seed 2 --out " + path("inst.json")), 0);
  ASSERT_EQ(run("solve " + path("inst.json") + " --solver nonconvex --out " + path("res.json")), 0);
  const json res = read_json_file(path("res.json"));
  EXPECT_EQ(res["schema"], kResultSchema);
  EXPECT_LE(res["rel_error"].get<double>(), 1e-5);
  EXPECT_NE(out_.find("rel_error "), std::string::npos);
  EXPECT_EQ(res["config"]["t_max"], 30000);
}

TEST_F(Cli, ZeroBudgetReturnsSpectralInitializer) {
  ASSERT_EQ(run("gen --n 8 --m 80 --r 2 --seed 3 --out " + path("inst.json")), 0);
  ASSERT_EQ(run("solve " + path("inst.json") + " --tmax 0 --out " + path("res.json")), 0);
  const auto inst = std::get<Instance<double>>(instance_from_json(read_json_file(path("inst.json"))));
  const auto init = spectral_init(inst, 2);
  const json res = read_json_file(path("res.json"));
  EXPECT_EQ(res["iterations_run"], 0);
  const auto re = res["estimate"]["re"].get<std::vector<double>>();
  const auto expect = init.matrix().data();
  ASSERT_EQ(re.size(), expect.size());
  for (std::size_t i = 0; i < re.size(); ++i) EXPECT_EQ(re[i], expect[i]);
}

TEST_F(Cli, UnknownSolverIsUsageError) {
  ASSERT_EQ(run("gen --n 4 --m 20 --out " + path("inst.json")), 0);
  EXPECT_EQ(run("solve " + path("inst.json") + " --solver nonconvx --out " + path("r.json")), 2);
  EXPECT_NE(slurp(path("stderr.txt")).find("nonconvex"), std::string::npos);
}

TEST_F(Cli, MissingInstanceIsRuntimeError) {
  EXPECT_EQ(run("solve " + path("nope.json") + " --out " + path("r.json")), 1);
}

TEST_F(Cli, SweepWritesReproducibleGrid) {
  const std::string args = "sweep --axis1 m=40,80 --axis2 r=1,2 --n 6 --tmax 300 --trials 5 --seed 3 --jobs 2 --out ";
  ASSERT_EQ(run(args + path("a")), 0);
  const std::string csv = slurp(path("a.csv"));
  EXPECT_EQ(count_lines(csv), 5u);
  EXPECT_EQ(csv.substr(0, 6), "axis1,");
  EXPECT_EQ(slurp(path("a.pgm")).substr(0, 11), "P5\n2 2\n255\n");
  EXPECT_EQ(read_json_file(path("a.meta.json"))["trials"], 5);
  ASSERT_EQ(run(args + path("b")), 0);
  EXPECT_EQ(slurp(path("b.csv")), csv);
}

TEST_F(Cli, ProbeWritesReport) {
  ASSERT_EQ(run("probe --kind l1 --n 6 --m 120 --trials 5 --out " + path("p.json")), 0);
  const json p = read_json_file(path("p.json"));
  EXPECT_EQ(p["schema"], kProbeSchema);
  EXPECT_EQ(p["samples"].size(), 5u);
  EXPECT_EQ(run("probe --kind l2l1 --n 6 --m 121 --out " + path("q.json")), 2);
}

TEST_F(Cli, ReportTabulatesResults) {
  ASSERT_EQ(run("gen --n 6 --m 60 --seed 1 --out " + path("inst.json")), 0);
  ASSERT_EQ(run("solve " + path("inst.json") + " --solver nonconvex --tmax 100 --out " + path("a.json")), 0);
  ASSERT_EQ(run("solve " + path("inst.json") + " --solver wf --tmax 100 --out " + path("b.json")), 0);
  ASSERT_EQ(run("report " + path("a.json") + " " + path("b.json")), 0);
  EXPECT_EQ(count_lines(out_), 3u) << out_;
  EXPECT_EQ(out_.substr(0, out_.find('\n')), "solver,m,trials,mean_sq_error,median_sq_error");
  EXPECT_NE(out_.find("nonconvex(r),60,1,"), std::string::npos);
  EXPECT_NE(out_.find("wf(r),60,1,"), std::string::npos);
}

TEST_F(Cli, ReportErrors) {
  EXPECT_EQ(run("report"), 2);
  ASSERT_EQ(run("gen --n 4 --m 20 --out " + path("inst.json")), 0);
  EXPECT_EQ(run("report " + path("inst.json")), 1);
}

TEST_F(Cli, HelpExitsCleanly) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run(""), 2);
}
