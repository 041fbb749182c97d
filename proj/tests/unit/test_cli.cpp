#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "seisctl/cli.hpp"
#include "seisctl/config_io.hpp"
#include "seisctl/output.hpp"

namespace seisctl {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "seisctl");
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string shipped(int i) {
  return std::string(SEISCTL_SOURCE_DIR) + "/configs/scenario" + std::to_string(i) + ".cfg";
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("seisctl_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, ValidateShippedConfigs) {
  for (int i = 0; i <= 4; ++i) {
    const CliRun r = cli({"validate", shipped(i)});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("ok: scenario" + std::to_string(i)), std::string::npos);
  }
}

TEST(Cli, ValidateBadPathExitsOne) {
  const CliRun r = cli({"validate", "/nonexistent/file.cfg"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(cli({}).code, kExitValidation);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, RunWritesOutputsAndCompareMatchesItself) {
  const fs::path dir = scratch_dir("run");
  ScenarioConfig cfg = builtin_scenario(1);
  cfg.name = "cli_short";
  cfg.output.horizon = 48.0;
  cfg.output.snapshot_times = {0.0, 48.0};
  cfg.output.snapshot_nx = 5;
  cfg.output.snapshot_ny = 5;
  {
    std::ofstream(dir / "short.cfg") << format_config(cfg);
  }
  const CliRun r = cli({"run", (dir / "short.cfg").string(), "--out", (dir / "out").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const fs::path csv = dir / "out" / "timeseries.csv";
  ASSERT_TRUE(fs::exists(csv));
  EXPECT_TRUE(fs::exists(dir / "out" / "snapshots" / "u_001.txt"));
  // The resolved echo reparses to the same configuration.
  EXPECT_TRUE(parse_config(dir / "out" / "config.resolved.cfg") == cfg);

  EXPECT_EQ(cli({"compare", csv.string(), csv.string()}).code, kExitOk);

  // Perturb one value: a mismatch exits 1, a loose tolerance accepts it.
  CsvTable t = read_csv(csv);
  std::string text = slurp(csv);
  const std::string needle = "\n48,";
  const auto pos = text.find(needle);
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, needle.size(), "\n48.000001,");
  {
    std::ofstream(dir / "other.csv", std::ios::binary) << text;
  }
  EXPECT_EQ(cli({"compare", csv.string(), (dir / "other.csv").string(), "--cols", "t_hr"}).code, kExitValidation);
  EXPECT_EQ(cli({"compare", csv.string(), (dir / "other.csv").string(), "--cols", "t_hr", "--rtol", "1e-6"}).code,
            kExitOk);
  EXPECT_EQ(cli({"compare", csv.string(), (dir / "missing.csv").string()}).code, kExitRuntime);
}

TEST(Cli, InvalidConfigForRunExitsOne) {
  const fs::path dir = scratch_dir("bad");
  {
    std::ofstream(dir / "bad.cfg") << "schema_version = 1\nname = x\n";
  }
  const CliRun r = cli({"run", (dir / "bad.cfg").string(), "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("physics.c_hy"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(Cli, FixedStepRunsAreByteIdentical) {
  const fs::path dir = scratch_dir("det");
  ScenarioConfig cfg = builtin_scenario(2);
  cfg.name = "det";
  cfg.output.horizon = 24.0;
  cfg.output.cadence = 2.0;
  cfg.output.snapshot_times = {24.0};
  cfg.output.snapshot_nx = 9;
  cfg.output.snapshot_ny = 9;
  cfg.integrator.method = IntegratorMethod::kRk4;
  cfg.integrator.dt = 0.05;
  {
    std::ofstream(dir / "det.cfg") << format_config(cfg);
  }
  ASSERT_EQ(cli({"run", (dir / "det.cfg").string(), "--out", (dir / "a").string()}).code, kExitOk);
  ASSERT_EQ(cli({"run", (dir / "det.cfg").string(), "--out", (dir / "b").string()}).code, kExitOk);
  EXPECT_EQ(slurp(dir / "a" / "timeseries.csv"), slurp(dir / "b" / "timeseries.csv"));
  EXPECT_EQ(slurp(dir / "a" / "snapshots" / "u_000.txt"), slurp(dir / "b" / "snapshots" / "u_000.txt"));
}

}  // namespace
}  // namespace seisctl
