#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "levelseg/phantom.hpp"
#include "levelseg/run.hpp"
#include "oracles.hpp"

using namespace levelseg;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "levelseg_run_tests" / name;
  fs::remove_all(dir);
  return dir;
}

nlohmann::json summary_of(const fs::path& dir) {
  return nlohmann::json::parse(oracle::slurp(dir / "run_summary.json"));
}

Mask read_mask(const fs::path& p) {
  const oracle::Pgm pgm = oracle::parse_p5(oracle::slurp(p));
  Mask m(pgm.width, pgm.height);
  for (std::size_t i = 0; i < m.bits.size(); ++i) m.bits[i] = pgm.pixels[i] == 255;
  return m;
}

}  // namespace

TEST(Validate, EnumeratesEveryViolation) {
  RunConfig c;
  c.model = "modified";
  c.lambda = 2.0;
  c.input = "x.pgm";
  c.phantom = "separated";
  c.emit = {"mask", "sparkles"};
  c.eps = -1;
  const auto v = validate(c);
  EXPECT_EQ(v.size(), 4u);
  auto mentions = [&](const std::string& needle) {
    for (const auto& m : v)
      if (m.find(needle) != std::string::npos) return true;
    return false;
  };
  EXPECT_TRUE(mentions("--lambda"));
  EXPECT_TRUE(mentions("--input"));
  EXPECT_TRUE(mentions("sparkles"));
  EXPECT_TRUE(mentions("eps"));
}

TEST(Validate, ModelParameterCompatibility) {
  RunConfig c;
  c.phantom = "disk";
  c.model = "chan-vese";
  c.alpha = 0.5;
  EXPECT_EQ(validate(c).size(), 1u);
  c.model = "geodesic";
  c.alpha.reset();
  c.alphas = std::vector<double>{0.3, 0.5, 0.7};
  EXPECT_EQ(validate(c).size(), 1u);
  c.model = "sweep";
  EXPECT_TRUE(validate(c).empty());
  c.alphas = std::vector<double>{0.5, 0.3};
  EXPECT_EQ(validate(c).size(), 2u);
  c.model = "";
  c.alphas.reset();
  EXPECT_EQ(validate(c).size(), 1u);
  c.model = "modified";
  c.init = "blob:1";
  c.emit = {"sweep"};
  EXPECT_EQ(validate(c).size(), 2u);
}

TEST(Validate, GrayLevelUnitsConverted) {
  RunConfig c;
  c.mu = 5;
  c.nu = 255;
  const EvolveParams p = evolve_params(c);
  EXPECT_DOUBLE_EQ(p.mu, 5.0 / (255.0 * 255.0));
  EXPECT_DOUBLE_EQ(p.nu, 1.0 / 255.0);
  EXPECT_EQ(p.dt, 0.0);
}

TEST(Run, ConfigErrorStillWritesSummary) {
  const fs::path dir = fresh_dir("config_error");
  RunConfig c;
  c.model = "modified";
  c.lambda = 2.0;
  c.phantom = "separated";
  c.out_dir = dir.string();
  const RunOutcome out = run(c);
  EXPECT_EQ(out.exit_code, kExitConfigError);
  EXPECT_TRUE(out.files.empty());
  const auto s = summary_of(dir);
  EXPECT_EQ(s["status"], "error");
  EXPECT_EQ(s["errors"].size(), 1u);
  EXPECT_TRUE(s["files"].empty());
}

TEST(Run, MissingInputIsRuntimeError) {
  const fs::path dir = fresh_dir("missing_input");
  RunConfig c;
  c.model = "chan-vese";
  c.input = (dir / "nope.pgm").string();
  c.out_dir = dir.string();
  const RunOutcome out = run(c);
  EXPECT_EQ(out.exit_code, kExitRuntimeError);
  EXPECT_EQ(summary_of(dir)["exit_code"], kExitRuntimeError);
}

TEST(Run, ModifiedSeparatedRejectsNoise) {
  const fs::path dir = fresh_dir("modified");
  RunConfig c;
  c.model = "modified";
  c.phantom = "separated";
  c.alpha = 0.6;
  c.mu = 5;
  c.nu = 0;
  c.out_dir = dir.string();
  const RunOutcome out = run(c);
  ASSERT_EQ(out.exit_code, kExitOk) << (out.errors.empty() ? "" : out.errors[0]);
  const Phantom ph = default_separated();
  const Mask m = read_mask(dir / "mask.pgm");
  EXPECT_LE(oracle::overlap(m, ph.noise_mask), 0.05);
  EXPECT_GE(oracle::overlap(m, ph.truth_mask), 0.95);

  // Every artifact is listed with a checksum of its bytes.
  const auto s = summary_of(dir);
  EXPECT_EQ(s["status"], "ok");
  EXPECT_EQ(s["files"].size(), 4u);
  for (const auto& f : s["files"]) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x",
                  oracle::crc32(oracle::slurp(dir / f["name"].get<std::string>())));
    EXPECT_EQ(f["crc32"], buf) << f["name"];
  }
}

TEST(Run, ChanVeseLambdaWritesTrace) {
  const fs::path dir = fresh_dir("chan_vese");
  RunConfig c;
  c.model = "chan-vese";
  c.phantom = "separated";
  c.lambda = 3.0;
  c.max_iters = 100;
  c.emit = {"trace"};
  c.out_dir = dir.string();
  const RunOutcome out = run(c);
  ASSERT_EQ(out.exit_code, kExitOk);
  ASSERT_TRUE(fs::exists(dir / "trace.csv"));
  EXPECT_FALSE(fs::exists(dir / "mask.pgm"));
  EXPECT_EQ(summary_of(dir)["params"]["lambda"], 3.0);
}

TEST(Run, DeterministicArtifacts) {
  std::vector<std::vector<unsigned char>> first;
  for (int rep = 0; rep < 2; ++rep) {
    const fs::path dir = fresh_dir("determinism" + std::to_string(rep));
    RunConfig c;
    c.model = "chan-vese";
    c.phantom = "embedded";
    c.max_iters = 150;
    c.emit = {"overlay", "mask", "contour", "trace", "phantom"};
    c.out_dir = dir.string();
    ASSERT_EQ(run(c).exit_code, kExitOk);
    std::vector<std::vector<unsigned char>> bytes;
    for (const char* name : {"overlay.png", "mask.pgm", "contour.csv", "trace.csv",
                             "phantom.pgm", "phantom.json", "run_summary.json"}) {
      bytes.push_back(oracle::slurp(dir / name));
    }
    if (rep == 0) first = bytes;
    else EXPECT_EQ(bytes, first);
  }
}

TEST(Run, SweepEmitsReport) {
  const fs::path dir = fresh_dir("sweep");
  RunConfig c;
  c.model = "sweep";
  c.phantom = "disk";
  c.alphas = std::vector<double>{0.4, 0.6, 0.8};
  c.max_iters = 60;
  c.out_dir = dir.string();
  const RunOutcome out = run(c);
  ASSERT_EQ(out.exit_code, kExitOk) << (out.errors.empty() ? "" : out.errors[0]);
  EXPECT_TRUE(fs::exists(dir / "sweep.csv"));
  const auto j = nlohmann::json::parse(oracle::slurp(dir / "sweep_summary.json"));
  EXPECT_TRUE(j.contains("chosen_alpha"));
  EXPECT_EQ(summary_of(dir)["sweep"]["chosen_alpha"], j["chosen_alpha"]);
}

#ifdef LEVELSEG_CLI_PATH
TEST(Cli, RejectsLambdaWithModified) {
  const fs::path dir = fresh_dir("cli_reject");
  const std::string cmd = std::string(LEVELSEG_CLI_PATH) +
                          " --model modified --lambda 2 --phantom separated --out " +
                          dir.string() + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitConfigError);
  EXPECT_EQ(summary_of(dir)["status"], "error");
}

TEST(Cli, UnknownFlagIsConfigError) {
  const std::string cmd = std::string(LEVELSEG_CLI_PATH) + " --model modified --bogus > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitConfigError);
}

TEST(Cli, ShortRunSucceeds) {
  const fs::path dir = fresh_dir("cli_ok");
  const std::string cmd = std::string(LEVELSEG_CLI_PATH) +
                          " --model chan-vese --phantom disk --max-iters 20 --emit mask,contour"
                          " --init grid:2,2,10 --out " + dir.string() + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_TRUE(fs::exists(dir / "mask.pgm"));
  EXPECT_TRUE(fs::exists(dir / "contour.csv"));
  EXPECT_EQ(summary_of(dir)["init"], "grid:2,2,10");
}
#endif
