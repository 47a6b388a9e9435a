#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cgslab/app.hpp"

using namespace cgslab;
namespace fs = std::filesystem;

namespace {

cgs::ErrorKind parse_error_kind(const std::string& text, std::string* message = nullptr) {
  try {
    parse_config(text);
  } catch (const cgs::Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return cgs::ErrorKind::InvalidArgument;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cgslab_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Returns the process exit code.
  int cli(const std::string& config, const std::string& out, const std::string& extra = "") {
    const fs::path cfg = dir_ / (out + ".json");
    std::ofstream(cfg) << config;
    const std::string cmd = std::string(CGSLAB_CLI_PATH) + " --config " + cfg.string() + " --out " +
                            (dir_ / out).string() + " " + extra + " > " + (dir_ / (out + ".log")).string() +
                            " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::vector<std::vector<std::string>> csv(const std::string& out, const std::string& name) {
    std::istringstream in(slurp(dir_ / out / name));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      rows.push_back(cells);
    }
    return rows;
  }

  fs::path dir_;
};

const char* kMcConfig =
    R"({"command": "mc", "Lx": 2, "Ly": 2, "seed": 5, "K_eff": 20, "sweeps": 300, "burn_in": 50,
        "measure_every": 5, "chains": 3, "blocks": 4})";

}  // namespace

TEST(CliConfig, MinimalEdIsValid) {
  const RunConfig c = parse_config(R"({"command": "ed", "Lx": 2, "Ly": 2, "lambda_J": 1, "lambda_flip": 1})");
  EXPECT_EQ(c.command, Command::Ed);
  EXPECT_EQ(c.lx, 2);
  EXPECT_EQ(c.params.at("lambda_J").get<double>(), 1.0);
  EXPECT_TRUE(c.params.at("lambda_flip_b").is_null());
  EXPECT_EQ(c.format, OutputFormat::Csv);
}

TEST(CliConfig, OddDimensionNamesEvenRequirement) {
  std::string msg;
  EXPECT_EQ(parse_error_kind(R"({"command": "ed", "Lx": 3, "Ly": 2, "lambda_J": 1, "lambda_flip": 1})", &msg),
            cgs::ErrorKind::Config);
  EXPECT_NE(msg.find("even"), std::string::npos) << msg;
}

TEST(CliConfig, McNeedsSeed) {
  std::string msg;
  EXPECT_EQ(parse_error_kind(R"({"command": "mc", "Lx": 4, "Ly": 4})", &msg), cgs::ErrorKind::Config);
  EXPECT_NE(msg.find("seed"), std::string::npos);
  EXPECT_NO_THROW(parse_config(R"({"command": "mc", "Lx": 4, "Ly": 4})", 9));
  EXPECT_EQ(parse_config(R"({"command": "mc", "Lx": 4, "Ly": 4, "seed": 1})", 9).seed, 9u);
}

TEST(CliConfig, RejectsUnknownKeysWithPath) {
  std::string msg;
  parse_error_kind(R"({"command": "wkb", "jc_mni": 3})", &msg);
  EXPECT_NE(msg.find("jc_mni"), std::string::npos);
  parse_error_kind(R"({"command": "circuit", "squid": {"e_lj": 0.1}})", &msg);
  EXPECT_NE(msg.find("squid.e_lj"), std::string::npos) << msg;
  parse_error_kind(R"({"command": "symmetry", "Lx": 2, "Ly": 2})", &msg);
  EXPECT_NE(msg.find("Lx"), std::string::npos);
  EXPECT_EQ(parse_error_kind(R"({"command": "anneal"})", &msg), cgs::ErrorKind::Config);
  EXPECT_NE(msg.find("anneal"), std::string::npos);
}

TEST(CliConfig, TypeErrorsNameKeyAndType) {
  std::string msg;
  parse_error_kind(R"({"command": "mc", "Lx": 4, "Ly": 4, "seed": 1, "sweeps": "many"})", &msg);
  EXPECT_NE(msg.find("'sweeps'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("integer"), std::string::npos) << msg;
  parse_error_kind(R"({"command": "ed", "Lx": 2, "Ly": 2, "lambda_J": 1})", &msg);
  EXPECT_NE(msg.find("lambda_flip"), std::string::npos) << msg;
  parse_error_kind(R"({"command": "wxy", "cluster": "cube"})", &msg);
  EXPECT_NE(msg.find("cluster"), std::string::npos);
  EXPECT_EQ(parse_error_kind("{not json"), cgs::ErrorKind::Config);
}

TEST(CliConfig, ExitCodes) {
  EXPECT_EQ(exit_code(cgs::ErrorKind::Config), 2);
  EXPECT_EQ(exit_code(cgs::ErrorKind::InvalidArgument), 2);
  EXPECT_EQ(exit_code(cgs::ErrorKind::Numeric), 3);
  EXPECT_EQ(exit_code(cgs::ErrorKind::SizeGuard), 4);
}

TEST(CliConfig, WorkerEnvironmentOnlyWithoutFlag) {
  ::setenv("CGSLAB_WORKERS", "3", 1);
  EXPECT_EQ(resolve_workers(std::nullopt), 3u);
  EXPECT_EQ(resolve_workers(5u), 5u);
  ::setenv("CGSLAB_WORKERS", "lots", 1);
  EXPECT_THROW(resolve_workers(std::nullopt), cgs::Error);
  ::unsetenv("CGSLAB_WORKERS");
  EXPECT_EQ(resolve_workers(std::nullopt), 1u);
}

TEST(CliConfig, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_F(CliRun, EdSpectrumMatchesStabilizerCount) {
  ASSERT_EQ(cli(R"({"command": "ed", "Lx": 2, "Ly": 2, "lambda_J": 1, "lambda_flip": 1})", "ed"), 0);
  const auto rows = csv("ed", "spectrum.csv");
  ASSERT_GE(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"index", "energy", "oracle", "difference"}));
  // 4 stars, 4 plaquettes, all satisfied; torus degeneracy 4. One pair of
  // violated stabilizers costs 2 * 2.
  for (int i = 1; i <= 4; ++i) EXPECT_NEAR(std::stod(rows[i][1]), -8.0, 1e-10);
  EXPECT_NEAR(std::stod(rows[5][1]), -4.0, 1e-10);
  EXPECT_EQ(rows.size(), 1u + 256u);
  const std::string first = slurp(dir_ / "ed" / "spectrum.csv").substr(0, 15);
  EXPECT_EQ(first, "# cgslab run_id");
}

TEST_F(CliRun, SymmetryListsExamplePair) {
  ASSERT_EQ(cli(R"({"command": "symmetry"})", "sym"), 0);
  const json doc = json::parse(slurp(dir_ / "sym" / "results.json"));
  const json& s = doc.at("tasks").at("automorphisms");
  const json L = json::array({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}});
  const json R = json::array({{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  bool found = false;
  for (const auto& a : s.at("automorphisms")) found = found || (a.at("L") == L && a.at("R") == R);
  EXPECT_TRUE(found);
  EXPECT_TRUE(s.at("closed_under_composition").get<bool>());
  EXPECT_TRUE(s.at("is_hadamard").get<bool>());
}

TEST_F(CliRun, McDigestsRepeatAndIgnoreWorkers) {
  ASSERT_EQ(cli(kMcConfig, "a", "--workers 1"), 0);
  ASSERT_EQ(cli(kMcConfig, "b", "--workers 1"), 0);
  ASSERT_EQ(cli(kMcConfig, "c", "--workers 3"), 0);
  const json ma = json::parse(slurp(dir_ / "a" / "manifest.json"));
  const json mb = json::parse(slurp(dir_ / "b" / "manifest.json"));
  const json mc = json::parse(slurp(dir_ / "c" / "manifest.json"));
  EXPECT_EQ(ma.at("files"), mb.at("files"));
  EXPECT_EQ(ma.at("files"), mc.at("files"));
  EXPECT_EQ(ma.at("run_id"), mc.at("run_id"));
  // The manifest digests describe the files on disk.
  for (const auto& f : ma.at("files")) {
    const std::string bytes = slurp(dir_ / "a" / f.at("path").get<std::string>());
    EXPECT_EQ(sha256_hex(bytes), f.at("sha256").get<std::string>());
  }
  EXPECT_EQ(ma.at("seed").get<std::uint64_t>(), 5u);
  EXPECT_FALSE(ma.at("tasks").empty());

  ASSERT_EQ(cli(kMcConfig, "d", "--seed 6"), 0);
  const json md = json::parse(slurp(dir_ / "d" / "manifest.json"));
  EXPECT_NE(ma.at("files"), md.at("files"));
}

TEST_F(CliRun, ExitCodesFromBinary) {
  EXPECT_EQ(cli(R"({"command": "ed", "Lx": 3, "Ly": 2, "lambda_J": 1, "lambda_flip": 1})", "odd"), 2);
  EXPECT_NE(slurp(dir_ / "odd.log").find("even"), std::string::npos);
  EXPECT_EQ(cli(R"({"command": "mc", "Lx": 2, "Ly": 2})", "noseed"), 2);
  EXPECT_EQ(cli(R"({"command": "ed", "Lx": 6, "Ly": 6, "lambda_J": 1, "lambda_flip": 1})", "big"), 4);
  EXPECT_NE(slurp(dir_ / "big.log").find("ed/spectrum"), std::string::npos);
  EXPECT_EQ(cli(R"({"command": "loops", "Lx": 6, "Ly": 6})", "enum"), 4);
}

TEST_F(CliRun, OtherCommandsProduceResults) {
  ASSERT_EQ(cli(R"({"command": "classical", "Lx": 4, "Ly": 4, "steps": 16, "plaquette": [1, 0], "manifold_samples": 2000})", "cl"), 0);
  const json cl = json::parse(slurp(dir_ / "cl" / "results.json")).at("tasks");
  EXPECT_LT(cl.at("flip_merge").at("max_excursion").get<double>(), 1e-9);
  EXPECT_GT(cl.at("flip_direct").at("max_excursion").get<double>(), 1e-3);
  EXPECT_EQ(cl.at("manifold").at("below_bound").get<int>(), 0);
  EXPECT_NEAR(cl.at("link_shift").at("fixed_matter_cost").get<double>(), 8.0, 1e-9);

  ASSERT_EQ(cli(R"({"command": "loops", "Lx": 2, "Ly": 2, "fugacity_K": [10], "fugacity_p": [3]})", "lp"), 0);
  const json lp = json::parse(slurp(dir_ / "lp" / "results.json")).at("tasks");
  EXPECT_EQ(lp.at("enumeration").at("coverings").get<int>(), 81);
  EXPECT_EQ(lp.at("z2").at("z2_configs").get<int>(), 32);
  EXPECT_EQ(csv("lp", "fugacity.csv").size(), 2u);

  ASSERT_EQ(cli(R"({"command": "wxy", "cluster": "waffle", "h_matter": 0.3})", "wxy"), 0);
  const json wx = json::parse(slurp(dir_ / "wxy" / "results.json")).at("tasks").at("wxy");
  EXPECT_LT(wx.at("hamiltonian_commutator").get<double>(), 1e-12);
  EXPECT_TRUE(wx.at("tables").at("wxy_levels").contains("rows"));

  ASSERT_EQ(cli(R"({"command": "wkb", "k": 0.5, "K": 2})", "wkb"), 0);
  const json wk = json::parse(slurp(dir_ / "wkb" / "results.json")).at("tasks").at("probe");
  EXPECT_NEAR(wk.at("exponent").get<double>(), 0.25, 1e-6);

  ASSERT_EQ(cli(R"({"command": "circuit", "calibration": {"draws": 50}, "squid": {"e_LJ": 0.01}})", "cir"), 0);
  const json ci = json::parse(slurp(dir_ / "cir" / "results.json")).at("tasks");
  EXPECT_LT(ci.at("calibration").at("max_relative_error").get<double>(), 1e-10);
  EXPECT_EQ(ci.at("calibration").at("calibrated").get<int>() + ci.at("calibration").at("infeasible_draws").get<int>(), 50);
  EXPECT_GT(ci.at("capacitance").at("min_eigenvalue").get<double>(), 0.0);

  EXPECT_EQ(cli(R"({"command": "circuit", "calibration": {"targets": [{"J_target": 1, "J_w_actual": 2}]}})", "bad"), 2);
}
