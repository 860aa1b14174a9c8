#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "opradius/bounds.hpp"
#include "opradius/matrix_io.hpp"

#ifndef OPRADIUS_CLI_PATH
#error "OPRADIUS_CLI_PATH must point at the opradius executable"
#endif

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun invoke(const std::string& args) {
  const std::string cmd = std::string(OPRADIUS_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("opradius_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke("--help").code, 0);
  EXPECT_EQ(invoke("").code, 2);
  EXPECT_EQ(invoke("frobnicate").code, 2);
  EXPECT_EQ(invoke("extremal verify").code, 2);
  EXPECT_EQ(invoke("extremal verify --n 13").code, 2);
  EXPECT_EQ(invoke("extremal verify --n 12 --format yaml").code, 2);
  EXPECT_EQ(invoke("extremal scaling --kmin 1 --kmax 2 --tol 1").code, 2);
  EXPECT_EQ(invoke("bounds --rho 3").code, 2);
  EXPECT_EQ(invoke("gap --matrix " + (dir_ / "missing.json").string()).code, 2);
  EXPECT_EQ(invoke("random-test --samples 0").code, 2);
}

TEST_F(CliTest, ExtremalVerify) {
  const CliRun text = invoke("extremal verify --n 12");
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("PASS sum_norm"), std::string::npos);
  EXPECT_EQ(text.out.find("FAIL"), std::string::npos);
  const CliRun json = invoke("extremal verify --n 12 --json");
  ASSERT_EQ(json.code, 0);
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_TRUE(j["all_pass"].get<bool>());
  EXPECT_EQ(j["n"].get<int>(), 12);
  EXPECT_EQ(invoke("extremal verify --n 12 --format json").out, json.out);
}

TEST_F(CliTest, GapReport) {
  const fs::path m = dir_ / "witness.json";
  opradius::write_matrix_file(m, opradius::lower_witness(1.25).matrix);
  const CliRun r = invoke("gap --matrix " + m.string());
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"distance", "norm_excess", "inverse_excess", "w", "w_inv", "bound", "psi_bound"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_NEAR(j["distance"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j["w"].get<double>(), 1.25, 1e-9);
  EXPECT_NEAR(j["bound"].get<double>(), 1.5, 1e-9);  // min(2 + sqrt 3, 2 r) - 1
  EXPECT_EQ(invoke("gap --rho 1.5 --matrix " + m.string()).code, 0);

  const fs::path singular = dir_ / "singular.json";
  opradius::write_matrix_file(singular, opradius::ComplexMatrix{{1.0, 1.0}, {1.0, 1.0}});
  EXPECT_EQ(invoke("gap --matrix " + singular.string()).code, 1);
}

TEST_F(CliTest, BoundsFormats) {
  const CliRun csv = invoke("bounds --rho 2 --r-min 1 --r-max 1.1 --steps 5");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "r,X,psi_upper,psi_lower,asymptotic");
  const CliRun json = invoke("bounds --rho 1.5 --steps 3 --format json");
  ASSERT_EQ(json.code, 0);
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["rows"].size(), 3u);
  EXPECT_TRUE(j["rows"][0].contains("psi_upper"));
  EXPECT_EQ(invoke("bounds --format text --steps 2").code, 0);
}

TEST_F(CliTest, RangeAndRandom) {
  const fs::path m = dir_ / "m.json";
  opradius::write_matrix_file(m, opradius::ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
  const CliRun csv = invoke("range --matrix " + m.string() + " --samples 16");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 17);
  const CliRun json = invoke("range --matrix " + m.string() + " --samples 16 --format json");
  EXPECT_EQ(nlohmann::json::parse(json.out)["points"].size(), 16u);

  const CliRun rnd = invoke("random-test --rho 2 --samples 20 --seed 7");
  ASSERT_EQ(rnd.code, 0);
  const auto j = nlohmann::json::parse(rnd.out);
  EXPECT_EQ(j["violations"].get<int>(), 0);
  EXPECT_LE(j["max_ratio"].get<double>(), 1.0);
}

TEST_F(CliTest, ScalingIsByteIdenticalAndAtomic) {
  const fs::path a = dir_ / "a.csv", b = dir_ / "b.csv";
  ASSERT_EQ(invoke("extremal scaling --kmin 1 --kmax 4 --seed 7 --out " + a.string()).code, 0);
  ASSERT_EQ(invoke("extremal scaling --kmin 1 --kmax 4 --seed 7 --out " + b.string()).code, 0);
  const std::string first = slurp(a);
  EXPECT_EQ(first, slurp(b));
  EXPECT_EQ(first.substr(0, first.find('\n')), "n,eps,delta,w,w_inv");
  EXPECT_FALSE(fs::exists(a.string() + ".tmp"));
  EXPECT_EQ(invoke("extremal scaling --kmin 1 --kmax 4 --seed 7").out, first);
  const auto j = nlohmann::json::parse(invoke("extremal scaling --kmin 1 --kmax 2 --format json").out);
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_TRUE(j.contains("slope"));
}
