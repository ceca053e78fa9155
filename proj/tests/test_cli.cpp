#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(DUALITY_LAB_EXE) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("duality_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, MeasuresJson) {
  const auto r = run("measures --alpha1 2 --alpha2 1 --oracle --json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("measures").at("C").get<double>(), 4.0 / 7.0, 1e-12);
}

TEST_F(Cli, MeasuresComplexSeed) {
  EXPECT_EQ(run("measures --alpha1 0.5,1.5 --alpha2 1").exit_code, 0);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("measures --alpha1 2").exit_code, 2);
  EXPECT_EQ(run("measures --alpha1 abc --alpha2 1").exit_code, 2);
  EXPECT_EQ(run("nonsense").exit_code, 2);
}

TEST_F(Cli, HelpExitsZero) {
  EXPECT_EQ(run("--help").exit_code, 0);
}

TEST_F(Cli, DomainErrorsExitOne) {
  EXPECT_EQ(run("measures --alpha1 5000 --alpha2 1").exit_code, 1);
  EXPECT_EQ(run("verify --samples 0").exit_code, 1);
  EXPECT_EQ(run("sweep --mode fig2a --amax 1 --astep 0 --out " + path("x.csv")).exit_code, 1);
}

TEST_F(Cli, VerifyFailureExitsOne) {
  EXPECT_EQ(run("verify --samples 50 --no-oracle --tol-closed 0").exit_code, 1);
  EXPECT_EQ(run("verify --samples 50").exit_code, 0);
}

TEST_F(Cli, FringeThenFit) {
  ASSERT_EQ(run("fringe --alpha1 2 --alpha2 1 --points 64 --out " + path("scan.csv")).exit_code, 0);
  const auto r = run("fit --json --input " + path("scan.csv"));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("coherence").get<double>(), 4.0 / 7.0, 1e-9);
}

TEST_F(Cli, FitReportsBadFiles) {
  EXPECT_EQ(run("fit --input " + path("missing.csv")).exit_code, 2);
  std::ofstream(path("bad.csv")) << "delta_theta,counts\n0,1\n0.1,x\n";
  EXPECT_EQ(run("fit --input " + path("bad.csv")).exit_code, 2);
}

TEST_F(Cli, SweepSurfaceSvgWritesMeasureFiles) {
  ASSERT_EQ(run("sweep --mode surface --amax 2 --astep 0.5 --gstep 0.25 --format svg --measures "
                "C,V_minus_C --out " + path("s.svg"))
                .exit_code,
            0);
  EXPECT_TRUE(fs::exists(dir_ / "s_C.svg"));
  EXPECT_TRUE(fs::exists(dir_ / "s_V_minus_C.svg"));
}

TEST_F(Cli, SweepRepeatable) {
  ASSERT_EQ(run("sweep --mode fig2b --oracle --out " + path("a.csv")).exit_code, 0);
  ASSERT_EQ(run("sweep --mode fig2b --oracle --out " + path("b.csv")).exit_code, 0);
  EXPECT_EQ(read_file(path("a.csv")), read_file(path("b.csv")));
  EXPECT_NE(read_file(path("a.csv")).find("oracle_residual"), std::string::npos);
}
