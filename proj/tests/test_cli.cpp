#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using fendec::cli::run;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fendec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, GenWritesOneFilePerReplication) {
  const auto r = cli({"gen", "--n1", "10", "--n2", "20", "--m2", "20", "--scens", "50", "--reps",
                      "5", "--seed", "7", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 5u);
  for (char c : std::string("abcde")) EXPECT_TRUE(fs::exists(dir_ / ("k.10.20.50" + std::string(1, c) + ".sipx")));
}

TEST_F(CliTest, GenIsDeterministic) {
  const auto a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(cli({"gen", "--n1", "4", "--n2", "3", "--scens", "2", "--seed", "9", "--out", a.string()}).code, 0);
  ASSERT_EQ(cli({"gen", "--n1", "4", "--n2", "3", "--scens", "2", "--seed", "9", "--out", b.string()}).code, 0);
  EXPECT_EQ(slurp(a / "k.4.3.2a.sipx"), slurp(b / "k.4.3.2a.sipx"));
}

TEST_F(CliTest, SeedFallsBackToEnvironment) {
  const auto a = dir_ / "a", b = dir_ / "b";
  ::setenv("FENDEC_SEED", "9", 1);
  const int code = cli({"gen", "--n1", "4", "--n2", "3", "--scens", "2", "--out", a.string()}).code;
  ::unsetenv("FENDEC_SEED");
  ASSERT_EQ(code, 0);
  ASSERT_EQ(cli({"gen", "--n1", "4", "--n2", "3", "--scens", "2", "--seed", "9", "--out", b.string()}).code, 0);
  EXPECT_EQ(slurp(a / "k.4.3.2a.sipx"), slurp(b / "k.4.3.2a.sipx"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({"gen", "--n1", "10"}).code, 2);  // missing --scens
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"solve", "x.sipx", "--alg", "simplex"}).code, 2);
  EXPECT_EQ(cli({"solve", "x.sipx", "--budget", "-1"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, SolveUnreadableFileIsIoError) {
  const auto r = cli({"solve", (dir_ / "missing.sipx").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

TEST_F(CliTest, SolveToyReachesZeroGap) {
  ASSERT_EQ(cli({"gen", "--n1", "4", "--n2", "3", "--m1", "2", "--m2", "3", "--scens", "3",
                 "--v-ub", "3", "--seed", "4", "--out", dir_.string()}).code, 0);
  const auto file = (dir_ / "k.4.3.3a.sipx").string();
  const auto r = cli({"solve", file, "--alg", "sfd-r", "--eps", "1e-6"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, fendec::cli::kCsvHeader);
  std::vector<std::string> cols;
  std::stringstream ss(row);
  for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
  ASSERT_EQ(cols.size(), 11u);
  EXPECT_EQ(cols[0], "k.4.3.3a");
  EXPECT_EQ(cols[1], "sfd-r");
  EXPECT_LE(std::stod(cols[7]), 1e-4);

  const auto direct = cli({"solve", file, "--alg", "direct"});
  ASSERT_EQ(direct.code, 0);
  std::stringstream ds(direct.out.substr(direct.out.find('\n') + 1));
  std::vector<std::string> dcols;
  for (std::string c; std::getline(ds, c, ',');) dcols.push_back(c);
  EXPECT_NEAR(std::stod(dcols[5]), std::stod(cols[5]), 1e-6 * std::max(1.0, std::abs(std::stod(cols[5]))));
}

TEST_F(CliTest, SolveAppendsCsvWithOneHeader) {
  ASSERT_EQ(cli({"gen", "--n1", "3", "--n2", "2", "--m1", "1", "--m2", "2", "--scens", "2",
                 "--v-ub", "2", "--out", dir_.string()}).code, 0);
  const auto file = (dir_ / "k.3.2.2a.sipx").string();
  const auto csv = (dir_ / "out.csv").string();
  ASSERT_EQ(cli({"solve", file, "--alg", "sfd", "--csv", csv}).code, 0);
  ASSERT_EQ(cli({"solve", file, "--alg", "sfd-r", "--csv", csv}).code, 0);
  const auto text = slurp(csv);
  EXPECT_EQ(count_lines(text), 3u);
  EXPECT_EQ(text.rfind(fendec::cli::kCsvHeader, 0), 0u);
}

TEST_F(CliTest, ImmediateBudgetStillWritesARow) {
  ASSERT_EQ(cli({"gen", "--scens", "5", "--out", dir_.string()}).code, 0);
  const auto r = cli({"solve", (dir_ / "k.10.20.5a.sipx").string(), "--alg", "sfd", "--budget", "0.001"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 2u);
}

TEST_F(CliTest, BenchRowsAveragesAndSummary) {
  const auto csv = (dir_ / "bench.csv").string();
  const auto svg = (dir_ / "bench.svg").string();
  const auto r = cli({"bench", "--gen", "--n1", "4", "--n2", "3", "--m1", "2", "--m2", "3",
                      "--scens", "2", "--v-ub", "2", "--reps", "3", "--seed", "1", "--budget",
                      "10", "--jobs", "2", "--csv", csv, "--svg", svg});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = slurp(csv);
  // header + 3 reps x 3 algorithms + 3 averages
  EXPECT_EQ(count_lines(text), 1u + 9u + 3u);
  EXPECT_NE(text.find("avg:k.4.3.2,sfd-r"), std::string::npos);
  EXPECT_NE(r.out.find("min average gap on k.4.3.2"), std::string::npos);
  EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
  // Paired rows share the instance column.
  EXPECT_NE(text.find("k.4.3.2a,sfd,"), std::string::npos);
  EXPECT_NE(text.find("k.4.3.2a,sfd-r,"), std::string::npos);
}

TEST_F(CliTest, BenchCountersRepeatUnderIterationBudgets) {
  std::vector<std::string> args{"bench", "--gen", "--n1", "5", "--n2", "4", "--m1", "2", "--m2",
                                "4", "--scens", "3", "--reps", "2", "--budget-iters", "4",
                                "--budget", "100", "--alg", "sfd,sfd-r"};
  auto strip_wall = [](const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
      std::vector<std::string> cols;
      std::stringstream ss(line);
      for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
      cols.at(9).clear();
      for (auto& c : cols) out += c + ',';
      out += '\n';
    }
    return out;
  };
  const auto a = cli(args), b = cli(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(strip_wall(a.out), strip_wall(b.out));
}

TEST_F(CliTest, BenchWithoutInstancesIsUsageError) {
  EXPECT_EQ(cli({"bench"}).code, 2);
}

TEST(CliDemo, PassesOnIp1ToIp3) {
  const auto r = cli({"isg-demo"});
  EXPECT_EQ(r.code, 0);
  std::size_t passes = 0;
  for (std::size_t p = r.out.find("PASS"); p != std::string::npos; p = r.out.find("PASS", p + 1)) ++passes;
  EXPECT_EQ(passes, 4u);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(CliDemo, CorruptedBoundFailsTheSelfCheck) {
  const auto r = cli({"isg-demo", "--ip3-u", "4"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("FAIL IP3 [full] ybar=(3,0)"), std::string::npos);
}

TEST(CliDemo, JsonOutput) {
  const auto r = cli({"isg-demo", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["pass"].get<bool>());
  ASSERT_EQ(doc["examples"].size(), 4u);
  EXPECT_EQ(doc["examples"][3]["ybar"], nlohmann::json::array({2.0, 0.0}));
  EXPECT_FALSE(doc["examples"][0]["trace"].empty());
}

}  // namespace
