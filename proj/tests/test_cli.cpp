#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"

namespace nmd::cli {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "nmd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nmd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({}).code, kExitInvalidInput);
  EXPECT_EQ(run({"bogus"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"evolve", "--a", "abc"}).code, kExitInvalidInput);
}

TEST(Cli, InvalidInputExitCode) {
  EXPECT_EQ(run({"correlations", "--c", "1,1,1"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"evolve", "--c", "0.1,0.2"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"evolve", "--c", "0.1,0.16,0.1", "--a", "-1"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"evolve", "--c", "0.1,0.16,0.1", "--channel-a", "amplitude"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"evolve"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"figure", "4", "a"}).code, kExitInvalidInput);
  const CliResult r = run({"evolve", "--c", "0.1,0.16,0.1", "--family", "synchronized", "--family-param", "0.6"});
  EXPECT_EQ(r.code, kExitInvalidInput);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, EvolveInitialRowHoldsBellWeights) {
  const CliResult r = run({"evolve", "--c", "0.6,0.36,-0.6", "--t-steps", "11", "--t-max", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[0].rfind("# evolve", 0), 0u);
  EXPECT_EQ(rows[1], "a_t,p,c_x,c_y,c_z,lambda_psi_plus,lambda_phi_plus,lambda_phi_minus,lambda_psi_minus");
  EXPECT_EQ(rows[2], "0,1,0.6,0.36,-0.6,0.64,0.16,0.04,0.16");
  EXPECT_EQ(rows[12].rfind("1,0.600423599,", 0), 0u);
}

TEST(Cli, MarkovianDecayColumn) {
  const CliResult r = run({"evolve", "--family", "synchronized", "--family-param", "0.6", "--markovian",
                     "--t-steps", "2", "--t-max", "0.5", "--a", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  // t_max is in units of 1/a: a t = 0.5 so p = exp(-1).
  EXPECT_EQ(rows[3].rfind("0.5,0.367879441,", 0), 0u);
}

TEST(Cli, CorrelationsTextAndJson) {
  const CliResult text = run({"correlations", "--c", "0.1,0.16,0.1", "--oracle"});
  ASSERT_EQ(text.code, kExitOk) << text.err;
  EXPECT_NE(text.out.find("0.0358871141"), std::string::npos);
  EXPECT_NE(text.out.find("0.018546105"), std::string::npos);
  EXPECT_NE(text.out.find("0.0173410091"), std::string::npos);

  const CliResult json = run({"correlations", "--family", "proportional", "--family-param", "0.6", "--format", "json"});
  ASSERT_EQ(json.code, kExitOk) << json.err;
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_NEAR(j["I"].get<double>(), 1.2780719051126377, 1e-8);
  EXPECT_NEAR(j["C"].get<double>(), 1.0, 1e-9);
  EXPECT_EQ(j["axis"], "z");
}

TEST_F(CliFiles, CorrelationsFromDensityFile) {
  {
    std::ofstream rho(path("product.json"));
    rho << R"({"re": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})";
  }
  const CliResult r = run({"correlations", "--rho", path("product.json"), "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(lines(r.out)[1], "0,0,0");

  EXPECT_EQ(run({"correlations", "--rho", path("missing.json")}).code, kExitIoError);
  {
    std::ofstream bad(path("bad.json"));
    bad << R"({"re": [[0.7,0,0,0],[0,0.7,0,0],[0,0,-0.2,0],[0,0,0,-0.2]]})";
  }
  EXPECT_EQ(run({"correlations", "--rho", path("bad.json")}).code, kExitInvalidInput);
}

TEST(Cli, CharacteristicTime) {
  const CliResult r = run({"tc", "--c", "0.1,0.16,0.1", "--oracle"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto out = lines(r.out);
  EXPECT_EQ(out[0], "a*t_c = 0.947710286");
  EXPECT_EQ(out[1].rfind("kink at a*t = 0.94", 0), 0u);

  const CliResult none = run({"tc", "--c", "0.2,0.1,0.2"});
  EXPECT_EQ(lines(none.out)[0], "a*t_c = none");
  EXPECT_EQ(run({"tc", "--c", "0.1,0.16,0.3"}).code, kExitInvalidInput);
}

TEST_F(CliFiles, FigureIsDeterministicAndWritesScript) {
  ASSERT_EQ(run({"figure", "3", "a", "--out", path("one.csv")}).code, kExitOk);
  ASSERT_EQ(run({"figure", "3", "a", "--out", path("two.csv"), "--threads", "4"}).code, kExitOk);
  const std::string one = slurp(path("one.csv"));
  EXPECT_EQ(one, slurp(path("two.csv")));
  EXPECT_EQ(lines(one).size(), 2002u);
  EXPECT_TRUE(fs::exists(path("one.gp")));
  EXPECT_NE(slurp(path("one.gp")).find("'one.csv'"), std::string::npos);
}

TEST_F(CliFiles, DumpConfigRoundTrip) {
  ASSERT_EQ(run({"trajectory", "--c", "0.1,0.16,0.1", "--A", "10", "--gamma", "0.01", "--t-max", "3",
                 "--t-steps", "300", "--out", path("direct.csv"), "--dump-config", path("run.ini")})
                .code,
            kExitOk);
  ASSERT_EQ(run({"trajectory", "--config", path("run.ini"), "--out", path("replay.csv")}).code, kExitOk);
  EXPECT_EQ(slurp(path("direct.csv")), slurp(path("replay.csv")));

  // Flags override the file.
  ASSERT_EQ(run({"trajectory", "--config", path("run.ini"), "--t-steps", "150", "--out", path("short.csv")}).code,
            kExitOk);
  EXPECT_EQ(lines(slurp(path("short.csv"))).size(), 152u);
}

TEST_F(CliFiles, ConfigErrors) {
  {
    std::ofstream ini(path("bad.ini"));
    ini << "[kernel]\na = fast\n";
  }
  EXPECT_EQ(run({"evolve", "--config", path("bad.ini"), "--c", "0,0,0"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"evolve", "--config", path("absent.ini"), "--c", "0,0,0"}).code, kExitIoError);
}

TEST(Cli, TrajectoryMarkovianSwapsColumns) {
  const CliResult base = run({"trajectory", "--c", "0.1,0.16,0.1", "--t-steps", "5", "--format", "json"});
  const CliResult markov = run({"trajectory", "--c", "0.1,0.16,0.1", "--t-steps", "5", "--format", "json", "--markovian"});
  ASSERT_EQ(base.code, kExitOk) << base.err;
  ASSERT_EQ(markov.code, kExitOk) << markov.err;
  const auto b = nlohmann::json::parse(base.out), m = nlohmann::json::parse(markov.out);
  const auto& cols = b["columns"];
  ASSERT_EQ(cols[1], "p");
  ASSERT_EQ(cols[9], "p_markov");
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(m["rows"][i][1], b["rows"][i][9]);
    EXPECT_EQ(m["rows"][i][7], b["rows"][i][12]);
  }
}

TEST(Cli, VerifyExitCodes) {
  const CliResult ok = run({"verify", "--states", "50", "--threads", "2"});
  EXPECT_EQ(ok.code, kExitOk) << ok.out << ok.err;
  EXPECT_EQ(lines(ok.out).size(), 7u);
  EXPECT_EQ(run({"verify", "--states", "20", "--inject", "flipped-spectrum"}).code, kExitVerificationFailed);
  EXPECT_EQ(run({"verify", "--states", "20", "--ode-step", "0.05"}).code, kExitVerificationFailed);
  EXPECT_EQ(run({"verify", "--inject", "cosmic-ray"}).code, kExitInvalidInput);
}

}  // namespace
}  // namespace nmd::cli
