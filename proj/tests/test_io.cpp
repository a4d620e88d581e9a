#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "helpers.hpp"
#include "nmd/io.hpp"

namespace nmd {
namespace {

TEST(FormatNumber, NineSignificantDigits) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.600423599106272), "0.600423599");
  EXPECT_EQ(format_number(-2.5e-12), "-2.5e-12");
}

TEST(DensityJson, RoundTripIsExact) {
  std::mt19937_64 rng(51);
  QubitMatrix a;
  a << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  const DensityMatrix product = DensityMatrix::product(a, 0.5 * QubitMatrix::Identity());
  EXPECT_EQ(density_from_json(density_to_json(product)).max_abs_difference(product), 0.0);
  for (int n = 0; n < 50; ++n) {
    const DensityMatrix rho = bell_to_density(test::random_state(rng));
    ASSERT_EQ(density_from_json(density_to_json(rho)).max_abs_difference(rho), 0.0);
  }
}

TEST(DensityJson, ImaginaryPartOptional) {
  const DensityMatrix rho = density_from_json(
      R"({"re": [[0.25,0,0,0],[0,0.25,0,0],[0,0,0.25,0],[0,0,0,0.25]]})");
  EXPECT_EQ(rho.max_abs_difference(DensityMatrix::maximally_mixed()), 0.0);
}

TEST(DensityJson, MalformedInput) {
  EXPECT_THROW(density_from_json("not json"), std::invalid_argument);
  EXPECT_THROW(density_from_json(R"({"im": []})"), std::invalid_argument);
  EXPECT_THROW(density_from_json(R"({"re": [[1,0,0,0]]})"), std::invalid_argument);
  EXPECT_THROW(density_from_json(R"({"re": [[1,0,0],[0,0,0],[0,0,0],[0,0,0]]})"), std::invalid_argument);
  EXPECT_THROW(density_from_json(R"({"re": [["a",0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})"),
               std::invalid_argument);
}

TEST(BellJson, RoundTripAndErrors) {
  EXPECT_EQ(bell_to_json({0.1, 0.16, 0.1}), "[0.1, 0.16, 0.1]");
  EXPECT_EQ(bell_from_json("[0.1, 0.16, 0.1]"), (BellCoefficients{0.1, 0.16, 0.1}));
  EXPECT_THROW(bell_from_json("[1, 2]"), std::invalid_argument);
  EXPECT_THROW(bell_from_json(R"({"cx": 1})"), std::invalid_argument);
}

TEST(ReportFormats, JsonAndCsv) {
  const CorrelationReport r = discord({0.6, 0.36, -0.6});
  const auto parsed = nlohmann::json::parse(report_to_json(r));
  EXPECT_NEAR(parsed["I"].get<double>(), 0.5561438102252751, 1e-9);
  EXPECT_NEAR(parsed["C"].get<double>(), 0.27807190511263774, 1e-9);
  EXPECT_EQ(parsed["axis"].get<std::string>(), "x");
  EXPECT_EQ(report_csv_header(), "I,C,D");
  EXPECT_EQ(report_csv_row(r), "0.55614381,0.278071905,0.278071905");
}

Table sample_table() {
  Table t;
  t.title = "sample";
  t.meta = {"a=1", "free text"};
  t.columns = {"x", "y"};
  t.rows = {{0.0, 1.0}, {0.5, 0.25}};
  return t;
}

TEST(TableWriters, CsvLayout) {
  std::ostringstream os;
  write_csv(os, sample_table());
  EXPECT_EQ(os.str(), "# sample | a=1 | free text\nx,y\n0,1\n0.5,0.25\n");
}

TEST(TableWriters, JsonParses) {
  std::ostringstream os;
  write_json(os, sample_table());
  const auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j["meta"]["title"], "sample");
  EXPECT_EQ(j["meta"]["a"], "1");
  EXPECT_EQ(j["meta"]["note"], "free text");
  EXPECT_EQ(j["columns"].size(), 2u);
  EXPECT_DOUBLE_EQ(j["rows"][1][1].get<double>(), 0.25);

  Table empty = sample_table();
  empty.rows.clear();
  std::ostringstream os2;
  write_json(os2, empty);
  EXPECT_TRUE(nlohmann::json::parse(os2.str())["rows"].empty());
}

}  // namespace
}  // namespace nmd
