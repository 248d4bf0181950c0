#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "sobolev/errors.hpp"
#include "sobolev/io.hpp"

using namespace sobolev;

namespace {

std::string parse_error_message(const std::string& csv) {
  std::istringstream in(csv);
  try {
    io::read_samples_csv(in);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(SamplesCsv, HeaderIsOptional) {
  std::istringstream with("x1,x2\n1,2\n3,4\n");
  std::istringstream without("1,2\n3,4\n");
  const SampleSet a = io::read_samples_csv(with);
  const SampleSet b = io::read_samples_csv(without);
  EXPECT_EQ(a.size(), 2);
  EXPECT_EQ(a.dim(), 2);
  EXPECT_EQ(a.points(), b.points());
  EXPECT_EQ(a.points()(1, 0), 3.0);
}

TEST(SamplesCsv, BlankLinesAndExactValues) {
  std::istringstream in("0.1\n\n-2.5e-3\n");
  const SampleSet s = io::read_samples_csv(in);
  EXPECT_EQ(s.size(), 2);
  EXPECT_EQ(s.points()(0, 0), 0.1);
  EXPECT_EQ(s.points()(1, 0), -2.5e-3);
}

TEST(SamplesCsv, WrongArityReportsLine) {
  const std::string msg = parse_error_message("a,b\n1,2\n3,4\n5\n");
  EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
  std::istringstream in("1,2\n3\n");
  try {
    io::read_samples_csv(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(SamplesCsv, NonNumericAndEmptyInputs) {
  EXPECT_NE(parse_error_message("1,2\n3,abc\n").find("line 2"), std::string::npos);
  EXPECT_FALSE(parse_error_message("").empty());
  EXPECT_FALSE(parse_error_message("x,y\n").empty());
  EXPECT_THROW(io::read_samples_csv_file("/nonexistent/samples.csv"), ParseError);
}

TEST(GridDensityCsv, ParsesColumns) {
  std::istringstream in("x,p,q\n0,1,1\n0.5,1,1\n1,1,1\n");
  const GridDensity g = io::read_grid_density_csv(in);
  EXPECT_EQ(g.size(), 3);
  EXPECT_EQ(g.grid()(1), 0.5);
  EXPECT_DOUBLE_EQ(g.lower_bound(), 1.0);
  std::istringstream bad("x,p,q\n0,1\n");
  EXPECT_THROW(io::read_grid_density_csv(bad), ParseError);
  std::istringstream heavy("0,2,1\n1,2,1\n");
  EXPECT_THROW(io::read_grid_density_csv(heavy), InvalidParameter);
}

TEST(FeatureMapJson, RoundTripAndSchema) {
  const FeatureMap fm = make_feature_map(3, 17, 0.3, 2.5, 99);
  const std::string text = io::feature_map_to_json(fm);
  for (const char* key : {"\"d\"", "\"m\"", "\"bandwidth\"", "\"window_scale\"", "\"seed\"", "\"amplitude\""})
    EXPECT_NE(text.find(key), std::string::npos) << key;
  EXPECT_TRUE(io::feature_map_from_json(text) == fm);
  EXPECT_THROW(io::feature_map_from_json("{\"d\": 1}"), ParseError);
  EXPECT_THROW(io::feature_map_from_json("not json"), ParseError);
}

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::format_double(NAN), "null");
}
