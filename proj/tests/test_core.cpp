// Copyright 2026 The signseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "signseg/core.hpp"
#include "test_support.hpp"

namespace signseg {
namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("signseg_core_" + name);
}

TEST(DataMatrix, RowsAreOneBased) {
  DataMatrix d(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(d.row(2)[0], 4.0);
  EXPECT_EQ(d.at(1, 2), 3.0);
}

TEST(DataMatrix, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(DataMatrix(0, 3, {}), EmptyInput);
  EXPECT_THROW(DataMatrix(1, 2, {1.0, NAN}), DomainError);
  EXPECT_THROW(DataMatrix(1, 2, {1.0, INFINITY}), DomainError);
  EXPECT_THROW(DataMatrix(2, 2, {1.0, 2.0, 3.0}), DomainError);
}

TEST(DataMatrix, Reversed) {
  DataMatrix d(3, 1, {1, 2, 3});
  const auto r = d.reversed();
  EXPECT_EQ(r.at(1, 0), 3.0);
  EXPECT_EQ(r.at(3, 0), 1.0);
}

TEST(Csv, ParsesHeaderBomAndWhitespace) {
  const auto d = parse_csv("\xEF\xBB\xBFx,y\r\n 1.5, 2\r\n3,4e-1\n\n", true);
  EXPECT_EQ(d.n(), 2u);
  EXPECT_EQ(d.p(), 2u);
  EXPECT_DOUBLE_EQ(d.at(1, 0), 1.5);
  EXPECT_DOUBLE_EQ(d.at(2, 1), 0.4);
}

TEST(Csv, NonNumericCellReportsLine) {
  try {
    parse_csv("a,b\n1,2\n3,oops\n", true);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_EQ(e.code(), ErrorCode::parse);
  }
}

TEST(Csv, RaggedRowIsParseError) {
  EXPECT_THROW(parse_csv("1,2\n3\n", false), ParseError);
}

TEST(Csv, EmptyInput) {
  EXPECT_THROW(parse_csv("", false), EmptyInput);
  EXPECT_THROW(parse_csv("a,b\n", true), EmptyInput);
}

TEST(Csv, NonFiniteRejected) {
  EXPECT_THROW(parse_csv("1,nan\n", false), Error);
  EXPECT_THROW(parse_csv("1,inf\n", false), Error);
}

TEST(Csv, MissingFileIsIoError) {
  EXPECT_THROW(load_csv("/nonexistent/signseg.csv", false), IoError);
}

TEST(Csv, RoundTripIsBitExact) {
  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> scale(-300, 300);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(7 * 5);
    for (double& x : v) x = std::ldexp(scale(eng), static_cast<int>(scale(eng) / 10));
    DataMatrix d(7, 5, v);
    const auto path = temp_file("roundtrip.csv");
    write_csv(d, path);
    const auto back = load_csv(path, false);
    ASSERT_EQ(back.n(), 7u);
    ASSERT_EQ(back.p(), 5u);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(back.values()[i], v[i]);
    std::filesystem::remove(path);
  }
}

TEST(TransposeGuard, WarnsOnlyWhenAsked) {
  DataMatrix tall(5, 2, std::vector<double>(10, 1.0));
  EXPECT_TRUE(transpose_guard(tall, true).has_value());
  EXPECT_FALSE(transpose_guard(tall, false).has_value());
  DataMatrix wide(2, 5, std::vector<double>(10, 1.0));
  EXPECT_FALSE(transpose_guard(wide, true).has_value());
}

TEST(ValidateTriple, Bounds) {
  EXPECT_NO_THROW(validate_triple({2, 1, 4}, 4));
  EXPECT_THROW(validate_triple({1, 1, 4}, 4), DomainError);
  EXPECT_THROW(validate_triple({3, 1, 4}, 4), DomainError);
  EXPECT_THROW(validate_triple({2, 1, 5}, 4), DomainError);
  EXPECT_THROW(validate_triple({2, 0, 4}, 4), DomainError);
}

TEST(RandomStream, SameKeySameDraws) {
  RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    EXPECT_NE(x, c.normal());
    EXPECT_NE(x, d.normal());
  }
}

TEST(RandomStream, DistributionMoments) {
  RandomStream s(1, 0);
  const int n = 200000;
  double m_exp = 0, m_chi = 0, v_t = 0;
  for (int i = 0; i < n; ++i) {
    m_exp += s.exponential();
    m_chi += s.chi_squared(3.0);
    const double t = s.student_t(5.0);
    v_t += t * t;
  }
  EXPECT_NEAR(m_exp / n, 1.0, 0.01);
  EXPECT_NEAR(m_chi / n, 3.0, 0.03);
  EXPECT_NEAR(v_t / n, 5.0 / 3.0, 0.05);
}

TEST(MixSeed, Distinct) {
  EXPECT_NE(mix_seed(1, 2), mix_seed(2, 1));
  EXPECT_EQ(mix_seed(5, 9), mix_seed(5, 9));
}

TEST(PairwiseSum, MatchesExactSum) {
  std::vector<double> xs(1000, 0.1);
  EXPECT_NEAR(pairwise_sum(xs), 100.0, 1e-12);
  EXPECT_EQ(pairwise_sum({}), 0.0);
}

}  // namespace
}  // namespace signseg
