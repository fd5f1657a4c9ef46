#include <gtest/gtest.h>

#include "lowrank/error.hpp"
#include "lowrank/generators.hpp"
#include "lowrank/io.hpp"
#include "oracles.hpp"

using namespace lowrank;

TEST(MatrixFormat, BitExactLayout) {
  EXPECT_EQ(format_matrix(equality_matrix(2)), "2 2\n+-\n-+\n");
  const auto m = parse_matrix("2 3\n+-+\n--+\n");
  EXPECT_EQ(m, SignMatrix(2, 3, {1, -1, 1, -1, -1, 1}));
}

TEST(MatrixFormat, RoundTripsGeneratedMatrices) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = rectangle_partition_random(1 + seed % 7, 1 + seed % 5, 3, seed);
    EXPECT_EQ(parse_matrix(format_matrix(m)), m);
  }
}

TEST(MatrixFormat, DiagnosticsCarryLineAndColumn) {
  try {
    parse_matrix("2 3\n+-+\n-x+\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 2u);
  }
  try {
    parse_matrix("2 3\n+-+\n--\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_matrix("2 3\n+-+\n"), FormatError);
  EXPECT_THROW(parse_matrix("2 3\n+-+ --+\n"), FormatError);
  EXPECT_THROW(parse_matrix("2 3\n+-+\n--+\n+++\n"), FormatError);
  EXPECT_THROW(parse_matrix("a 3\n"), FormatError);
  EXPECT_THROW(parse_matrix("0 3\n"), FormatError);
}

TEST(MeasureFormat, RoundTripAndValidation) {
  const auto mu = oracle::random_measure(3, 4, 17);
  const auto back = parse_measure(format_measure(mu));
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 4; ++y) EXPECT_EQ(back(x, y), mu(x, y));
  EXPECT_THROW(parse_measure("1 2\n0.5 0.6\n"), FormatError);
  EXPECT_THROW(parse_measure("1 2\n0.5\n"), FormatError);
  try {
    parse_measure("1 2\n0.5 abc\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
  }
}

TEST(FactorizationFormat, RoundTripsExactly) {
  const auto kl = kotlov_lovasz(1);
  const auto text = format_factorization(kl.factorization);
  EXPECT_EQ(text.substr(0, 6), "8 8 9\n");
  const auto back = parse_factorization(text);
  EXPECT_EQ(back.left, kl.factorization.left);
  EXPECT_EQ(back.right, kl.factorization.right);
  EXPECT_THROW(parse_factorization("1 1 2\n1 2\n3\n"), FormatError);
}
