#include <gtest/gtest.h>

#include <random>

#include "lowrank/error.hpp"
#include "lowrank/factorize.hpp"
#include "lowrank/generators.hpp"
#include "oracles.hpp"

using namespace lowrank;

TEST(RankFactorization, AllOnesIsRankOne) {
  const auto m = SignMatrix::constant(3, 4, Sign::Plus);
  const auto f = rank_factorization(m);
  EXPECT_EQ(f.dim(), 1u);
  EXPECT_TRUE(verify_factorization(m, f).ok);
}

TEST(RankFactorization, SmallExamplesReconstruct) {
  // [[+1,-1],[-1,+1]] = (1,-1)^T (1,-1) has rank 1.
  const auto cb = equality_matrix(2);
  EXPECT_EQ(oracle::rank_mod_p(cb), 1u);
  auto f = rank_factorization(cb);
  EXPECT_EQ(f.dim(), 1u);
  EXPECT_TRUE(verify_factorization(cb, f).ok);

  const auto kl = kotlov_lovasz(1).matrix;
  f = rank_factorization(kl);
  EXPECT_LE(f.dim(), 9u);
  EXPECT_EQ(f.dim(), oracle::rank_mod_p(kl));
  EXPECT_LE(verify_factorization(kl, f).max_error, 1e-9);
}

TEST(RankFactorization, RoundTripOnRandomPartitions) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto m = rectangle_partition_random(3 + seed % 20, 2 + seed % 17, 1 + seed % 9, seed);
    const auto f = rank_factorization(m);
    EXPECT_EQ(f.dim(), numerical_rank(m));
    EXPECT_TRUE(verify_factorization(m, f, 1e-6).ok) << seed;
    // the left vectors span R^r
    EXPECT_EQ(numerical_rank(Eigen::MatrixXd(f.left)), f.dim());
  }
}

TEST(VerifyFactorization, DetectsNegatedRowAndShapeMismatch) {
  const auto m = rectangle_partition_random(6, 6, 4, 3);
  auto f = rank_factorization(m);
  std::size_t row = 0;
  while (row < 6) {
    bool constant = true;
    for (std::size_t y = 1; y < 6; ++y) constant &= m(row, y) == m(row, 0);
    if (!constant) break;
    ++row;
  }
  ASSERT_LT(row, 6u);
  f.left.row(static_cast<Eigen::Index>(row)) *= -1.0;
  const auto rep = verify_factorization(m, f);
  EXPECT_FALSE(rep.ok);
  EXPECT_NEAR(rep.max_error, 2.0, 1e-9);

  EXPECT_THROW(verify_factorization(SignMatrix::constant(5, 6, Sign::Plus), f), DomainError);
}

TEST(VerifyFactorization, KotlovLovaszExplicitIsExact) {
  for (std::size_t r : {1u, 2u}) {
    const auto kl = kotlov_lovasz(r);
    for (std::size_t a = 0; a < kl.matrix.n_rows(); ++a)
      for (std::size_t b = 0; b < kl.matrix.n_cols(); ++b)
        ASSERT_EQ(kl.families.exact_inner(a, b), kl.matrix(a, b));
    // sqrt2 * sqrt2 rounds to 2 + 4.4e-16 in doubles
    EXPECT_LE(verify_factorization(kl.matrix, kl.factorization).max_error, 1e-15);
  }
}

TEST(ChangeBasis, PreservesInnerProducts) {
  std::mt19937_64 eng(42);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = rectangle_partition_random(12, 10, 6, 50 + trial);
    const auto f = rank_factorization(m);
    const auto r = static_cast<Eigen::Index>(f.dim());
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) t(i, j) += 0.3 * g(eng);
    const auto h = change_basis(f, t);
    for (std::size_t x = 0; x < 12; ++x)
      for (std::size_t y = 0; y < 10; ++y) EXPECT_NEAR(h.inner(x, y), f.inner(x, y), 1e-8);
  }
}

TEST(ReduceToSpan, DropsRedundantDimensions) {
  const auto kl = kotlov_lovasz(1);
  // The left vectors span 6 of the 9 dimensions; the matrix has rank 4.
  const auto reduced = reduce_to_span(kl.factorization);
  EXPECT_EQ(reduced.dim(), numerical_rank(kl.factorization.left));
  EXPECT_EQ(reduced.dim(), 6u);
  EXPECT_LE(verify_factorization(kl.matrix, reduced).max_error, 1e-9);
}
