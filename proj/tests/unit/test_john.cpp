#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lowrank/error.hpp"
#include "lowrank/factorize.hpp"
#include "lowrank/generators.hpp"
#include "lowrank/john.hpp"
#include "oracles.hpp"

using namespace lowrank;

namespace {

double max_inner_change(const Factorization& a, const Factorization& b) {
  return (a.left * a.right.transpose() - b.left * b.right.transpose()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd random_points(std::size_t n, std::size_t r, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd p(n, r);
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) p(i, j) = g(eng);
  return p;
}

}  // namespace

TEST(Mvee, CrossPolytopeGivesTheBall) {
  const auto e = mvee_symmetric(Eigen::MatrixXd::Identity(4, 4), 1e-9);
  EXPECT_TRUE(e.converged);
  EXPECT_LE((e.a - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Mvee, Interval) {
  Eigen::MatrixXd p(1, 1);
  p << 3.0;
  const auto e = mvee_symmetric(p, 1e-9);
  EXPECT_NEAR(e.a(0, 0), 1.0 / 9.0, 1e-12);
}

TEST(Mvee, RandomPointsMatchIndependentIteration) {
  const auto p = random_points(20, 3, 7);
  const auto e = mvee_symmetric(p, 1e-6);
  ASSERT_TRUE(e.converged);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const Eigen::VectorXd v = p.row(i).transpose();
    EXPECT_LE(v.dot(e.a * v), 1.0 + 1e-6);
  }
  EXPECT_LE((e.a - e.a.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e.a);
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  EXPECT_NEAR(e.weights.sum(), 1.0, 1e-12);

  double gap = 1.0;
  const auto ref = oracle::titterington_mvee(p, 200000, &gap);
  ASSERT_LE(gap, 1e-9);
  // Volume within (1 + 1e-6)^3 of the reference.
  EXPECT_LE(std::abs(e.log_volume() - oracle::log_volume(ref)), 3.0 * std::log1p(1e-6));
}

TEST(Mvee, DoublingTheBudgetBarelyMovesTheVolume) {
  const auto p = random_points(40, 5, 9);
  const auto a = mvee_symmetric(p, 1e-7);
  MveeOptions opts;
  opts.max_iterations = 2 * a.iterations;
  const auto b = mvee_symmetric(p, 1e-12, opts);
  EXPECT_LT(std::abs(a.log_volume() - b.log_volume()), 1e-6);
}

TEST(Mvee, DegenerateInputIsRejected) {
  Eigen::MatrixXd p(3, 2);
  p << 1, 2, 2, 4, -1, -2;
  try {
    mvee_symmetric(p, 1e-6);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "degenerate point set");
  }
}

TEST(JohnRescale, ScalarCase) {
  Factorization f;
  f.left.resize(2, 1);
  f.right.resize(2, 1);
  f.left << 5, -5;
  f.right << 0.2, -0.2;
  const auto g = john_rescale(f);
  EXPECT_TRUE(g.norm_bound_certified);
  EXPECT_NEAR(g.left.cwiseAbs().maxCoeff(), 1.0, 1e-12);
  EXPECT_NEAR(g.right.cwiseAbs().maxCoeff(), 1.0, 1e-12);
  EXPECT_LE(max_inner_change(f, g), 1e-12);
}

TEST(JohnRescale, BalancedAllOnesIsAFixedPoint) {
  const auto m = SignMatrix::constant(3, 3, Sign::Plus);
  const auto f = rank_factorization(m);
  const auto g = john_rescale(f);
  EXPECT_NEAR(g.left.rowwise().norm().maxCoeff(), 1.0, 1e-3);
  const auto rep = verify_norm_bounds(g);
  EXPECT_TRUE(rep.ok);
  EXPECT_NEAR(rep.min_normalized_gap, 1.0, 1e-12);
}

TEST(JohnRescale, KotlovLovaszR1) {
  const auto kl = kotlov_lovasz(1);
  // |a| = 2, so every raw vector has norm sqrt(2 * 2 + 1)
  EXPECT_NEAR(kl.factorization.left.rowwise().norm().maxCoeff(), std::sqrt(5.0), 1e-12);
  const auto g = john_rescale(kl.factorization, 1e-3);
  const double limit = std::pow(static_cast<double>(g.dim()), 0.25) * 1.001;
  EXPECT_LE(g.left.rowwise().norm().maxCoeff(), limit);
  EXPECT_LE(g.right.rowwise().norm().maxCoeff(), limit);
  EXPECT_LE(std::pow(static_cast<double>(g.dim()), 0.25), std::pow(9.0, 0.25));
  EXPECT_LE(max_inner_change(kl.factorization, g), 1e-8);
  EXPECT_TRUE(verify_factorization(kl.matrix, g).ok);
}

TEST(JohnRescale, RandomFactorizationsKeepInnerProductsAndNorms) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 20 + 15 * seed, m = 200 - 12 * seed;
    const std::size_t r = 1 + seed % 10;
    Factorization f;
    f.left = random_points(n, r, 100 + seed);
    f.right = random_points(m, r, 200 + seed);
    const auto g = john_rescale(f, 1e-3);
    ASSERT_EQ(g.dim(), r);
    EXPECT_LE(max_inner_change(f, g), 1e-8) << seed;
    const double limit = std::pow(static_cast<double>(r), 0.25) * 1.001;
    EXPECT_LE(g.left.rowwise().norm().maxCoeff(), limit) << seed;
  }
}

TEST(JohnRescale, CertifiedSignMatricesMeetBothBounds) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto m = rectangle_partition_random(10 + seed, 30 - seed % 7, 2 + seed % 7, 77 + seed);
    const auto f = john_rescale(rank_factorization(m), 1e-3);
    const auto rep = verify_norm_bounds(f);
    EXPECT_TRUE(rep.ok) << seed;
    // the right-vector bound is never enforced separately
    EXPECT_LE(rep.max_right_norm, rep.norm_limit);
    const double r = static_cast<double>(f.dim());
    EXPECT_GE(rep.min_normalized_gap, (1.0 - 2e-3) / std::sqrt(r));
    for (std::size_t x = 0; x < m.n_rows(); ++x)
      for (std::size_t y = 0; y < m.n_cols(); ++y) {
        const double c = f.inner(x, y) / (f.left.row(x).norm() * f.right.row(y).norm());
        EXPECT_GE(c * m(x, y), (1.0 - 2e-3) / std::sqrt(r));
      }
  }
}

TEST(VerifyNormBounds, RequiresCertification) {
  const auto f = rank_factorization(equality_matrix(3));
  try {
    verify_norm_bounds(f);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "not certified");
  }
}
