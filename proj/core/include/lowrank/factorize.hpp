#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "lowrank/sign_matrix.hpp"

namespace lowrank {

/// Inner-product factorization M(x, y) = <u_x, v_y>. Row x of `left` is u_x
/// and row y of `right` is v_y; both live in R^dim().
struct Factorization {
  Eigen::MatrixXd left;
  Eigen::MatrixXd right;
  /// Set by john_rescale once all norms are bounded by dim()^{1/4} (1 + eps).
  bool norm_bound_certified = false;
  double certified_eps = 0.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(left.cols()); }
  std::size_t n_rows() const noexcept { return static_cast<std::size_t>(left.rows()); }
  std::size_t n_cols() const noexcept { return static_cast<std::size_t>(right.rows()); }

  double inner(std::size_t row, std::size_t col) const {
    return left.row(static_cast<Eigen::Index>(row)).dot(right.row(static_cast<Eigen::Index>(col)));
  }
};

inline constexpr double kFactorizationTolerance = 1e-6;

/// Truncated-SVD factorization at the numerical rank, with the singular
/// values split as sqrt(sigma) into both sides.
Factorization rank_factorization(const SignMatrix& m, double tol = kDefaultRankTolerance);

struct FactorizationReport {
  double max_error = 0.0;
  bool ok = false;
};

/// Entrywise reconstruction error. Throws DomainError on shape mismatch.
FactorizationReport verify_factorization(const SignMatrix& m, const Factorization& f,
                                         double tol = kFactorizationTolerance);

/// Reprojects a factorization whose left vectors do not span R^dim onto that
/// span, reducing the dimension. Inner products are unchanged. Certification
/// is cleared whenever the dimension changes.
Factorization reduce_to_span(const Factorization& f, double tol = kDefaultRankTolerance);

/// Applies u <- T u, v <- T^{-T} v.
Factorization change_basis(const Factorization& f, const Eigen::MatrixXd& t);

}  // namespace lowrank
