#include "lowrank/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowrank/error.hpp"

namespace lowrank {

Factorization rank_factorization(const SignMatrix& m, double tol) {
  const Eigen::MatrixXd dense = m.to_dense();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto r = static_cast<Eigen::Index>(numerical_rank(dense, tol));
  const Eigen::VectorXd root = svd.singularValues().head(r).cwiseSqrt();

  Factorization f;
  f.left = svd.matrixU().leftCols(r) * root.asDiagonal();
  f.right = svd.matrixV().leftCols(r) * root.asDiagonal();
  return f;
}

FactorizationReport verify_factorization(const SignMatrix& m, const Factorization& f, double tol) {
  if (f.n_rows() != m.n_rows() || f.n_cols() != m.n_cols() ||
      f.left.cols() != f.right.cols()) {
    throw DomainError("factorization shape " + std::to_string(f.n_rows()) + "x" +
                      std::to_string(f.n_cols()) + " does not match matrix " +
                      std::to_string(m.n_rows()) + "x" + std::to_string(m.n_cols()));
  }
  const Eigen::MatrixXd product = f.left * f.right.transpose();
  FactorizationReport report;
  for (std::size_t x = 0; x < m.n_rows(); ++x)
    for (std::size_t y = 0; y < m.n_cols(); ++y) {
      const double err =
          std::abs(product(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) - m(x, y));
      report.max_error = std::max(report.max_error, err);
    }
  report.ok = report.max_error <= tol;
  return report;
}

Factorization reduce_to_span(const Factorization& f, double tol) {
  if (f.left.cols() == 0) return f;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(f.left, Eigen::ComputeThinV);
  const auto k = static_cast<Eigen::Index>(numerical_rank(f.left, tol));
  if (k == f.left.cols()) return f;
  // Rows of `left` lie in the span of the top-k right singular vectors Q, so
  // left = left Q Q^T and <u, v> = <Q^T u, Q^T v>.
  const Eigen::MatrixXd q = svd.matrixV().leftCols(k);
  Factorization out;
  out.left = f.left * q;
  out.right = f.right * q;
  return out;
}

Factorization change_basis(const Factorization& f, const Eigen::MatrixXd& t) {
  if (t.rows() != f.left.cols() || t.cols() != f.left.cols()) {
    throw DomainError("basis change has the wrong dimension");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(t);
  if (!lu.isInvertible()) throw DomainError("basis change is not invertible");
  Factorization out;
  out.left = f.left * t.transpose();
  out.right = f.right * lu.inverse();
  return out;
}

}  // namespace lowrank
