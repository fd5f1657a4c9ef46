#include "lowrank/john.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lowrank/error.hpp"

namespace lowrank {

namespace {

Eigen::MatrixXd weighted_scatter(const Eigen::MatrixXd& points, const Eigen::VectorXd& w) {
  return points.transpose() * w.asDiagonal() * points;
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
  Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  return 0.5 * (inv + inv.transpose());
}

}  // namespace

double EllipsoidForm::log_volume() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return -0.5 * es.eigenvalues().array().log().sum();
}

EllipsoidForm mvee_symmetric(const Eigen::MatrixXd& points, double eps,
                             const MveeOptions& options) {
  if (!(eps > 0.0)) throw DomainError("mvee eps must be positive");
  const Eigen::Index n = points.rows();
  const Eigen::Index r = points.cols();
  if (n == 0 || r == 0 || numerical_rank(points) < static_cast<std::size_t>(r)) {
    throw DomainError("degenerate point set");
  }
  const double dim = static_cast<double>(r);

  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd inv = spd_inverse(weighted_scatter(points, w));
  // lev(i) = p_i^T X^{-1} p_i; sums to r under w.
  Eigen::VectorXd lev = (points * inv).cwiseProduct(points).rowwise().sum();

  EllipsoidForm out;
  std::size_t it = 0;
  for (;; ++it) {
    Eigen::Index up = 0;
    const double lev_max = lev.maxCoeff(&up);
    Eigen::Index down = -1;
    double lev_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
      if (w(i) > 0.0 && lev(i) < lev_min) {
        lev_min = lev(i);
        down = i;
      }

    const double gap_up = lev_max / dim - 1.0;
    if (gap_up <= eps) {
      out.converged = true;
      break;
    }
    if (it >= options.max_iterations) break;

    const double gap_down = 1.0 - lev_min / dim;
    Eigen::Index j = up;
    double tau = 0.0;
    if (gap_up >= gap_down) {
      tau = (lev_max - dim) / (dim * (lev_max - 1.0));
    } else {
      j = down;
      const double floor_step = -w(j) / (1.0 - w(j));
      tau = lev_min > 1.0 ? std::max((lev_min - dim) / (dim * (lev_min - 1.0)), floor_step)
                          : floor_step;
    }

    const double keep = 1.0 - tau;
    w *= keep;
    w(j) += tau;
    if (tau < 0.0 && w(j) < 1e-14) w(j) = 0.0;

    if ((it + 1) % options.refresh_interval == 0) {
      w /= w.sum();
      inv = spd_inverse(weighted_scatter(points, w));
    } else {
      // Sherman-Morrison for X' = keep X + tau p p^T.
      const Eigen::VectorXd xp = inv * points.row(j).transpose();
      const double c = tau / keep;
      inv = (inv - (c / (1.0 + c * lev(j))) * (xp * xp.transpose())) / keep;
    }
    lev = (points * inv).cwiseProduct(points).rowwise().sum();
  }

  out.iterations = it;
  out.weights = w;
  out.a = inv / dim;
  out.a = 0.5 * (out.a + out.a.transpose());
  out.optimality_gap = lev.maxCoeff() / dim - 1.0;
  return out;
}

Factorization john_rescale(const Factorization& input, double eps) {
  if (!(eps > 0.0)) throw DomainError("john eps must be positive");
  Factorization f = reduce_to_span(input);
  const auto r = static_cast<Eigen::Index>(f.dim());
  if (r == 0) throw DomainError("degenerate point set");

  Factorization out;
  if (r == 1) {
    // Scalars: scale u to unit length; |u_x v_y| = 1 forces |v_y| = 1 too.
    const double scale = f.left.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) throw DomainError("degenerate point set");
    out.left = f.left / scale;
    out.right = f.right * scale;
  } else {
    const EllipsoidForm e = mvee_symmetric(f.left, eps);
    if (!e.converged) throw DomainError("mvee did not converge within the iteration budget");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e.a);
    const Eigen::VectorXd root = es.eigenvalues().cwiseSqrt();
    const double quarter = std::pow(static_cast<double>(r), 0.25);
    const Eigen::MatrixXd t = quarter * es.eigenvectors() * root.asDiagonal() *
                              es.eigenvectors().transpose();
    const Eigen::MatrixXd t_inv = (1.0 / quarter) * es.eigenvectors() *
                                  root.cwiseInverse().asDiagonal() *
                                  es.eigenvectors().transpose();
    out.left = f.left * t;  // t symmetric
    out.right = f.right * t_inv;
  }
  out.norm_bound_certified = true;
  out.certified_eps = eps;
  return out;
}

NormReport verify_norm_bounds(const Factorization& f) {
  if (!f.norm_bound_certified) throw DomainError("not certified");
  const double r = static_cast<double>(f.dim());
  const double eps = f.certified_eps;
  NormReport rep;
  rep.norm_limit = std::pow(r, 0.25) * (1.0 + eps);
  rep.gap_limit = (1.0 - 2.0 * eps) / std::sqrt(r);

  const Eigen::VectorXd ln = f.left.rowwise().norm();
  const Eigen::VectorXd rn = f.right.rowwise().norm();
  rep.max_left_norm = ln.size() ? ln.maxCoeff() : 0.0;
  rep.max_right_norm = rn.size() ? rn.maxCoeff() : 0.0;

  const Eigen::MatrixXd gram = f.left * f.right.transpose();
  rep.min_normalized_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index x = 0; x < gram.rows(); ++x)
    for (Eigen::Index y = 0; y < gram.cols(); ++y)
      rep.min_normalized_gap =
          std::min(rep.min_normalized_gap, std::abs(gram(x, y)) / (ln(x) * rn(y)));

  rep.ok = rep.max_left_norm <= rep.norm_limit && rep.max_right_norm <= rep.norm_limit &&
           rep.min_normalized_gap >= rep.gap_limit;
  return rep;
}

}  // namespace lowrank
