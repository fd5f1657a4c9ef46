#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "lowrank/factorize.hpp"

namespace lowrank {

/// Origin-centered ellipsoid E = { z : z^T A z <= 1 }.
struct EllipsoidForm {
  Eigen::MatrixXd a;
  /// max_p p^T A p - 1 at termination; the Khachiyan certificate.
  double optimality_gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Dual weights on the input points; they sum to one.
  Eigen::VectorXd weights;

  /// log vol(E) up to the constant log vol(unit ball).
  double log_volume() const;
};

struct MveeOptions {
  std::size_t max_iterations = 1'000'000;
  /// Recompute the inverse from scratch this often to bound drift from the
  /// rank-one updates.
  std::size_t refresh_interval = 64;
};

/// Minimum-volume ellipsoid enclosing {+p, -p : p in points}, one point per
/// row of `points`. Khachiyan coordinate ascent with Todd-Yildirim away
/// steps, stopped once every point satisfies p^T A p <= 1 + eps.
/// Throws DomainError("degenerate point set") if the points do not span.
EllipsoidForm mvee_symmetric(const Eigen::MatrixXd& points, double eps,
                             const MveeOptions& options = {});

inline constexpr double kDefaultJohnEps = 1e-3;

/// Basis change T = dim^{1/4} A^{1/2} taking the John ellipsoid of
/// conv{+-u_x} to the ball of radius dim^{1/4}. Afterwards every u_x and
/// every v_y has norm at most dim^{1/4} (1 + eps). Factorizations whose left
/// vectors do not span are first reduced to their span.
Factorization john_rescale(const Factorization& f, double eps = kDefaultJohnEps);

struct NormReport {
  double max_left_norm = 0.0;
  double max_right_norm = 0.0;
  /// min over entries of |<u_x, v_y>| / (|u_x| |v_y|).
  double min_normalized_gap = 0.0;
  double norm_limit = 0.0;
  double gap_limit = 0.0;
  bool ok = false;
};

/// Throws DomainError("not certified") unless f.norm_bound_certified.
NormReport verify_norm_bounds(const Factorization& f);

}  // namespace lowrank
