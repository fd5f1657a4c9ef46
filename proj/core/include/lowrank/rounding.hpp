#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lowrank/error.hpp"
#include "lowrank/factorize.hpp"
#include "lowrank/sign_matrix.hpp"

namespace lowrank {

/// Probability that a standard Gaussian hyperplane keeps two unit vectors
/// with inner product alpha on its nonnegative side: (1 - arccos(alpha)/pi)/2.
double sheppard_probability(double alpha);

/// ceil(c7 * ln(2/delta) * sqrt(r)).
std::size_t hyperplane_count(double delta, std::size_t r, double c7);

/// Threshold c * r^{1/4} * sqrt(ln r) of the cap variant; c itself when r = 1.
double cap_threshold(std::size_t r, double cap_constant);

enum class RoundingVariant { MultiHyperplane, SingleCap };

std::string to_string(RoundingVariant v);
RoundingVariant parse_variant(const std::string& name);

struct RoundingConfig {
  double delta = 0.125;
  double constant_c7 = 7.1;
  std::size_t max_attempts = 10'000;
  std::uint64_t master_seed = 0;
  RoundingVariant variant = RoundingVariant::MultiHyperplane;
  double cap_constant = 1.0;
  /// Score every prefix R_1 ∩ ... ∩ R_t (t <= T) of a multi-hyperplane
  /// attempt and keep the best one. When false the attempt returns the full
  /// T-fold intersection.
  bool score_prefixes = true;
  /// Worker threads for attempts; 0 uses available parallelism. Results do
  /// not depend on this value.
  unsigned threads = 0;

  void validate() const;
};

struct RoundingOutcome {
  Rectangle rectangle;
  double mass = 0.0;        // mu(R)
  double error_mass = 0.0;  // mu(R ∩ Q_{-1})
  double objective = 0.0;   // mu(R ∩ Q_1) - mu(R ∩ Q_{-1}) / delta
  std::size_t attempt_index = 0;
  std::size_t attempts_used = 0;
  /// Hyperplanes intersected to produce `rectangle` (1 for the cap variant).
  std::size_t hyperplanes_used = 0;
};

/// Normalized left/right vectors of a certified factorization, computed once
/// and shared by all attempts.
class RoundingContext {
 public:
  RoundingContext(const SignMatrix& m, const Factorization& f, const EntryMeasure& mu);

  const SignMatrix& matrix() const noexcept { return m_; }
  const EntryMeasure& measure() const noexcept { return mu_; }
  const Eigen::MatrixXd& unit_left() const noexcept { return unit_left_; }
  const Eigen::MatrixXd& unit_right() const noexcept { return unit_right_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(unit_left_.cols()); }

 private:
  SignMatrix m_;
  EntryMeasure mu_;
  Eigen::MatrixXd unit_left_;
  Eigen::MatrixXd unit_right_;
};

/// { x : <u_x/|u_x|, g> >= s } x { y : <v_y/|v_y|, g> >= s }.
Rectangle halfspace_rectangle(const Factorization& f, const Eigen::VectorXd& g,
                              double threshold = 0.0);

/// The Gaussian directions attempt `attempt_index` draws, in order.
std::vector<Eigen::VectorXd> attempt_gaussians(std::uint64_t master_seed,
                                               std::size_t attempt_index, std::size_t count,
                                               std::size_t dim);

RoundingOutcome sample_multi_hyperplane(const RoundingContext& ctx, const RoundingConfig& config,
                                        std::size_t attempt_index);
RoundingOutcome sample_single_cap(const RoundingContext& ctx, const RoundingConfig& config,
                                  std::size_t attempt_index);

/// Raised when no attempt reaches a positive objective; carries the best one.
class NoQualifyingRectangle : public DomainError {
 public:
  explicit NoQualifyingRectangle(RoundingOutcome best)
      : DomainError("no qualifying rectangle found"), best_(std::move(best)) {}
  const RoundingOutcome& best() const noexcept { return best_; }

 private:
  RoundingOutcome best_;
};

/// Runs up to max_attempts independent attempts of the configured variant and
/// returns the one with the largest objective (lowest index on ties). A
/// positive objective implies mu(R ∩ Q_{-1}) <= delta mu(R).
/// Requires mu(Q_1) >= delta and a certified factorization of `m`.
RoundingOutcome find_almost_monochromatic(const SignMatrix& m, const Factorization& f,
                                          const EntryMeasure& mu, const RoundingConfig& config);

/// Line-oriented key=value run report.
std::string format_run_report(const RoundingOutcome& outcome, const RoundingConfig& config,
                              std::size_t r, bool success);

/// %.12g formatting used by every report.
std::string format_number(double v);

}  // namespace lowrank
