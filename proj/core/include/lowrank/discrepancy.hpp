#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "lowrank/factorize.hpp"
#include "lowrank/sign_matrix.hpp"

namespace lowrank {

struct RectangleResponse {
  Rectangle rectangle;
  /// |sum over R of weight * M|.
  double value = 0.0;
  /// The same sum with its sign.
  double signed_value = 0.0;
};

/// Exact maximizer of |sum_{(x,y) in R} w_xy M_xy| over all rectangles.
/// Subsets of the smaller side are walked in Gray-code order; for each one the
/// other side keeps every line whose restricted contribution has the sign
/// being maximized (both signs are tried). Weights are row-major.
RectangleResponse best_rectangle_response(const SignMatrix& m, std::span<const double> weights);

/// max over R of |mu(R ∩ Q_1) - mu(R ∩ Q_{-1})|.
double brute_force_rectangle_discrepancy(const SignMatrix& m, const EntryMeasure& mu);

struct WitnessResult {
  Rectangle rectangle;
  double value = 0.0;  // best mu(R ∩ Q_1) - mu(R ∩ Q_{-1})
  double mean = 0.0;   // over all trials
  double standard_error = 0.0;
  std::size_t trials = 0;
  std::size_t best_trial = 0;
};

/// Single-Gaussian zero-threshold rounding repeated `trials` times; keeps the
/// rectangle with the largest signed imbalance (lowest trial index on ties).
/// Requires mu(Q_1) >= 1/2 and a certified factorization of `m`.
WitnessResult discrepancy_witness(const SignMatrix& m, const Factorization& f,
                                  const EntryMeasure& mu, std::size_t trials, std::uint64_t seed,
                                  unsigned threads = 0);

struct GameResult {
  /// Smallest best-response value seen; an upper bound on disc(M).
  double value = 0.0;
  EntryMeasure measure;
  std::size_t iterations = 0;
};

/// Multiplicative weights on the entry measure against the exact best
/// rectangle response, learning rate sqrt(ln(nm) / iterations).
GameResult game_discrepancy(const SignMatrix& m, std::size_t iterations = 10'000);

}  // namespace lowrank
