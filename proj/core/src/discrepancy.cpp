#include "lowrank/discrepancy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "lowrank/error.hpp"
#include "lowrank/monochromatic.hpp"
#include "lowrank/parallel.hpp"
#include "lowrank/rng.hpp"
#include "lowrank/rounding.hpp"

namespace lowrank {

namespace {

// Columns are the enumerated side; weights row-major n x k.
RectangleResponse response_wide(const SignMatrix& m, std::span<const double> w) {
  const std::size_t n = m.n_rows();
  const std::size_t k = m.n_cols();
  std::vector<double> contrib(n, 0.0);
  std::uint32_t best_mask = 0;
  bool best_positive = true;
  double best_value = 0.0;

  const std::uint32_t count = std::uint32_t{1} << k;
  std::uint32_t gray = 0;
  for (std::uint32_t i = 1; i < count; ++i) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    gray ^= std::uint32_t{1} << bit;
    const double dir = (gray >> bit) & 1u ? 1.0 : -1.0;
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      contrib[x] += dir * w[x * k + bit] * m(x, bit);
      if (contrib[x] > 0.0)
        pos += contrib[x];
      else
        neg -= contrib[x];
    }
    if (pos > best_value) {
      best_value = pos;
      best_mask = gray;
      best_positive = true;
    }
    if (neg > best_value) {
      best_value = neg;
      best_mask = gray;
      best_positive = false;
    }
  }

  RectangleResponse out;
  if (best_mask == 0) return out;
  for (std::size_t y = 0; y < k; ++y)
    if (best_mask & (std::uint32_t{1} << y)) out.rectangle.cols.push_back(y);
  // Recompute the row selection and value directly to avoid drift from the
  // incremental sums.
  double total = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    double c = 0.0;
    for (auto y : out.rectangle.cols) c += w[x * k + y] * m(x, y);
    if (best_positive ? c > 0.0 : c < 0.0) {
      out.rectangle.rows.push_back(x);
      total += c;
    }
  }
  if (out.rectangle.rows.empty()) return RectangleResponse{};
  out.signed_value = total;
  out.value = std::abs(total);
  return out;
}

}  // namespace

RectangleResponse best_rectangle_response(const SignMatrix& m, std::span<const double> weights) {
  if (weights.size() != m.size()) throw DomainError("weight count does not match the matrix");
  if (std::min(m.n_rows(), m.n_cols()) > kOracleMaxDim) {
    throw DomainError("instance too large for oracle");
  }
  if (m.n_cols() <= m.n_rows()) return response_wide(m, weights);

  std::vector<double> wt(weights.size());
  for (std::size_t x = 0; x < m.n_rows(); ++x)
    for (std::size_t y = 0; y < m.n_cols(); ++y) wt[y * m.n_rows() + x] = weights[x * m.n_cols() + y];
  auto out = response_wide(m.transposed(), wt);
  std::swap(out.rectangle.rows, out.rectangle.cols);
  return out;
}

double brute_force_rectangle_discrepancy(const SignMatrix& m, const EntryMeasure& mu) {
  if (mu.n_rows() != m.n_rows() || mu.n_cols() != m.n_cols()) {
    throw DomainError("measure shape does not match the matrix");
  }
  return best_rectangle_response(m, mu.weights()).value;
}

WitnessResult discrepancy_witness(const SignMatrix& m, const Factorization& f,
                                  const EntryMeasure& mu, std::size_t trials, std::uint64_t seed,
                                  unsigned threads) {
  if (trials < 1) throw DomainError("witness needs at least one trial");
  const RoundingContext ctx(m, f, mu);
  const auto totals = class_masses(m, mu, Rectangle::full(m.n_rows(), m.n_cols()));
  if (totals.plus < 0.5 - 1e-12) throw DomainError("majority class is -1; negate first");

  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t i, unsigned) {
    RandomStream stream(seed, i);
    const Eigen::VectorXd g = stream.gaussian_vector(static_cast<Eigen::Index>(ctx.dim()));
    Rectangle r = Rectangle::full(m.n_rows(), m.n_cols());
    std::erase_if(r.rows, [&](std::size_t x) {
      return ctx.unit_left().row(static_cast<Eigen::Index>(x)).dot(g) < 0.0;
    });
    std::erase_if(r.cols, [&](std::size_t y) {
      return ctx.unit_right().row(static_cast<Eigen::Index>(y)).dot(g) < 0.0;
    });
    const auto masses = class_masses(m, mu, r);
    values[i] = masses.plus - masses.minus;
  });

  WitnessResult out;
  out.trials = trials;
  out.best_trial = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) -
                                            values.begin());
  out.value = values[out.best_trial];
  const double n = static_cast<double>(trials);
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.standard_error = trials > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;

  RandomStream stream(seed, out.best_trial);
  const Eigen::VectorXd g = stream.gaussian_vector(static_cast<Eigen::Index>(ctx.dim()));
  out.rectangle = halfspace_rectangle(f, g);
  return out;
}

GameResult game_discrepancy(const SignMatrix& m, std::size_t iterations) {
  if (iterations < 1) throw DomainError("game needs at least one iteration");
  if (std::min(m.n_rows(), m.n_cols()) > kOracleMaxDim) {
    throw DomainError("instance too large for oracle");
  }
  const std::size_t cells = m.size();
  const double eta = std::sqrt(std::log(static_cast<double>(cells)) / static_cast<double>(iterations));

  std::vector<double> w(cells, 1.0 / static_cast<double>(cells));
  std::vector<double> average(cells, 0.0);
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> best_w = w;

  for (std::size_t t = 0; t < iterations; ++t) {
    const auto resp = best_rectangle_response(m, w);
    if (resp.value < best_value) {
      best_value = resp.value;
      best_w = w;
    }
    for (std::size_t i = 0; i < cells; ++i) average[i] += w[i];
    if (resp.rectangle.empty()) break;
    const double s = resp.signed_value >= 0.0 ? 1.0 : -1.0;
    for (auto x : resp.rectangle.rows)
      for (auto y : resp.rectangle.cols) w[x * m.n_cols() + y] *= std::exp(-eta * s * m(x, y));
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& v : w) v /= sum;
  }

  const double avg_sum = std::accumulate(average.begin(), average.end(), 0.0);
  for (auto& v : average) v /= avg_sum;
  const auto avg_resp = best_rectangle_response(m, average);
  if (avg_resp.value < best_value) {
    best_value = avg_resp.value;
    best_w = average;
  }

  const double sum = std::accumulate(best_w.begin(), best_w.end(), 0.0);
  for (auto& v : best_w) v /= sum;
  return GameResult{best_value, EntryMeasure(m.n_rows(), m.n_cols(), std::move(best_w)), iterations};
}

}  // namespace lowrank
