#include "lowrank/monochromatic.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <tuple>

#include "lowrank/error.hpp"

namespace lowrank {

namespace {

void check_oracle_size(const SignMatrix& m) {
  if (std::min(m.n_rows(), m.n_cols()) > kOracleMaxDim) {
    throw DomainError("instance too large for oracle");
  }
}

Rectangle swap_sides(Rectangle r) { return Rectangle{std::move(r.cols), std::move(r.rows)}; }

EntryMeasure transposed(const EntryMeasure& mu) {
  std::vector<double> w(mu.weights().size());
  for (std::size_t x = 0; x < mu.n_rows(); ++x)
    for (std::size_t y = 0; y < mu.n_cols(); ++y) w[y * mu.n_rows() + x] = mu(x, y);
  return EntryMeasure(mu.n_cols(), mu.n_rows(), std::move(w));
}

std::vector<std::size_t> subset_indices(std::uint32_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask & (std::uint32_t{1} << i)) out.push_back(i);
  return out;
}

// Columns are the enumerated (smaller) side.
// `swapped` marks a transposed call, so ties compare in the caller's (rows, cols) order.
Rectangle max_mono_wide(const SignMatrix& m, Sign target, bool swapped) {
  const std::size_t n = m.n_rows();
  const std::size_t k = m.n_cols();
  std::vector<std::uint32_t> good(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < k; ++y)
      if (m.sign(x, y) == target) good[x] |= std::uint32_t{1} << y;

  Rectangle best;
  std::size_t best_area = 0;
  const auto earlier = [swapped](const Rectangle& a, const Rectangle& b) {
    return swapped ? std::tie(a.cols, a.rows) < std::tie(b.cols, b.rows) : a < b;
  };
  const std::uint32_t limit = (std::uint32_t{1} << k) - 1;
  for (std::uint32_t s = 1;; ++s) {
    const std::size_t width = static_cast<std::size_t>(std::popcount(s));
    std::size_t height = 0;
    for (std::size_t x = 0; x < n; ++x)
      if ((good[x] & s) == s) ++height;
    const std::size_t area = width * height;
    if (area > 0 && area >= best_area) {
      Rectangle cand;
      for (std::size_t x = 0; x < n; ++x)
        if ((good[x] & s) == s) cand.rows.push_back(x);
      cand.cols = subset_indices(s, k);
      if (area > best_area || earlier(cand, best)) {
        best = std::move(cand);
        best_area = area;
      }
    }
    if (s == limit) break;
  }
  return best;
}

struct KnapsackItem {
  std::size_t index;
  double value;
  double weight;
};

// Maximizes the total value of a subset with total weight <= capacity.
// Items are sorted by value density; the LP relaxation bounds each branch.
class Knapsack {
 public:
  Knapsack(std::vector<KnapsackItem> items, double capacity)
      : items_(std::move(items)), capacity_(capacity) {
    std::sort(items_.begin(), items_.end(), [](const KnapsackItem& a, const KnapsackItem& b) {
      const double da = a.value / a.weight;
      const double db = b.value / b.weight;
      if (da != db) return da > db;
      return a.index < b.index;
    });
    taken_.assign(items_.size(), 0);
    best_taken_ = taken_;
  }

  double solve() {
    search(0, 0.0, 0.0);
    return best_value_;
  }

  std::vector<std::size_t> chosen() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < items_.size(); ++i)
      if (best_taken_[i]) out.push_back(items_[i].index);
    return out;
  }

 private:
  double bound(std::size_t i, double value, double weight) const {
    double room = capacity_ - weight;
    for (; i < items_.size(); ++i) {
      if (items_[i].weight <= room) {
        room -= items_[i].weight;
        value += items_[i].value;
      } else {
        return value + items_[i].value * (room / items_[i].weight);
      }
    }
    return value;
  }

  void search(std::size_t i, double value, double weight) {
    if (value > best_value_ + 1e-15) {
      best_value_ = value;
      best_taken_ = taken_;
    }
    if (i == items_.size() || bound(i, value, weight) <= best_value_ + 1e-15) return;
    if (weight + items_[i].weight <= capacity_ + 1e-12) {
      taken_[i] = 1;
      search(i + 1, value + items_[i].value, weight + items_[i].weight);
      taken_[i] = 0;
    }
    search(i + 1, value, weight);
  }

  std::vector<KnapsackItem> items_;
  double capacity_;
  std::vector<char> taken_;
  std::vector<char> best_taken_;
  double best_value_ = 0.0;
};

Rectangle best_almost_mono_wide(const SignMatrix& m, const EntryMeasure& mu, double delta) {
  const std::size_t n = m.n_rows();
  const std::size_t k = m.n_cols();
  Rectangle best;
  double best_mass = 0.0;
  const std::uint32_t limit = (std::uint32_t{1} << k) - 1;
  std::vector<double> plus(n), minus(n);
  for (std::uint32_t s = 1;; ++s) {
    const auto cols = subset_indices(s, k);
    for (std::size_t x = 0; x < n; ++x) {
      plus[x] = minus[x] = 0.0;
      for (auto y : cols) (m(x, y) > 0 ? plus[x] : minus[x]) += mu(x, y);
    }
    // Row x adds mass w = plus + minus and slack use c = minus - delta w.
    // Rows with c <= 0 are always worth taking; they fund the others.
    std::vector<std::size_t> rows;
    std::vector<KnapsackItem> items;
    double mass = 0.0;
    double budget = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      const double w = plus[x] + minus[x];
      const double c = minus[x] - delta * w;
      if (c <= 0.0) {
        rows.push_back(x);
        mass += w;
        budget -= c;
      } else {
        items.push_back({x, w, c});
      }
    }
    if (!items.empty() && mass + std::accumulate(items.begin(), items.end(), 0.0,
                                                 [](double acc, const KnapsackItem& it) {
                                                   return acc + it.value;
                                                 }) > best_mass + 1e-15) {
      Knapsack ks(std::move(items), budget);
      mass += ks.solve();
      for (auto x : ks.chosen()) rows.push_back(x);
      std::sort(rows.begin(), rows.end());
    }
    if (!rows.empty() && mass > best_mass + 1e-15) {
      best = Rectangle{std::move(rows), cols};
      best_mass = mass;
    }
    if (s == limit) break;
  }
  return best;
}

}  // namespace

Rectangle deletion_baseline(const SignMatrix& m, const Rectangle& r, Sign target) {
  Rectangle by_rows{{}, r.cols};
  for (auto x : r.rows) {
    bool clean = true;
    for (auto y : r.cols) clean = clean && m.sign(x, y) == target;
    if (clean) by_rows.rows.push_back(x);
  }
  Rectangle by_cols{r.rows, {}};
  for (auto y : r.cols) {
    bool clean = true;
    for (auto x : r.rows) clean = clean && m.sign(x, y) == target;
    if (clean) by_cols.cols.push_back(y);
  }
  if (by_rows.empty() && by_cols.empty()) return {};
  return by_cols.area() > by_rows.area() ? by_cols : by_rows;
}

Rectangle extract_monochromatic_subrectangle(const SignMatrix& m, const Rectangle& r, Sign target) {
  if (r.empty()) throw DomainError("cannot extract from an empty rectangle");
  std::vector<std::size_t> rows = r.rows;
  std::vector<std::size_t> cols = r.cols;
  std::vector<std::size_t> row_off(rows.size(), 0), col_off(cols.size(), 0);
  std::size_t total_off = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (m.sign(rows[i], cols[j]) != target) {
        ++row_off[i];
        ++col_off[j];
        ++total_off;
      }

  while (total_off > 0) {
    const auto ri = static_cast<std::size_t>(
        std::max_element(row_off.begin(), row_off.end()) - row_off.begin());
    const auto cj = static_cast<std::size_t>(
        std::max_element(col_off.begin(), col_off.end()) - col_off.begin());
    // Compare row_off/|cols| against col_off/|rows| without division.
    if (row_off[ri] * rows.size() >= col_off[cj] * cols.size()) {
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (m.sign(rows[ri], cols[j]) != target) --col_off[j];
      total_off -= row_off[ri];
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(ri));
      row_off.erase(row_off.begin() + static_cast<std::ptrdiff_t>(ri));
    } else {
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (m.sign(rows[i], cols[cj]) != target) --row_off[i];
      total_off -= col_off[cj];
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(cj));
      col_off.erase(col_off.begin() + static_cast<std::ptrdiff_t>(cj));
    }
  }

  Rectangle greedy{std::move(rows), std::move(cols)};
  if (greedy.empty()) greedy = {};
  Rectangle baseline = deletion_baseline(m, r, target);
  return baseline.area() > greedy.area() ? baseline : greedy;
}

Rectangle brute_force_max_monochromatic(const SignMatrix& m, Sign target) {
  check_oracle_size(m);
  if (m.n_cols() <= m.n_rows()) return max_mono_wide(m, target, false);
  return swap_sides(max_mono_wide(m.transposed(), target, true));
}

Rectangle brute_force_best_almost_mono(const SignMatrix& m, const EntryMeasure& mu, double delta) {
  check_oracle_size(m);
  if (!(delta >= 0.0)) throw DomainError("delta must be nonnegative");
  if (m.n_cols() <= m.n_rows()) return best_almost_mono_wide(m, mu, delta);
  return swap_sides(best_almost_mono_wide(m.transposed(), transposed(mu), delta));
}

}  // namespace lowrank
