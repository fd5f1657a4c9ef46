#include "lowrank/generators.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "lowrank/error.hpp"
#include "lowrank/rng.hpp"

namespace lowrank {

namespace {

// All r-subsets of [base, base + 2r) in lexicographic order.
std::vector<std::vector<std::size_t>> half_subsets(std::size_t base, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick(r);
  for (std::size_t i = 0; i < r; ++i) pick[i] = i;
  const std::size_t n = 2 * r;
  for (;;) {
    std::vector<std::size_t> s(r);
    for (std::size_t i = 0; i < r; ++i) s[i] = base + pick[i];
    out.push_back(std::move(s));
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// {S ∪ {t} : S an r-subset of the big block, t in the single block}, in
// lexicographic order of the sorted symbol list.
std::vector<std::vector<std::size_t>> family(std::size_t big_base, std::size_t single_base,
                                             std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : half_subsets(big_base, r))
    for (std::size_t t = 0; t < 2 * r; ++t) {
      auto set = s;
      set.push_back(single_base + t);
      std::sort(set.begin(), set.end());
      out.push_back(std::move(set));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::size_t SetFamilyInstance::intersection(std::size_t row, std::size_t col) const {
  const auto& a = row_sets.at(row);
  const auto& b = col_sets.at(col);
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

long long SetFamilyInstance::exact_inner(std::size_t row, std::size_t col) const {
  // Coordinates 0..8r-1 carry weight 2, the last one weight 1; the last
  // coordinates of the two vectors are -1 and +1.
  const auto& a = row_sets.at(row);
  const auto& b = col_sets.at(col);
  std::vector<long long> u(ground_size() + 1, 0), v(ground_size() + 1, 0);
  for (auto s : a) u[s] = 1;
  for (auto s : b) v[s] = 1;
  u.back() = -1;
  v.back() = 1;
  long long sum = 0;
  for (std::size_t i = 0; i < ground_size(); ++i) sum += 2 * u[i] * v[i];
  return sum + u.back() * v.back();
}

KotlovLovasz kotlov_lovasz(std::size_t r) {
  if (r < 1) throw DomainError("kotlov_lovasz needs r >= 1");
  if (r > kKotlovLovaszMaxR) throw DomainError("kotlov_lovasz instance too large");
  const std::size_t a = 0, a_prime = 2 * r, b = 4 * r, b_prime = 6 * r;

  SetFamilyInstance inst;
  inst.r = r;
  inst.row_sets = family(a, b, r);
  auto rows_second = family(a_prime, b_prime, r);
  std::move(rows_second.begin(), rows_second.end(), std::back_inserter(inst.row_sets));
  inst.col_sets = family(b, a_prime, r);
  auto cols_second = family(b_prime, a, r);
  std::move(cols_second.begin(), cols_second.end(), std::back_inserter(inst.col_sets));

  const std::size_t n = inst.row_sets.size();
  const std::size_t m = inst.col_sets.size();
  std::vector<std::int8_t> entries(n * m);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t k = inst.intersection(x, y);
      if (k > 1) throw DomainError("set families intersect in more than one symbol");
      entries[x * m + y] = static_cast<std::int8_t>(2 * static_cast<int>(k) - 1);
    }

  const auto dim = static_cast<Eigen::Index>(8 * r + 1);
  const double root2 = std::sqrt(2.0);
  Factorization f;
  f.left = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), dim);
  f.right = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), dim);
  for (std::size_t x = 0; x < n; ++x) {
    for (auto s : inst.row_sets[x]) f.left(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(s)) = root2;
    f.left(static_cast<Eigen::Index>(x), dim - 1) = -1.0;
  }
  for (std::size_t y = 0; y < m; ++y) {
    for (auto s : inst.col_sets[y]) f.right(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(s)) = root2;
    f.right(static_cast<Eigen::Index>(y), dim - 1) = 1.0;
  }

  return KotlovLovasz{SignMatrix(n, m, std::move(entries)), std::move(f), std::move(inst)};
}

SignMatrix rectangle_partition_random(std::size_t n, std::size_t m, std::size_t k,
                                      std::uint64_t seed) {
  if (n == 0 || m == 0) throw DomainError("rectangle_partition_random needs n, m >= 1");
  if (k < 1) throw DomainError("rectangle_partition_random needs k >= 1");
  struct Block {
    std::size_t row0, rows, col0, cols;
  };
  RandomStream rng(seed);
  std::vector<Block> blocks{{0, n, 0, m}};
  while (blocks.size() < k) {
    std::vector<std::size_t> splittable;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (blocks[i].rows > 1 || blocks[i].cols > 1) splittable.push_back(i);
    if (splittable.empty()) break;
    const std::size_t index = splittable[rng.below(splittable.size())];
    const Block blk = blocks[index];
    bool split_rows = blk.rows > 1;
    if (blk.rows > 1 && blk.cols > 1) split_rows = rng.below(2) == 0;
    Block first = blk, second = blk;
    if (split_rows) {
      const std::size_t cut = 1 + rng.below(blk.rows - 1);
      first.rows = cut;
      second.row0 = blk.row0 + cut;
      second.rows = blk.rows - cut;
    } else {
      const std::size_t cut = 1 + rng.below(blk.cols - 1);
      first.cols = cut;
      second.col0 = blk.col0 + cut;
      second.cols = blk.cols - cut;
    }
    blocks[index] = first;
    blocks.push_back(second);
  }

  std::vector<std::int8_t> entries(n * m, 1);
  for (const auto& blk : blocks) {
    const auto s = static_cast<std::int8_t>(rng.below(2) == 0 ? 1 : -1);
    for (std::size_t x = blk.row0; x < blk.row0 + blk.rows; ++x)
      for (std::size_t y = blk.col0; y < blk.col0 + blk.cols; ++y) entries[x * m + y] = s;
  }
  return SignMatrix(n, m, std::move(entries));
}

SignMatrix equality_matrix(std::size_t n) {
  if (n < 1) throw DomainError("equality_matrix needs n >= 1");
  std::vector<std::int8_t> entries(n * n, -1);
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = 1;
  return SignMatrix(n, n, std::move(entries));
}

}  // namespace lowrank
