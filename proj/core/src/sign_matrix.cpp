#include "lowrank/sign_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowrank/error.hpp"

namespace lowrank {

namespace {

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<std::size_t> iota_vector(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

SignMatrix::SignMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::int8_t> entries)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)) {
  if (n_rows_ == 0 || n_cols_ == 0) {
    throw DomainError("sign matrix must have at least one row and one column");
  }
  if (entries_.size() != n_rows_ * n_cols_) {
    throw DomainError("sign matrix entry count " + std::to_string(entries_.size()) +
                      " does not match shape " + std::to_string(n_rows_) + "x" +
                      std::to_string(n_cols_));
  }
  for (auto e : entries_) {
    if (e != 1 && e != -1) throw DomainError("sign matrix entries must be +1 or -1");
  }
}

SignMatrix SignMatrix::constant(std::size_t n_rows, std::size_t n_cols, Sign value) {
  return SignMatrix(n_rows, n_cols,
                    std::vector<std::int8_t>(n_rows * n_cols, static_cast<std::int8_t>(value)));
}

SignMatrix SignMatrix::negated() const {
  auto e = entries_;
  for (auto& v : e) v = static_cast<std::int8_t>(-v);
  return SignMatrix(n_rows_, n_cols_, std::move(e));
}

SignMatrix SignMatrix::transposed() const {
  std::vector<std::int8_t> e(entries_.size());
  for (std::size_t x = 0; x < n_rows_; ++x)
    for (std::size_t y = 0; y < n_cols_; ++y) e[y * n_rows_ + x] = entries_[x * n_cols_ + y];
  return SignMatrix(n_cols_, n_rows_, std::move(e));
}

Eigen::MatrixXd SignMatrix::to_dense() const {
  Eigen::MatrixXd d(n_rows_, n_cols_);
  for (std::size_t x = 0; x < n_rows_; ++x)
    for (std::size_t y = 0; y < n_cols_; ++y)
      d(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = (*this)(x, y);
  return d;
}

Rectangle Rectangle::full(std::size_t n_rows, std::size_t n_cols) {
  return Rectangle{iota_vector(n_rows), iota_vector(n_cols)};
}

Rectangle Rectangle::of(std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  return Rectangle{sorted_unique(std::move(rows)), sorted_unique(std::move(cols))};
}

bool Rectangle::contains(std::size_t row, std::size_t col) const {
  return std::binary_search(rows.begin(), rows.end(), row) &&
         std::binary_search(cols.begin(), cols.end(), col);
}

bool Rectangle::is_subset_of(const Rectangle& other) const {
  return std::includes(other.rows.begin(), other.rows.end(), rows.begin(), rows.end()) &&
         std::includes(other.cols.begin(), other.cols.end(), cols.begin(), cols.end());
}

Rectangle intersect(const Rectangle& a, const Rectangle& b) {
  Rectangle out;
  std::set_intersection(a.rows.begin(), a.rows.end(), b.rows.begin(), b.rows.end(),
                        std::back_inserter(out.rows));
  std::set_intersection(a.cols.begin(), a.cols.end(), b.cols.begin(), b.cols.end(),
                        std::back_inserter(out.cols));
  return out;
}

EntryMeasure::EntryMeasure(std::size_t n_rows, std::size_t n_cols, std::vector<double> weights)
    : n_rows_(n_rows), n_cols_(n_cols), weights_(std::move(weights)) {
  if (weights_.size() != n_rows_ * n_cols_) {
    throw DomainError("measure has " + std::to_string(weights_.size()) + " weights, expected " +
                      std::to_string(n_rows_ * n_cols_));
  }
  double sum = 0.0;
  for (auto& w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw DomainError("measure weights must be finite and >= 0");
    if (w < kSupportFloor) w = 0.0;
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DomainError("measure weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

EntryMeasure EntryMeasure::uniform(std::size_t n_rows, std::size_t n_cols) {
  const double w = 1.0 / static_cast<double>(n_rows * n_cols);
  return EntryMeasure(n_rows, n_cols, std::vector<double>(n_rows * n_cols, w));
}

EntryClasses entry_classes(const SignMatrix& m) {
  EntryClasses q;
  for (std::size_t x = 0; x < m.n_rows(); ++x)
    for (std::size_t y = 0; y < m.n_cols(); ++y)
      (m(x, y) > 0 ? q.plus : q.minus).push_back(Entry{x, y});
  return q;
}

ClassMasses class_masses(const SignMatrix& m, const EntryMeasure& mu, const Rectangle& r) {
  ClassMasses out;
  for (auto x : r.rows)
    for (auto y : r.cols) {
      if (m(x, y) > 0)
        out.plus += mu(x, y);
      else
        out.minus += mu(x, y);
    }
  return out;
}

double class_mass(const SignMatrix& m, const EntryMeasure& mu, const Rectangle& r, Sign cls) {
  const auto masses = class_masses(m, mu, r);
  return cls == Sign::Plus ? masses.plus : masses.minus;
}

double measure_of(const SignMatrix& m, const EntryMeasure& mu, const Rectangle& r) {
  return class_masses(m, mu, r).total();
}

double rectangle_bias(const SignMatrix& m, const EntryMeasure& mu, const Rectangle& r) {
  const auto masses = class_masses(m, mu, r);
  const double total = masses.total();
  if (!(total > 0.0)) throw DomainError("empty support");
  return std::clamp((masses.plus - masses.minus) / total, -1.0, 1.0);
}

Rectangle Restriction::lift(const Rectangle& local) const {
  Rectangle out;
  out.rows.reserve(local.rows.size());
  out.cols.reserve(local.cols.size());
  for (auto x : local.rows) out.rows.push_back(row_index.at(x));
  for (auto y : local.cols) out.cols.push_back(col_index.at(y));
  return out;
}

Restriction restrict(const SignMatrix& m, const Rectangle& r) {
  if (r.empty()) throw DomainError("cannot restrict to an empty rectangle");
  if (r.rows.back() >= m.n_rows() || r.cols.back() >= m.n_cols()) {
    throw DomainError("rectangle index out of range");
  }
  std::vector<std::int8_t> e;
  e.reserve(r.area());
  for (auto x : r.rows)
    for (auto y : r.cols) e.push_back(static_cast<std::int8_t>(m(x, y)));
  return Restriction{SignMatrix(r.rows.size(), r.cols.size(), std::move(e)), r.rows, r.cols};
}

std::size_t numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (!(tol > 0.0)) throw DomainError("rank tolerance must be positive");
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++rank;
  return rank;
}

std::size_t numerical_rank(const SignMatrix& m, double tol) {
  return numerical_rank(m.to_dense(), tol);
}

bool is_monochromatic(const SignMatrix& m, const Rectangle& r, Sign s) {
  const int v = to_int(s);
  for (auto x : r.rows)
    for (auto y : r.cols)
      if (m(x, y) != v) return false;
  return true;
}

Sign majority_sign(const SignMatrix& m, const EntryMeasure& mu) {
  const auto masses = class_masses(m, mu, Rectangle::full(m.n_rows(), m.n_cols()));
  return masses.plus >= masses.minus ? Sign::Plus : Sign::Minus;
}

}  // namespace lowrank
