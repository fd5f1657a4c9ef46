#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace lowrank {

enum class Sign : std::int8_t { Minus = -1, Plus = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign negate(Sign s) noexcept { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

/// Dense matrix with entries in {+1, -1}, stored row-major. Rows are the
/// inputs of the first player (X), columns those of the second (Y).
class SignMatrix {
 public:
  /// Builds a matrix from row-major entries; every entry must be +1 or -1.
  SignMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::int8_t> entries);

  static SignMatrix constant(std::size_t n_rows, std::size_t n_cols, Sign value);

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  std::size_t size() const noexcept { return entries_.size(); }

  int operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * n_cols_ + col];
  }
  Sign sign(std::size_t row, std::size_t col) const noexcept {
    return static_cast<Sign>(entries_[row * n_cols_ + col]);
  }

  std::span<const std::int8_t> entries() const noexcept { return entries_; }

  SignMatrix negated() const;
  SignMatrix transposed() const;
  Eigen::MatrixXd to_dense() const;

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<std::int8_t> entries_;
};

/// Combinatorial rectangle: a row subset times a column subset. Index lists
/// are kept sorted and duplicate-free.
struct Rectangle {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  static Rectangle full(std::size_t n_rows, std::size_t n_cols);
  static Rectangle of(std::vector<std::size_t> rows, std::vector<std::size_t> cols);

  bool empty() const noexcept { return rows.empty() || cols.empty(); }
  std::size_t area() const noexcept { return rows.size() * cols.size(); }
  bool contains(std::size_t row, std::size_t col) const;
  bool is_subset_of(const Rectangle& other) const;

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
  friend auto operator<=>(const Rectangle&, const Rectangle&) = default;
};

Rectangle intersect(const Rectangle& a, const Rectangle& b);

/// Probability measure on the entries of a matrix, dense row-major. Weights
/// below kSupportFloor are stored as exact zeros.
class EntryMeasure {
 public:
  static constexpr double kSupportFloor = 1e-15;
  static constexpr double kSumTolerance = 1e-9;

  EntryMeasure(std::size_t n_rows, std::size_t n_cols, std::vector<double> weights);

  static EntryMeasure uniform(std::size_t n_rows, std::size_t n_cols);

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  double operator()(std::size_t row, std::size_t col) const noexcept {
    return weights_[row * n_cols_ + col];
  }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<double> weights_;
};

struct Entry {
  std::size_t row;
  std::size_t col;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// The partition of X x Y into the +1 entries and the -1 entries.
struct EntryClasses {
  std::vector<Entry> plus;
  std::vector<Entry> minus;
};

EntryClasses entry_classes(const SignMatrix& m);

/// Sum of the weights of the entries of `r` whose sign equals `cls`.
double class_mass(const SignMatrix& m, const EntryMeasure& mu, const Rectangle& r, Sign cls);

/// Total weight of `r`, equal to class_mass(+1) + class_mass(-1).
double measure_of(const SignMatrix& m, const EntryMeasure& mu, const Rectangle& r);

/// Both class masses of `r` in one pass.
struct ClassMasses {
  double plus = 0.0;
  double minus = 0.0;
  double total() const noexcept { return plus + minus; }
};
ClassMasses class_masses(const SignMatrix& m, const EntryMeasure& mu, const Rectangle& r);

/// Expectation of M under mu conditioned on r. Throws DomainError
/// ("empty support") when mu(r) is zero.
double rectangle_bias(const SignMatrix& m, const EntryMeasure& mu, const Rectangle& r);

/// Submatrix together with the maps from its local indices to the parent's.
struct Restriction {
  SignMatrix matrix;
  std::vector<std::size_t> row_index;
  std::vector<std::size_t> col_index;

  /// Maps a rectangle in local coordinates back to the parent's coordinates.
  Rectangle lift(const Rectangle& local) const;
};

Restriction restrict(const SignMatrix& m, const Rectangle& r);

inline constexpr double kDefaultRankTolerance = 1e-9;

/// Number of singular values larger than tol times the largest one.
std::size_t numerical_rank(const SignMatrix& m, double tol = kDefaultRankTolerance);
std::size_t numerical_rank(const Eigen::MatrixXd& m, double tol = kDefaultRankTolerance);

/// True if every entry of `r` (nonempty) equals `s`.
bool is_monochromatic(const SignMatrix& m, const Rectangle& r, Sign s);

/// Sign whose entries carry at least half of the measure (+1 on ties).
Sign majority_sign(const SignMatrix& m, const EntryMeasure& mu);

}  // namespace lowrank
