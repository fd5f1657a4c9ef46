#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lowrank/factorize.hpp"
#include "lowrank/sign_matrix.hpp"

namespace lowrank {

/// Set families over the ground set {0, ..., 8r-1}, split into four blocks of
/// 2r symbols: A = [0, 2r), A' = [2r, 4r), B = [4r, 6r), B' = [6r, 8r).
struct SetFamilyInstance {
  std::size_t r = 0;
  /// Sorted symbol lists. Row family: r symbols of A plus one of B, then r
  /// of A' plus one of B'. Column family: r of B plus one of A', then r of
  /// B' plus one of A.
  std::vector<std::vector<std::size_t>> row_sets;
  std::vector<std::vector<std::size_t>> col_sets;

  std::size_t ground_size() const noexcept { return 8 * r; }
  std::size_t intersection(std::size_t row, std::size_t col) const;

  /// <(1_a, -1), (1_b, 1)> under the diagonal Gram form diag(2, ..., 2, 1),
  /// evaluated in integers: 2 |a ∩ b| - 1.
  long long exact_inner(std::size_t row, std::size_t col) const;
};

struct KotlovLovasz {
  SignMatrix matrix;
  Factorization factorization;
  SetFamilyInstance families;
};

/// Largest r accepted by kotlov_lovasz (family size 2 * C(2r, r) * 2r).
inline constexpr std::size_t kKotlovLovaszMaxR = 3;

/// M(a, b) = 2|a ∩ b| - 1 with the explicit factorization
/// u_a = (sqrt2 1_a, -1), v_b = (sqrt2 1_b, 1) in R^{8r+1}.
KotlovLovasz kotlov_lovasz(std::size_t r);

/// Random guillotine partition of X x Y into k rectangles (fewer if the
/// matrix has fewer than k entries), each given a random sign.
SignMatrix rectangle_partition_random(std::size_t n, std::size_t m, std::size_t k,
                                      std::uint64_t seed);

/// +1 on the diagonal, -1 elsewhere (2I - J).
SignMatrix equality_matrix(std::size_t n);

}  // namespace lowrank
