#pragma once

#include <cstddef>

#include "lowrank/sign_matrix.hpp"

namespace lowrank {

/// Largest dimension the exhaustive oracles accept for the smaller side.
inline constexpr std::size_t kOracleMaxDim = 20;

/// Fully monochromatic R' ⊆ R whose entries all equal `target`.
///
/// Greedy deletion: while an off-sign entry remains, drop the row or column
/// of R with the highest off-sign fraction (rows win ties, then lower index).
/// The result is never smaller than deletion_baseline(). Empty only when R
/// holds no `target` entry.
Rectangle extract_monochromatic_subrectangle(const SignMatrix& m, const Rectangle& r, Sign target);

/// The larger of "keep only clean rows" and "keep only clean columns" of R.
Rectangle deletion_baseline(const SignMatrix& m, const Rectangle& r, Sign target);

/// Exact maximum-area rectangle of `target` entries. Enumerates subsets of the
/// smaller side; for a fixed subset the best partner set is every line that is
/// `target` on it. Ties resolve to the lexicographically smallest (rows, cols).
/// Throws DomainError("instance too large for oracle") past kOracleMaxDim.
Rectangle brute_force_max_monochromatic(const SignMatrix& m, Sign target);

/// Among rectangles with mu(R ∩ Q_{-1}) <= delta mu(R), one of maximum mu(R).
/// Same enumeration as above; the partner set is chosen by an exact
/// branch-and-bound knapsack.
Rectangle brute_force_best_almost_mono(const SignMatrix& m, const EntryMeasure& mu, double delta);

}  // namespace lowrank
