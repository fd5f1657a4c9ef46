#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lowrank/rounding.hpp"
#include "lowrank/sign_matrix.hpp"

namespace lowrank {

struct ProtocolConfig {
  /// Template for each node's rectangle search; delta is replaced per node by
  /// 1 / (8 rank) and the seed by one derived from the node's region.
  RoundingConfig rounding{.max_attempts = 2'000};
  double rank_tolerance = kDefaultRankTolerance;
  double john_eps = 1e-3;
  /// Regions with at most this many entries skip rounding and use the oracle.
  std::size_t direct_floor = 4;
};

enum class BlockSource { Rounding, Oracle, Cell };

struct ProtocolNode {
  enum class Kind { Leaf, Split };
  Kind kind = Kind::Leaf;
  /// Inputs that reach this node, in original indices.
  Rectangle region;
  /// Split only: the monochromatic block A x B.
  Rectangle block;
  Sign label = Sign::Plus;
  /// Split only: children for (x in A, y in B), (x in A, y not in B), (x not in A).
  int hit = -1;
  int inside = -1;
  int outside = -1;
  /// 1 if the player's bit is actually needed at this node.
  unsigned alice_bits = 0;
  unsigned bob_bits = 0;
  BlockSource source = BlockSource::Oracle;
};

/// Deterministic two-party protocol. At a split node Alice announces whether
/// x lies in A; if it does, Bob announces whether y lies in B. (yes, yes) is a
/// monochromatic leaf, (yes, no) continues on A x (Y' \ B), and "no" continues
/// on (X' \ A) x Y'.
class ProtocolTree {
 public:
  ProtocolTree(std::size_t n_rows, std::size_t n_cols, std::vector<ProtocolNode> nodes);

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  const std::vector<ProtocolNode>& nodes() const noexcept { return nodes_; }
  const ProtocolNode& root() const { return nodes_.front(); }
  std::size_t worst_case_cost() const noexcept { return worst_case_cost_; }

 private:
  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<ProtocolNode> nodes_;
  std::size_t worst_case_cost_ = 0;
};

ProtocolTree build_protocol(const SignMatrix& m, const ProtocolConfig& config = {});

struct Evaluation {
  Sign value;
  std::size_t bits;
};

/// Walks the tree for input (x, y). Throws DomainError on out-of-range input.
Evaluation evaluate(const ProtocolTree& tree, std::size_t x, std::size_t y);

struct ProtocolStats {
  std::size_t leaves = 0;
  std::size_t worst_case_cost = 0;
  std::size_t depth = 0;
  std::size_t split_nodes = 0;
  std::size_t rounding_blocks = 0;
  std::size_t oracle_blocks = 0;
  std::size_t cell_blocks = 0;
};

ProtocolStats protocol_stats(const ProtocolTree& tree);

/// Pre-order dump, one node per line: "NODE <rows-hex> <cols-hex>" giving A
/// and B as bitmasks over original indices (bit i = index i), followed by the
/// (yes, yes) leaf, the (yes, no) subtree when Y' \ B is nonempty and the "no"
/// subtree when X' \ A is nonempty; or "LEAF <+1|-1>".
std::string serialize(const ProtocolTree& tree);

/// Inverse of serialize(). Throws FormatError with the offending line.
ProtocolTree parse_protocol(const std::string& text, std::size_t n_rows, std::size_t n_cols);

/// Hex bitmask of an index set, most significant digit first, "0" if empty.
std::string index_mask_hex(const std::vector<std::size_t>& indices);
std::vector<std::size_t> parse_index_mask_hex(const std::string& hex);

}  // namespace lowrank
