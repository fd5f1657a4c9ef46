#include "lowrank/protocol.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "lowrank/error.hpp"
#include "lowrank/factorize.hpp"
#include "lowrank/john.hpp"
#include "lowrank/monochromatic.hpp"
#include "lowrank/rng.hpp"

namespace lowrank {

namespace {

std::uint64_t region_hash(const Rectangle& r) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (auto x : r.rows) h = mix64(h ^ (x + 1));
  h = mix64(h ^ 0xffffffffffffffffULL);
  for (auto y : r.cols) h = mix64(h ^ (y + 1));
  return h;
}

std::vector<std::size_t> minus_sorted(const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::optional<Sign> constant_sign(const SignMatrix& m, const Rectangle& r) {
  const Sign first = m.sign(r.rows.front(), r.cols.front());
  return is_monochromatic(m, r, first) ? std::optional<Sign>(first) : std::nullopt;
}

class Builder {
 public:
  Builder(const SignMatrix& m, const ProtocolConfig& config) : m_(m), config_(config) {}

  std::vector<ProtocolNode> run() {
    build(Rectangle::full(m_.n_rows(), m_.n_cols()));
    return std::move(nodes_);
  }

 private:
  int add(ProtocolNode node) {
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size() - 1);
  }

  int leaf(Rectangle region, Sign label) {
    ProtocolNode n;
    n.kind = ProtocolNode::Kind::Leaf;
    n.region = std::move(region);
    n.label = label;
    return add(std::move(n));
  }

  // Monochromatic block of the region (local coordinates) and its origin.
  std::pair<Rectangle, BlockSource> find_block(const Restriction& sub, Sign majority,
                                               const Rectangle& region) {
    const SignMatrix& local = sub.matrix;
    if (local.size() > config_.direct_floor) {
      const SignMatrix work = majority == Sign::Plus ? local : local.negated();
      const std::size_t rank = numerical_rank(work, config_.rank_tolerance);
      RoundingConfig rc = config_.rounding;
      rc.delta = 1.0 / (8.0 * static_cast<double>(rank));
      rc.master_seed = derive_seed(config_.rounding.master_seed, region_hash(region));
      try {
        const Factorization f =
            john_rescale(rank_factorization(work, config_.rank_tolerance), config_.john_eps);
        const auto mu = EntryMeasure::uniform(work.n_rows(), work.n_cols());
        const auto outcome = find_almost_monochromatic(work, f, mu, rc);
        Rectangle block = extract_monochromatic_subrectangle(work, outcome.rectangle, Sign::Plus);
        if (!block.empty()) return {std::move(block), BlockSource::Rounding};
      } catch (const NoQualifyingRectangle&) {
      }
    }
    if (std::min(local.n_rows(), local.n_cols()) <= kOracleMaxDim) {
      return {brute_force_max_monochromatic(local, majority), BlockSource::Oracle};
    }
    for (std::size_t x = 0; x < local.n_rows(); ++x)
      for (std::size_t y = 0; y < local.n_cols(); ++y)
        if (local.sign(x, y) == majority) return {Rectangle{{x}, {y}}, BlockSource::Cell};
    throw DomainError("region holds no entry of its majority sign");
  }

  int build(Rectangle region) {
    if (auto s = constant_sign(m_, region)) return leaf(std::move(region), *s);

    const Restriction sub = restrict(m_, region);
    const auto uniform = EntryMeasure::uniform(sub.matrix.n_rows(), sub.matrix.n_cols());
    const Sign majority = majority_sign(sub.matrix, uniform);
    auto [local_block, source] = find_block(sub, majority, region);
    Rectangle block = sub.lift(local_block);

    ProtocolNode node;
    node.kind = ProtocolNode::Kind::Split;
    node.region = region;
    node.block = block;
    node.label = majority;
    node.source = source;
    node.alice_bits = block.rows.size() < region.rows.size() ? 1 : 0;
    node.bob_bits = block.cols.size() < region.cols.size() ? 1 : 0;
    const int self = add(std::move(node));

    const int hit = leaf(block, majority);
    nodes_[static_cast<std::size_t>(self)].hit = hit;
    if (block.cols.size() < region.cols.size()) {
      const int inside = build(Rectangle{block.rows, minus_sorted(region.cols, block.cols)});
      nodes_[static_cast<std::size_t>(self)].inside = inside;
    }
    if (block.rows.size() < region.rows.size()) {
      const int outside = build(Rectangle{minus_sorted(region.rows, block.rows), region.cols});
      nodes_[static_cast<std::size_t>(self)].outside = outside;
    }
    return self;
  }

  const SignMatrix& m_;
  const ProtocolConfig& config_;
  std::vector<ProtocolNode> nodes_;
};

std::size_t subtree_cost(const std::vector<ProtocolNode>& nodes, int index) {
  const auto& n = nodes.at(static_cast<std::size_t>(index));
  if (n.kind == ProtocolNode::Kind::Leaf) return 0;
  const std::size_t both = n.alice_bits + n.bob_bits;
  std::size_t cost = both;
  if (n.inside >= 0) cost = std::max(cost, both + subtree_cost(nodes, n.inside));
  if (n.outside >= 0) cost = std::max(cost, n.alice_bits + subtree_cost(nodes, n.outside));
  return cost;
}

std::size_t subtree_depth(const std::vector<ProtocolNode>& nodes, int index) {
  const auto& n = nodes.at(static_cast<std::size_t>(index));
  if (n.kind == ProtocolNode::Kind::Leaf) return 0;
  std::size_t d = 1;
  for (int c : {n.hit, n.inside, n.outside})
    if (c >= 0) d = std::max(d, 1 + subtree_depth(nodes, c));
  return d;
}

}  // namespace

ProtocolTree::ProtocolTree(std::size_t n_rows, std::size_t n_cols, std::vector<ProtocolNode> nodes)
    : n_rows_(n_rows), n_cols_(n_cols), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw DomainError("protocol tree needs a root");
  worst_case_cost_ = subtree_cost(nodes_, 0);
}

ProtocolTree build_protocol(const SignMatrix& m, const ProtocolConfig& config) {
  return ProtocolTree(m.n_rows(), m.n_cols(), Builder(m, config).run());
}

Evaluation evaluate(const ProtocolTree& tree, std::size_t x, std::size_t y) {
  if (x >= tree.n_rows() || y >= tree.n_cols()) throw DomainError("input index out of range");
  const auto& nodes = tree.nodes();
  std::size_t bits = 0;
  int at = 0;
  for (;;) {
    const auto& n = nodes[static_cast<std::size_t>(at)];
    if (n.kind == ProtocolNode::Kind::Leaf) return Evaluation{n.label, bits};
    bits += n.alice_bits;
    if (!std::binary_search(n.block.rows.begin(), n.block.rows.end(), x)) {
      at = n.outside;
      continue;
    }
    bits += n.bob_bits;
    at = std::binary_search(n.block.cols.begin(), n.block.cols.end(), y) ? n.hit : n.inside;
  }
}

ProtocolStats protocol_stats(const ProtocolTree& tree) {
  ProtocolStats s;
  for (const auto& n : tree.nodes()) {
    if (n.kind == ProtocolNode::Kind::Leaf) {
      ++s.leaves;
      continue;
    }
    ++s.split_nodes;
    switch (n.source) {
      case BlockSource::Rounding: ++s.rounding_blocks; break;
      case BlockSource::Oracle: ++s.oracle_blocks; break;
      case BlockSource::Cell: ++s.cell_blocks; break;
    }
  }
  s.worst_case_cost = tree.worst_case_cost();
  s.depth = subtree_depth(tree.nodes(), 0);
  return s;
}

std::string index_mask_hex(const std::vector<std::size_t>& indices) {
  if (indices.empty()) return "0";
  const std::size_t digits = indices.back() / 4 + 1;
  std::string out(digits, '0');
  for (auto i : indices) {
    auto& c = out[digits - 1 - i / 4];
    const int v = (c <= '9' ? c - '0' : c - 'a' + 10) | (1 << (i % 4));
    c = static_cast<char>(v < 10 ? '0' + v : 'a' + v - 10);
  }
  return out;
}

std::vector<std::size_t> parse_index_mask_hex(const std::string& hex) {
  if (hex.empty()) throw DomainError("empty hex mask");
  std::vector<std::size_t> out;
  const std::size_t digits = hex.size();
  for (std::size_t d = 0; d < digits; ++d) {
    const char c = hex[digits - 1 - d];
    int v = 0;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else
      throw DomainError(std::string("invalid hex digit '") + c + "'");
    for (int b = 0; b < 4; ++b)
      if (v & (1 << b)) out.push_back(4 * d + static_cast<std::size_t>(b));
  }
  return out;
}

std::string serialize(const ProtocolTree& tree) {
  std::ostringstream os;
  const auto& nodes = tree.nodes();
  std::function<void(int)> emit = [&](int i) {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    if (n.kind == ProtocolNode::Kind::Leaf) {
      os << "LEAF " << (n.label == Sign::Plus ? "+1" : "-1") << '\n';
      return;
    }
    os << "NODE " << index_mask_hex(n.block.rows) << ' ' << index_mask_hex(n.block.cols) << '\n';
    emit(n.hit);
    if (n.inside >= 0) emit(n.inside);
    if (n.outside >= 0) emit(n.outside);
  };
  emit(0);
  return os.str();
}

ProtocolTree parse_protocol(const std::string& text, std::size_t n_rows, std::size_t n_cols) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
  }
  std::size_t next = 0;
  std::vector<ProtocolNode> nodes;

  std::function<int(Rectangle)> read = [&](Rectangle region) -> int {
    if (next >= lines.size()) throw FormatError("unexpected end of protocol", lines.size() + 1, 1);
    const std::size_t lineno = next + 1;
    std::istringstream is(lines[next++]);
    std::string tag;
    is >> tag;
    if (tag == "LEAF") {
      std::string label;
      is >> label;
      if (label != "+1" && label != "-1") throw FormatError("leaf label must be +1 or -1", lineno, 6);
      ProtocolNode n;
      n.region = std::move(region);
      n.label = label == "+1" ? Sign::Plus : Sign::Minus;
      nodes.push_back(std::move(n));
      return static_cast<int>(nodes.size() - 1);
    }
    if (tag != "NODE") throw FormatError("expected NODE or LEAF", lineno, 1);
    std::string rows_hex, cols_hex;
    if (!(is >> rows_hex >> cols_hex)) throw FormatError("NODE needs two masks", lineno, 6);
    Rectangle block;
    try {
      block = Rectangle{parse_index_mask_hex(rows_hex), parse_index_mask_hex(cols_hex)};
    } catch (const DomainError& e) {
      throw FormatError(e.what(), lineno, 6);
    }
    if (block.empty() || !block.is_subset_of(region)) {
      throw FormatError("block is empty or leaves the current region", lineno, 6);
    }
    ProtocolNode n;
    n.kind = ProtocolNode::Kind::Split;
    n.region = region;
    n.block = block;
    n.alice_bits = block.rows.size() < region.rows.size() ? 1 : 0;
    n.bob_bits = block.cols.size() < region.cols.size() ? 1 : 0;
    nodes.push_back(n);
    const auto self = nodes.size() - 1;
    const int hit = read(block);
    nodes[self].hit = hit;
    nodes[self].label = nodes[static_cast<std::size_t>(hit)].label;
    if (block.cols.size() < region.cols.size()) {
      const int inside = read(Rectangle{block.rows, minus_sorted(region.cols, block.cols)});
      nodes[self].inside = inside;
    }
    if (block.rows.size() < region.rows.size()) {
      const int outside = read(Rectangle{minus_sorted(region.rows, block.rows), region.cols});
      nodes[self].outside = outside;
    }
    return static_cast<int>(self);
  };

  read(Rectangle::full(n_rows, n_cols));
  while (next < lines.size() && lines[next].empty()) ++next;
  if (next != lines.size()) throw FormatError("trailing content after protocol", next + 1, 1);
  return ProtocolTree(n_rows, n_cols, std::move(nodes));
}

}  // namespace lowrank
