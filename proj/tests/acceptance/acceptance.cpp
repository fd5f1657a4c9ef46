// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "lowrank/lowrank.hpp"
#include "oracles.hpp"

using namespace lowrank;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Verdict()> body;
};

Factorization certified(const SignMatrix& m, double eps = 1e-3) {
  return john_rescale(rank_factorization(m), eps);
}

double max_inner_change(const Factorization& a, const Factorization& b) {
  return (a.left * a.right.transpose() - b.left * b.right.transpose()).cwiseAbs().maxCoeff();
}

std::string fmt(double v) { return format_number(v); }

// 1. Monte-Carlo agreement with the closed form.
Verdict sheppard_monte_carlo() {
  constexpr std::size_t kDraws = 1'000'000;
  constexpr Eigen::Index kDim = 8;
  Verdict v;
  std::ostringstream os;
  std::uint64_t index = 0;
  for (double alpha : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(kDim), w = Eigen::VectorXd::Zero(kDim);
    u(0) = 1.0;
    w(0) = alpha;
    w(1) = std::sqrt(1.0 - alpha * alpha);
    RandomStream rs(20240601, index++);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < kDraws; ++i) {
      const auto g = rs.gaussian_vector(kDim);
      hits += g.dot(u) >= 0.0 && g.dot(w) >= 0.0;
    }
    const double p = sheppard_probability(alpha);
    const double freq = static_cast<double>(hits) / kDraws;
    const double se = std::sqrt(p * (1.0 - p) / kDraws);
    const double z = (freq - p) / se;
    if (std::abs(z) > 4.0) v.pass = false;
    os << "a=" << alpha << " z=" << fmt(z) << ' ';
  }
  v.detail = os.str();
  return v;
}

// 2. Grid bounds.
Verdict sheppard_bounds() {
  Verdict v;
  std::size_t checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = -1.0 + 2.0 * i / 999.0;
    const double p = sheppard_probability(a);
    if (a >= 0.0 && !(p >= 0.25)) v.pass = false;
    if (a <= 0.0 && !(p <= 0.25 - std::abs(a) / 7.0)) v.pass = false;
    ++checked;
  }
  v.detail = std::to_string(checked) + " grid points";
  return v;
}

// 3. Norm bounds after rescaling.
Verdict john_realization() {
  Verdict v;
  double worst_norm_ratio = 0.0, worst_inner = 0.0, worst_gap_ratio = 1e300;
  auto check = [&](const SignMatrix& m, const Factorization& f) {
    const auto g = john_rescale(f, 1e-3);
    const double r = static_cast<double>(g.dim());
    const double limit = std::pow(r, 0.25) * 1.001;
    const double norm = std::max(g.left.rowwise().norm().maxCoeff(), g.right.rowwise().norm().maxCoeff());
    const double inner = max_inner_change(f, g);
    double gap = 1e300;
    for (std::size_t x = 0; x < m.n_rows(); ++x)
      for (std::size_t y = 0; y < m.n_cols(); ++y) {
        const double c = g.inner(x, y) / (g.left.row(x).norm() * g.right.row(y).norm());
        gap = std::min(gap, c * m(x, y));
      }
    const double gap_ratio = gap / (0.998 / std::sqrt(r));
    worst_norm_ratio = std::max(worst_norm_ratio, norm / limit);
    worst_inner = std::max(worst_inner, inner);
    worst_gap_ratio = std::min(worst_gap_ratio, gap_ratio);
    if (norm > limit || inner > 1e-8 || gap_ratio < 1.0) v.pass = false;
  };
  RandomStream dims(33);
  for (std::uint64_t i = 0; i < 30; ++i) {
    const std::size_t n = 2 + dims.below(63), m = 2 + dims.below(63);
    const std::size_t k = 1 + dims.below(8);
    const auto mat = rectangle_partition_random(n, m, k, 1000 + i);
    check(mat, rank_factorization(mat));
  }
  for (std::size_t r : {1u, 2u}) {
    const auto kl = kotlov_lovasz(r);
    check(kl.matrix, kl.factorization);
  }
  v.detail = "max norm/limit=" + fmt(worst_norm_ratio) + " max inner change=" + fmt(worst_inner) +
             " min gap/bound=" + fmt(worst_gap_ratio);
  return v;
}

// 4. Almost-monochromatic rectangles against the exact optimum.
Verdict almost_mono_rectangles() {
  Verdict v;
  std::vector<SignMatrix> instances{kotlov_lovasz(1).matrix};
  RandomStream dims(44);
  while (instances.size() < 21) {
    const std::size_t n = 4 + dims.below(13), m = 4 + dims.below(13);
    const std::size_t k = 2 + dims.below(7);
    auto mat = rectangle_partition_random(n, m, k, 2000 + instances.size());
    if (is_monochromatic(mat, Rectangle::full(n, m), Sign::Plus) ||
        is_monochromatic(mat, Rectangle::full(n, m), Sign::Minus))
      continue;
    instances.push_back(std::move(mat));
  }
  std::size_t successes = 0, within = 0;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto m = instances[i];
    const auto mu = EntryMeasure::uniform(m.n_rows(), m.n_cols());
    if (majority_sign(m, mu) == Sign::Minus) m = m.negated();
    const auto f = certified(m);
    const double delta = 1.0 / (8.0 * static_cast<double>(f.dim()));
    RoundingConfig cfg{.delta = delta, .max_attempts = 10'000, .master_seed = 7 + i};
    RoundingOutcome out;
    try {
      out = find_almost_monochromatic(m, f, mu, cfg);
    } catch (const NoQualifyingRectangle& e) {
      out = e.best();
    }
    if (out.objective > 0.0 && out.error_mass <= delta * out.mass + 1e-12) ++successes;
    const double opt = measure_of(m, mu, brute_force_best_almost_mono(m, mu, delta));
    const double ratio = opt / out.mass;
    worst_ratio = std::max(worst_ratio, ratio);
    if (out.objective > 0.0 && 4.0 * out.mass >= opt - 1e-12) ++within;
  }
  const std::size_t total = instances.size();
  if (successes != total || 5 * within < 4 * total) v.pass = false;
  v.detail = "success " + std::to_string(successes) + "/" + std::to_string(total) + ", within 4x " +
             std::to_string(within) + "/" + std::to_string(total) + ", worst opt/found=" + fmt(worst_ratio);
  return v;
}

// 5. Discrepancy lower bound, exact.
Verdict discrepancy_lower_bound() {
  Verdict v;
  RandomStream dims(55);
  double worst = 1e300;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 2 + dims.below(11), m = 2 + dims.below(11);
    const std::size_t k = 1 + dims.below(9);
    const auto mat = rectangle_partition_random(n, m, k, 3000 + i);
    const auto mu = oracle::random_measure(n, m, 3000 + i);
    const double rank = static_cast<double>(numerical_rank(mat));
    if (rank > 9) {
      v.pass = false;
      continue;
    }
    const double value = brute_force_rectangle_discrepancy(mat, mu);
    const double bound = 1.0 / (8.0 * std::sqrt(rank));
    worst = std::min(worst, value / bound);
    if (value < bound) v.pass = false;
  }
  v.detail = "min value/bound=" + fmt(worst);
  return v;
}

// 6. Single-Gaussian witness mean.
Verdict witness_mean() {
  Verdict v;
  std::vector<SignMatrix> instances{kotlov_lovasz(1).matrix, equality_matrix(8)};
  for (std::uint64_t i = 0; instances.size() < 10; ++i)
    instances.push_back(rectangle_partition_random(8 + i, 12 - i % 4, 2 + i, 4000 + i));
  double worst_margin = 1e300;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto m = instances[i];
    const auto mu = i % 2 ? oracle::random_measure(m.n_rows(), m.n_cols(), 4100 + i)
                          : EntryMeasure::uniform(m.n_rows(), m.n_cols());
    if (majority_sign(m, mu) == Sign::Minus) m = m.negated();
    const auto f = certified(m);
    const auto w = discrepancy_witness(m, f, mu, 100'000, 4200 + i);
    const double bound = 1.0 / (14.0 * std::sqrt(static_cast<double>(numerical_rank(m))));
    const double margin = (w.mean - bound + 4.0 * w.standard_error);
    worst_margin = std::min(worst_margin, margin);
    if (margin < 0.0) v.pass = false;
  }
  v.detail = "min (mean - bound + 4 se)=" + fmt(worst_margin);
  return v;
}

// 7. Protocol trees.
Verdict protocol_correctness() {
  Verdict v;
  std::vector<SignMatrix> instances{kotlov_lovasz(1).matrix, kotlov_lovasz(2).matrix,
                                    equality_matrix(12), SignMatrix::constant(5, 9, Sign::Plus),
                                    SignMatrix(1, 6, {1, -1, -1, 1, 1, -1})};
  for (std::uint64_t i = 0; i < 10; ++i)
    instances.push_back(rectangle_partition_random(8 + 4 * i, 48 - 3 * i, 2 + i, 5000 + i));
  std::size_t max_cost = 0;
  for (const auto& m : instances) {
    const auto tree = build_protocol(m);
    const auto stats = protocol_stats(tree);
    std::vector<int> covered(m.size(), 0);
    for (const auto& node : tree.nodes()) {
      if (node.kind != ProtocolNode::Kind::Leaf) continue;
      if (!is_monochromatic(m, node.region, node.label)) v.pass = false;
      for (auto x : node.region.rows)
        for (auto y : node.region.cols) ++covered[x * m.n_cols() + y];
    }
    for (int c : covered)
      if (c != 1) v.pass = false;
    for (std::size_t x = 0; x < m.n_rows(); ++x)
      for (std::size_t y = 0; y < m.n_cols(); ++y) {
        const auto ev = evaluate(tree, x, y);
        if (to_int(ev.value) != m(x, y) || ev.bits > tree.worst_case_cost()) v.pass = false;
      }
    const auto rank = numerical_rank(m);
    if (stats.leaves < rank) v.pass = false;
    if (static_cast<double>(stats.worst_case_cost) < std::log2(static_cast<double>(rank))) v.pass = false;
    max_cost = std::max(max_cost, stats.worst_case_cost);
  }
  v.detail = std::to_string(instances.size()) + " matrices, max cost " + std::to_string(max_cost);
  return v;
}

// 8. The explicit hard instance.
Verdict kotlov_lovasz_instance() {
  Verdict v;
  std::ostringstream os;
  for (std::size_t r : {1u, 2u}) {
    const auto kl = kotlov_lovasz(r);
    const auto& m = kl.matrix;
    const std::size_t expected = r == 1 ? 8 : 48;
    if (m.n_rows() != expected || m.n_cols() != expected) v.pass = false;
    for (std::size_t a = 0; a < m.n_rows(); ++a)
      for (std::size_t b = 0; b < m.n_cols(); ++b) {
        const int e = m(a, b);
        if (e != 1 && e != -1) v.pass = false;
        if (kl.families.exact_inner(a, b) != e) v.pass = false;
      }
    const auto rank = numerical_rank(m);
    if (rank > 8 * r + 1) v.pass = false;
    for (const auto& mm : {m, m.transposed()})
      for (std::size_t a = 0; a < mm.n_rows(); ++a)
        for (std::size_t b = a + 1; b < mm.n_rows(); ++b) {
          bool same = true;
          for (std::size_t y = 0; y < mm.n_cols() && same; ++y) same = mm(a, y) == mm(b, y);
          if (same) v.pass = false;
        }
    os << "r=" << r << ": " << expected << "x" << expected << " rank " << rank << "; ";
  }
  v.detail = os.str();
  return v;
}

// 9. Reports do not depend on the worker count.
Verdict determinism() {
  Verdict v;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lowrank_acceptance_determinism";
  fs::create_directories(dir);
  auto run = [](std::vector<std::string> args) {
    args.insert(args.begin(), "lowrank");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str() + err.str();
  };
  const auto kl = (dir / "kl.txt").string(), rp = (dir / "rp.txt").string();
  run({"gen", "kl", "--r", "1", "--out", kl});
  run({"gen", "rectpart", "--n", "20", "--m", "18", "--k", "7", "--seed", "5", "--out", rp});
  const std::vector<std::vector<std::string>> pipelines{
      {"rect", kl, "--seed", "11"},
      {"rect", rp, "--seed", "12", "--variant", "cap"},
      {"rect", rp, "--seed", "13", "--full-intersection", "--attempts", "3000"},
      {"protocol", kl, "--seed", "14", "--out", (dir / "tree@.txt").string()},
      {"protocol", rp, "--seed", "15"},
      {"disc", kl, "--mode", "witness", "--trials", "20000", "--seed", "16"},
      {"disc", rp, "--mode", "witness", "--trials", "20000", "--seed", "17", "--negate"},
  };
  std::size_t identical = 0;
  for (auto args : pipelines) {
    std::string reports[2], trees[2];
    int slot = 0;
    for (const char* threads : {"1", "8"}) {
      auto a = args;
      for (auto& s : a)
        if (auto at = s.find('@'); at != std::string::npos) s.replace(at, 1, threads);
      a.insert(a.end(), {"--threads", threads});
      reports[slot] = run(a);
      for (std::size_t j = 0; j + 1 < a.size(); ++j)
        if (a[j] == "--out") trees[slot] = read_file(a[j + 1]);
      ++slot;
    }
    if (reports[0] == reports[1] && trees[0] == trees[1] && reports[0].find("\nseed=") != std::string::npos)
      ++identical;
    else
      v.pass = false;
  }
  // Generators are seeded too.
  const auto g1 = run({"gen", "rectpart", "--n", "30", "--m", "30", "--k", "9", "--seed", "21"});
  const auto g2 = run({"gen", "rectpart", "--n", "30", "--m", "30", "--k", "9", "--seed", "21"});
  if (g1 != g2) v.pass = false;
  fs::remove_all(dir);
  v.detail = std::to_string(identical) + "/" + std::to_string(pipelines.size()) +
             " pipelines byte-identical at 1 and 8 threads";
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Sheppard closed form, Monte-Carlo", 30, sheppard_monte_carlo},
      {2, "Sheppard bounds on a grid", 1, sheppard_bounds},
      {3, "John rescaling norm bounds", 120, john_realization},
      {4, "almost-monochromatic rectangles", 300, almost_mono_rectangles},
      {5, "rectangle discrepancy lower bound", 120, discrepancy_lower_bound},
      {6, "single-Gaussian witness constant", 180, witness_mean},
      {7, "protocol correctness", 180, protocol_correctness},
      {8, "Kotlov-Lovasz instance", 30, kotlov_lovasz_instance},
      {9, "thread-count determinism", 60, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.time_limit_s) {
      v.pass = false;
      v.detail += " (over the " + fmt(c.time_limit_s) + " s limit)";
    }
    failures += !v.pass;
    std::printf("%s criterion %d: %s [%.2f s] %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
