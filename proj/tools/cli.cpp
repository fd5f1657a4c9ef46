#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lowrank/lowrank.hpp"

namespace lowrank::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct GenOptions {
  std::string kind;
  std::size_t r = 1;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string factorization_out;
};

struct CommonOptions {
  std::string matrix_path;
  std::string measure_path;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool threads_given = false;
};

struct RectOptions {
  CommonOptions common;
  std::optional<double> delta;
  std::string variant = "multi";
  std::size_t attempts = 10'000;
  double c7 = 7.1;
  double cap_constant = 1.0;
  double eps = kDefaultJohnEps;
  bool full_intersection = false;
  bool print_rectangle = false;
};

struct ProtocolOptions {
  CommonOptions common;
  std::string out;
  std::size_t attempts = 2'000;
};

struct DiscOptions {
  CommonOptions common;
  std::string mode = "witness";
  std::size_t trials = 100'000;
  std::size_t iterations = 10'000;
  bool negate = false;
  double eps = kDefaultJohnEps;
};

unsigned resolve_cli_threads(const CommonOptions& c) {
  if (c.threads_given) return c.threads;
  if (const char* env = std::getenv("LOWRANK_RECT_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') throw UsageError("LOWRANK_RECT_THREADS must be a nonnegative integer");
    return static_cast<unsigned>(v);
  }
  return 0;
}

EntryMeasure load_measure(const CommonOptions& c, const SignMatrix& m) {
  if (c.measure_path.empty()) return EntryMeasure::uniform(m.n_rows(), m.n_cols());
  auto mu = parse_measure(read_file(c.measure_path));
  if (mu.n_rows() != m.n_rows() || mu.n_cols() != m.n_cols()) {
    throw DomainError("measure shape does not match the matrix");
  }
  return mu;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s.push_back(' ');
    s += std::to_string(v[i]);
  }
  return s;
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    out << content;
  else
    write_file(path, content);
}

int cmd_gen(const GenOptions& o, std::ostream& out) {
  if (o.kind == "kl") {
    const auto kl = kotlov_lovasz(o.r);
    emit(out, o.out, format_matrix(kl.matrix));
    if (!o.factorization_out.empty()) write_file(o.factorization_out, format_factorization(kl.factorization));
  } else if (o.kind == "eq") {
    if (o.n < 1) throw UsageError("gen eq needs --n >= 1");
    emit(out, o.out, format_matrix(equality_matrix(o.n)));
  } else if (o.kind == "rectpart") {
    if (o.n < 1 || o.m < 1 || o.k < 1) throw UsageError("gen rectpart needs --n, --m, --k >= 1");
    emit(out, o.out, format_matrix(rectangle_partition_random(o.n, o.m, o.k, o.seed)));
  } else {
    throw UsageError("unknown generator '" + o.kind + "' (expected kl, rectpart or eq)");
  }
  return kOk;
}

int cmd_rect(const RectOptions& o, std::ostream& out, std::ostream& err) {
  const SignMatrix m = parse_matrix(read_file(o.common.matrix_path));
  const EntryMeasure mu = load_measure(o.common, m);
  const Factorization f = john_rescale(rank_factorization(m), o.eps);

  RoundingConfig config;
  config.delta = o.delta ? *o.delta : 1.0 / (8.0 * static_cast<double>(f.dim()));
  config.constant_c7 = o.c7;
  config.max_attempts = o.attempts;
  config.master_seed = o.common.seed;
  config.variant = parse_variant(o.variant);
  config.cap_constant = o.cap_constant;
  config.score_prefixes = !o.full_intersection;
  config.threads = resolve_cli_threads(o.common);

  RoundingOutcome outcome;
  bool success = true;
  try {
    outcome = find_almost_monochromatic(m, f, mu, config);
  } catch (const NoQualifyingRectangle& e) {
    outcome = e.best();
    success = false;
  }
  out << format_run_report(outcome, config, f.dim(), success);
  if (o.print_rectangle) {
    out << "rect_rows=" << join(outcome.rectangle.rows) << '\n';
    out << "rect_cols=" << join(outcome.rectangle.cols) << '\n';
  }
  if (!success) {
    err << "error: no qualifying rectangle found\n";
    return kDomain;
  }
  return kOk;
}

int cmd_protocol(const ProtocolOptions& o, std::ostream& out) {
  const SignMatrix m = parse_matrix(read_file(o.common.matrix_path));
  ProtocolConfig config;
  config.rounding.max_attempts = o.attempts;
  config.rounding.master_seed = o.common.seed;
  config.rounding.threads = resolve_cli_threads(o.common);
  const ProtocolTree tree = build_protocol(m, config);
  if (!o.out.empty()) write_file(o.out, serialize(tree));

  std::size_t mismatches = 0;
  for (std::size_t x = 0; x < m.n_rows(); ++x)
    for (std::size_t y = 0; y < m.n_cols(); ++y) {
      const auto ev = evaluate(tree, x, y);
      if (to_int(ev.value) != m(x, y) || ev.bits > tree.worst_case_cost()) ++mismatches;
    }

  const auto stats = protocol_stats(tree);
  const std::size_t rank = numerical_rank(m);
  const double log2_rank = std::log2(static_cast<double>(rank));
  out << "rows=" << m.n_rows() << '\n';
  out << "cols=" << m.n_cols() << '\n';
  out << "rank=" << rank << '\n';
  out << "leaves=" << stats.leaves << '\n';
  out << "worst_case_cost=" << stats.worst_case_cost << '\n';
  out << "depth=" << stats.depth << '\n';
  out << "log2_rank=" << format_number(log2_rank) << '\n';
  out << "rank_bound_ok="
      << (stats.leaves >= rank && static_cast<double>(stats.worst_case_cost) >= log2_rank ? 1 : 0)
      << '\n';
  out << "rounding_blocks=" << stats.rounding_blocks << '\n';
  out << "oracle_blocks=" << stats.oracle_blocks << '\n';
  out << "cell_blocks=" << stats.cell_blocks << '\n';
  out << "verified=" << (mismatches == 0 ? 1 : 0) << '\n';
  out << "attempts=" << o.attempts << '\n';
  out << "seed=" << o.common.seed << '\n';
  out << "rng_algorithm=" << kRngAlgorithm << '\n';
  return mismatches == 0 ? kOk : kDomain;
}

int cmd_disc(const DiscOptions& o, std::ostream& out) {
  SignMatrix m = parse_matrix(read_file(o.common.matrix_path));
  if (o.negate) m = m.negated();
  const std::size_t rank = numerical_rank(m);
  const double root = std::sqrt(static_cast<double>(rank));
  out << "mode=" << o.mode << '\n';
  out << "rank=" << rank << '\n';

  if (o.mode == "witness") {
    const EntryMeasure mu = load_measure(o.common, m);
    const Factorization f = john_rescale(rank_factorization(m), o.eps);
    const auto w = discrepancy_witness(m, f, mu, o.trials, o.common.seed, resolve_cli_threads(o.common));
    out << "value=" << format_number(w.value) << '\n';
    out << "mean=" << format_number(w.mean) << '\n';
    out << "standard_error=" << format_number(w.standard_error) << '\n';
    out << "bound=" << format_number(1.0 / (14.0 * root)) << '\n';
    out << "bound_formula=1/(14*sqrt(r))\n";
    out << "trials=" << o.trials << '\n';
    out << "best_trial=" << w.best_trial << '\n';
    out << "seed=" << o.common.seed << '\n';
    out << "rng_algorithm=" << kRngAlgorithm << '\n';
  } else if (o.mode == "brute") {
    const EntryMeasure mu = load_measure(o.common, m);
    out << "value=" << format_number(brute_force_rectangle_discrepancy(m, mu)) << '\n';
    out << "bound=" << format_number(1.0 / (8.0 * root)) << '\n';
    out << "bound_formula=1/(8*sqrt(r))\n";
  } else if (o.mode == "game") {
    const auto g = game_discrepancy(m, o.iterations);
    out << "value=" << format_number(g.value) << '\n';
    out << "bound=" << format_number(1.0 / (8.0 * root)) << '\n';
    out << "bound_formula=1/(8*sqrt(r))\n";
    out << "iterations=" << o.iterations << '\n';
  } else {
    throw UsageError("unknown disc mode '" + o.mode + "' (expected witness, brute or game)");
  }
  return kOk;
}

void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("matrix", c.matrix_path, "Matrix file")->required();
  sub->add_option("--measure", c.measure_path, "Entry measure file (default: uniform)");
  sub->add_option("--seed", c.seed, "Master seed");
  sub->add_option_function<unsigned>(
      "--threads",
      [&c](const unsigned& v) {
        c.threads = v;
        c.threads_given = true;
      },
      "Worker threads (default: $LOWRANK_RECT_THREADS, else all cores)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rectangle finding and protocols for low-rank sign matrices", "lowrank"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a test matrix (kl, rectpart, eq)");
  gen_cmd->add_option("kind", gen.kind, "Generator: kl, rectpart or eq")->required();
  gen_cmd->add_option("--r", gen.r, "Kotlov-Lovasz parameter");
  gen_cmd->add_option("--n", gen.n, "Rows (or size for eq)");
  gen_cmd->add_option("--m", gen.m, "Columns");
  gen_cmd->add_option("--k", gen.k, "Number of partition rectangles");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--out", gen.out, "Matrix output file (default: stdout)");
  gen_cmd->add_option("--factorization", gen.factorization_out, "Factorization output file (kl only)");

  RectOptions rect;
  auto* rect_cmd = app.add_subcommand("rect", "Find an almost-monochromatic rectangle");
  add_common(rect_cmd, rect.common);
  rect_cmd->add_option("--delta", rect.delta, "Error fraction (default: 1/(8 rank))");
  rect_cmd->add_option("--variant", rect.variant, "multi or cap");
  rect_cmd->add_option("--attempts", rect.attempts, "Sampling attempts");
  rect_cmd->add_option("--c7", rect.c7, "Hyperplane count constant");
  rect_cmd->add_option("--cap-constant", rect.cap_constant, "Cap threshold constant");
  rect_cmd->add_option("--eps", rect.eps, "John ellipsoid tolerance");
  rect_cmd->add_flag("--full-intersection", rect.full_intersection,
                     "Score only the full T-fold intersection of each attempt");
  rect_cmd->add_flag("--print-rectangle", rect.print_rectangle, "Print row and column indices");

  ProtocolOptions proto;
  auto* proto_cmd = app.add_subcommand("protocol", "Build and verify a deterministic protocol");
  add_common(proto_cmd, proto.common);
  proto_cmd->add_option("--out", proto.out, "Serialized tree output file");
  proto_cmd->add_option("--attempts", proto.attempts, "Rounding attempts per node");

  DiscOptions disc;
  auto* disc_cmd = app.add_subcommand("disc", "Discrepancy witness, exact value or game estimate");
  add_common(disc_cmd, disc.common);
  disc_cmd->add_option("--mode", disc.mode, "witness, brute or game");
  disc_cmd->add_option("--trials", disc.trials, "Witness trials");
  disc_cmd->add_option("--iterations", disc.iterations, "Game iterations");
  disc_cmd->add_option("--eps", disc.eps, "John ellipsoid tolerance");
  disc_cmd->add_flag("--negate", disc.negate, "Negate the matrix first");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (rect_cmd->parsed()) return cmd_rect(rect, out, err);
    if (proto_cmd->parsed()) return cmd_protocol(proto, out);
    if (disc_cmd->parsed()) return cmd_disc(disc, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kIo;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}

}  // namespace lowrank::cli
