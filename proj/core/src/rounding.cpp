#include "lowrank/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "lowrank/parallel.hpp"
#include "lowrank/rng.hpp"

namespace lowrank {

double sheppard_probability(double alpha) {
  if (!(std::abs(alpha) <= 1.0 + 1e-12)) {
    throw DomainError("sheppard_probability needs |alpha| <= 1, got " + std::to_string(alpha));
  }
  alpha = std::clamp(alpha, -1.0, 1.0);
  return 0.5 * (1.0 - std::acos(alpha) / std::numbers::pi);
}

std::size_t hyperplane_count(double delta, std::size_t r, double c7) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  const double t = c7 * std::log(2.0 / delta) * std::sqrt(static_cast<double>(r));
  // Absorb rounding noise so that exact integers such as 7 * ln(e) * 2 stay put.
  const double slack = 1e-9 * std::max(1.0, t);
  return static_cast<std::size_t>(std::max(0.0, std::ceil(t - slack)));
}

double cap_threshold(std::size_t r, double cap_constant) {
  if (r <= 1) return cap_constant;
  const double rr = static_cast<double>(r);
  return cap_constant * std::pow(rr, 0.25) * std::sqrt(std::log(rr));
}

std::string to_string(RoundingVariant v) {
  return v == RoundingVariant::MultiHyperplane ? "multi_hyperplane" : "single_cap";
}

RoundingVariant parse_variant(const std::string& name) {
  if (name == "multi_hyperplane" || name == "multi") return RoundingVariant::MultiHyperplane;
  if (name == "single_cap" || name == "cap") return RoundingVariant::SingleCap;
  throw DomainError("unknown rounding variant '" + name + "'");
}

void RoundingConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (max_attempts < 1) throw DomainError("max_attempts must be at least 1");
  if (!(constant_c7 > 0.0)) throw DomainError("hyperplane constant must be positive");
  if (!(cap_constant >= 0.0)) throw DomainError("cap constant must be nonnegative");
}

namespace {

Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double n = out.row(i).norm();
    if (!(n > 0.0)) throw DomainError("factorization contains a zero vector");
    out.row(i) /= n;
  }
  return out;
}

void keep_above(const Eigen::MatrixXd& unit, const Eigen::VectorXd& g, double threshold,
                std::vector<std::size_t>& alive) {
  std::size_t k = 0;
  for (auto idx : alive)
    if (unit.row(static_cast<Eigen::Index>(idx)).dot(g) >= threshold) alive[k++] = idx;
  alive.resize(k);
}

RoundingOutcome score(const RoundingContext& ctx, Rectangle r, double delta) {
  const auto masses = class_masses(ctx.matrix(), ctx.measure(), r);
  RoundingOutcome out;
  out.rectangle = std::move(r);
  out.mass = masses.total();
  out.error_mass = masses.minus;
  out.objective = masses.plus - masses.minus / delta;
  return out;
}

bool better(const RoundingOutcome& a, const RoundingOutcome& b) {
  if (a.objective != b.objective) return a.objective > b.objective;
  return a.attempt_index < b.attempt_index;
}

}  // namespace

RoundingContext::RoundingContext(const SignMatrix& m, const Factorization& f,
                                 const EntryMeasure& mu)
    : m_(m), mu_(mu), unit_left_(normalize_rows(f.left)), unit_right_(normalize_rows(f.right)) {
  if (!f.norm_bound_certified) throw DomainError("not certified");
  if (f.n_rows() != m.n_rows() || f.n_cols() != m.n_cols() || mu.n_rows() != m.n_rows() ||
      mu.n_cols() != m.n_cols()) {
    throw DomainError("matrix, factorization and measure shapes differ");
  }
}

Rectangle halfspace_rectangle(const Factorization& f, const Eigen::VectorXd& g, double threshold) {
  if (static_cast<std::size_t>(g.size()) != f.dim()) {
    throw DomainError("direction has the wrong dimension");
  }
  Rectangle r = Rectangle::full(f.n_rows(), f.n_cols());
  keep_above(normalize_rows(f.left), g, threshold, r.rows);
  keep_above(normalize_rows(f.right), g, threshold, r.cols);
  return r;
}

std::vector<Eigen::VectorXd> attempt_gaussians(std::uint64_t master_seed,
                                               std::size_t attempt_index, std::size_t count,
                                               std::size_t dim) {
  RandomStream stream(master_seed, attempt_index);
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t)
    out.push_back(stream.gaussian_vector(static_cast<Eigen::Index>(dim)));
  return out;
}

RoundingOutcome sample_multi_hyperplane(const RoundingContext& ctx, const RoundingConfig& config,
                                        std::size_t attempt_index) {
  const std::size_t dim = ctx.dim();
  const std::size_t count = hyperplane_count(config.delta, dim, config.constant_c7);
  RandomStream stream(config.master_seed, attempt_index);

  Rectangle current = Rectangle::full(ctx.matrix().n_rows(), ctx.matrix().n_cols());
  RoundingOutcome best;
  bool have_best = false;
  for (std::size_t t = 1; t <= count; ++t) {
    const Eigen::VectorXd g = stream.gaussian_vector(static_cast<Eigen::Index>(dim));
    keep_above(ctx.unit_left(), g, 0.0, current.rows);
    keep_above(ctx.unit_right(), g, 0.0, current.cols);
    if (config.score_prefixes) {
      auto candidate = score(ctx, current, config.delta);
      candidate.hyperplanes_used = t;
      if (!have_best || candidate.objective > best.objective) {
        best = std::move(candidate);
        have_best = true;
      }
    }
    // Further hyperplanes cannot change an empty rectangle.
    if (current.empty()) break;
  }
  if (!config.score_prefixes || !have_best) {
    best = score(ctx, current, config.delta);
    best.hyperplanes_used = count;
  }
  best.attempt_index = attempt_index;
  best.attempts_used = 1;
  return best;
}

RoundingOutcome sample_single_cap(const RoundingContext& ctx, const RoundingConfig& config,
                                  std::size_t attempt_index) {
  const std::size_t dim = ctx.dim();
  const double s = cap_threshold(dim, config.cap_constant);
  RandomStream stream(config.master_seed, attempt_index);
  const Eigen::VectorXd g = stream.gaussian_vector(static_cast<Eigen::Index>(dim));

  Rectangle r = Rectangle::full(ctx.matrix().n_rows(), ctx.matrix().n_cols());
  keep_above(ctx.unit_left(), g, s, r.rows);
  keep_above(ctx.unit_right(), g, s, r.cols);
  auto out = score(ctx, std::move(r), config.delta);
  out.attempt_index = attempt_index;
  out.attempts_used = 1;
  out.hyperplanes_used = 1;
  return out;
}

RoundingOutcome find_almost_monochromatic(const SignMatrix& m, const Factorization& f,
                                          const EntryMeasure& mu, const RoundingConfig& config) {
  config.validate();
  const RoundingContext ctx(m, f, mu);
  const double plus_mass = class_mass(m, mu, Rectangle::full(m.n_rows(), m.n_cols()), Sign::Plus);
  if (plus_mass < config.delta - 1e-12) {
    throw DomainError("hypothesis violated: mu(Q_1) = " + format_number(plus_mass) +
                      " < delta = " + format_number(config.delta));
  }

  const unsigned workers = resolve_threads(config.threads);
  std::vector<RoundingOutcome> local(workers);
  std::vector<char> filled(workers, 0);
  parallel_for(config.max_attempts, workers, [&](std::size_t i, unsigned w) {
    auto outcome = config.variant == RoundingVariant::MultiHyperplane
                       ? sample_multi_hyperplane(ctx, config, i)
                       : sample_single_cap(ctx, config, i);
    if (!filled[w] || better(outcome, local[w])) {
      local[w] = std::move(outcome);
      filled[w] = 1;
    }
  });

  RoundingOutcome best;
  bool have = false;
  for (unsigned w = 0; w < workers; ++w) {
    if (!filled[w]) continue;
    if (!have || better(local[w], best)) {
      best = local[w];
      have = true;
    }
  }
  best.attempts_used = config.max_attempts;
  if (!(best.objective > 0.0)) throw NoQualifyingRectangle(best);
  return best;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_run_report(const RoundingOutcome& outcome, const RoundingConfig& config,
                              std::size_t r, bool success) {
  std::ostringstream os;
  os << "variant=" << to_string(config.variant) << '\n';
  os << "r=" << r << '\n';
  os << "delta=" << format_number(config.delta) << '\n';
  if (config.variant == RoundingVariant::MultiHyperplane) {
    os << "T=" << hyperplane_count(config.delta, r, config.constant_c7) << '\n';
    os << "hyperplanes_used=" << outcome.hyperplanes_used << '\n';
  } else {
    os << "s=" << format_number(cap_threshold(r, config.cap_constant)) << '\n';
  }
  os << "attempts=" << config.max_attempts << '\n';
  os << "best_attempt=" << outcome.attempt_index << '\n';
  os << "best_objective=" << format_number(outcome.objective) << '\n';
  os << "mass=" << format_number(outcome.mass) << '\n';
  os << "error_mass=" << format_number(outcome.error_mass) << '\n';
  os << "rows=" << outcome.rectangle.rows.size() << '\n';
  os << "cols=" << outcome.rectangle.cols.size() << '\n';
  os << "success=" << (success ? 1 : 0) << '\n';
  os << "seed=" << config.master_seed << '\n';
  os << "rng_algorithm=" << kRngAlgorithm << '\n';
  return os.str();
}

}  // namespace lowrank
