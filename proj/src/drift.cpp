#include "eda/drift.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "eda/cga.hpp"
#include "eda/parallel.hpp"
#include "eda/stats.hpp"

namespace eda {

namespace {

std::string join_params(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, value] : kv) {
    if (!first) os << ';';
    first = false;
    os << key << '=' << value;
  }
  return os.str();
}

CheckReport finish_report(std::string theorem, std::string params, double bound, bool vacuous,
                          std::int64_t failures, std::int64_t trials) {
  CheckReport rep;
  rep.theorem = std::move(theorem);
  rep.params = std::move(params);
  rep.bound_value = bound;
  rep.vacuous = vacuous;
  rep.trials = trials;
  rep.empirical_rate = static_cast<double>(failures) / static_cast<double>(trials);
  rep.wilson_lower = wilson_lower(failures, trials);
  rep.wilson_upper = wilson_upper(failures, trials);
  rep.pass = rep.wilson_lower <= rep.bound_value;
  return rep;
}

}  // namespace

MultDriftTail mult_drift_tail(const MultiplicativeDriftBound& bound) {
  if (!(bound.delta > 0.0)) throw std::invalid_argument("mult_drift_tail: delta must be > 0");
  if (!(bound.s_min > 0.0) || bound.x0 < bound.s_min)
    throw std::invalid_argument("mult_drift_tail: need x0 >= s_min > 0");
  if (bound.r < 0.0) throw std::invalid_argument("mult_drift_tail: r must be >= 0");
  MultDriftTail tail;
  tail.threshold = static_cast<std::int64_t>(
      std::ceil((bound.r + std::log(bound.x0 / bound.s_min)) / bound.delta));
  tail.prob = std::min(1.0, std::exp(-bound.r));
  return tail;
}

double neg_drift_tail(const NegativeDriftBound& bound) {
  if (!(bound.b > 0.0)) throw std::invalid_argument("neg_drift_tail: b must be > 0");
  if (!(bound.c > 0.0) || !(bound.c < bound.b))
    throw std::invalid_argument("neg_drift_tail: need 0 < c < b");
  if (!(bound.eps < 0.0)) throw std::invalid_argument("neg_drift_tail: eps must be < 0");
  if (bound.t < 0) throw std::invalid_argument("neg_drift_tail: t must be >= 0");
  const double t = static_cast<double>(bound.t);
  return std::min(1.0, t * t * std::exp(-bound.b * std::fabs(bound.eps) /
                                        (2.0 * bound.c * bound.c)));
}

double genetic_drift_tail(const GeneticDriftBound& bound) {
  if (!(bound.gamma > 0.0)) throw std::invalid_argument("genetic_drift_tail: gamma must be > 0");
  if (!(bound.mu > 0.0)) throw std::invalid_argument("genetic_drift_tail: mu must be > 0");
  if (bound.T < 1) throw std::invalid_argument("genetic_drift_tail: T must be >= 1");
  const double exponent =
      bound.gamma * bound.gamma * bound.mu * bound.mu / (2.0 * static_cast<double>(bound.T));
  return std::min(1.0, 2.0 * std::exp(-exponent));
}

std::int64_t synthetic_mult_process(double delta, double x0, RandomSource& rng) {
  if (!(delta > 0.0) || delta > 1.0)
    throw std::invalid_argument("synthetic_mult_process: delta must be in (0, 1]");
  if (!(x0 > 0.0)) throw std::invalid_argument("synthetic_mult_process: x0 must be > 0");
  for (std::int64_t t = 1;; ++t)
    if (rng.bernoulli(delta)) return t;
}

bool synthetic_neg_walk(double eps, double step, double b, std::int64_t horizon,
                        RandomSource& rng) {
  if (!(step > 0.0)) throw std::invalid_argument("synthetic_neg_walk: step must be > 0");
  if (!(eps < 0.0) || std::fabs(eps) > step)
    throw std::invalid_argument("synthetic_neg_walk: need eps < 0 with |eps| <= step");
  if (!(b > 0.0)) throw std::invalid_argument("synthetic_neg_walk: b must be > 0");
  const double up_prob = (1.0 + eps / step) / 2.0;
  double x = 0.0;
  for (std::int64_t t = 0; t < horizon; ++t) {
    x += rng.bernoulli(up_prob) ? step : -step;
    if (x < 0.0) x = 0.0;
    if (x >= b) return true;
  }
  return false;
}

CheckReport check_multiplicative_drift(double delta, double x0, double s_min, double r,
                                       std::int64_t trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("check_multiplicative_drift: trials must be >= 1");
  const MultDriftTail tail = mult_drift_tail({delta, x0, s_min, r});

  std::vector<std::uint8_t> failed(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, threads, [&](std::int64_t trial) {
    RandomSource rng(seed, static_cast<std::uint64_t>(trial));
    if (synthetic_mult_process(delta, x0, rng) > tail.threshold)
      failed[static_cast<std::size_t>(trial)] = 1;
  });
  std::int64_t failures = 0;
  for (std::uint8_t v : failed) failures += v;

  return finish_report(
      "mult",
      join_params({{"delta", delta},
                   {"x0", x0},
                   {"smin", s_min},
                   {"r", r},
                   {"threshold", static_cast<double>(tail.threshold)}}),
      tail.prob, tail.prob >= 1.0, failures, trials);
}

CheckReport check_negative_drift(double eps, double step, double b, std::int64_t horizon,
                                 std::int64_t trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("check_negative_drift: trials must be >= 1");
  const double c = 2.0 * step;
  const double raw_bound = neg_drift_tail({b, c, eps, horizon});

  std::vector<std::uint8_t> hit(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, threads, [&](std::int64_t trial) {
    RandomSource rng(seed, static_cast<std::uint64_t>(trial));
    if (synthetic_neg_walk(eps, step, b, horizon, rng))
      hit[static_cast<std::size_t>(trial)] = 1;
  });
  std::int64_t hits = 0;
  for (std::uint8_t v : hit) hits += v;

  return finish_report("neg",
                       join_params({{"b", b},
                                    {"c", c},
                                    {"eps", eps},
                                    {"step", step},
                                    {"horizon", static_cast<double>(horizon)}}),
                       raw_bound, raw_bound >= 1.0, hits, trials);
}

CheckReport check_genetic_drift_on_cga(const ModelParams& params, const FitnessFunction& f,
                                       int position, double gamma, std::int64_t T,
                                       std::int64_t trials, std::uint64_t seed, int threads) {
  if (!f.weakly_prefers_ones)
    throw std::invalid_argument("check_genetic_drift_on_cga: benchmark \"" + f.name +
                                "\" does not weakly prefer ones");
  if (position < 1 || position > params.n)
    throw std::invalid_argument("check_genetic_drift_on_cga: position outside [1, n]");
  if (trials < 1) throw std::invalid_argument("check_genetic_drift_on_cga: trials must be >= 1");
  const double bound = genetic_drift_tail({gamma, params.mu, T, position});

  // Largest grid index with frequency <= 1/2 - gamma, by the exact rational
  // decoding of the grid; below the grid entirely means the event is
  // impossible.
  const long double rhs = static_cast<long double>(params.m) *
                          (params.n * (1.0L - 2.0L * static_cast<long double>(gamma)) - 2.0L) /
                          (params.n - 2);
  const std::int64_t k_threshold = static_cast<std::int64_t>(std::floor(rhs + 1e-9L));
  const int pos0 = position - 1;

  std::vector<std::uint8_t> failed(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, threads, [&](std::int64_t trial) {
    if (k_threshold < 0) return;
    RandomSource rng(seed, static_cast<std::uint64_t>(trial));
    CgaState state(params);
    StepOutcome out;
    for (std::int64_t t = 0; t < T; ++t) {
      cga_step(state, f, rng, out);
      if (state.freq.index(pos0) <= k_threshold) {
        failed[static_cast<std::size_t>(trial)] = 1;
        break;
      }
    }
  });
  std::int64_t failures = 0;
  for (std::uint8_t v : failed) failures += v;

  return finish_report("genetic",
                       join_params({{"n", static_cast<double>(params.n)},
                                    {"mu", params.mu},
                                    {"position", static_cast<double>(position)},
                                    {"gamma", gamma},
                                    {"T", static_cast<double>(T)}}),
                       bound, bound >= 1.0, failures, trials);
}

}  // namespace eda
