#pragma once

#include <cstdint>
#include <string>

#include "eda/benchmarks.hpp"
#include "eda/model.hpp"
#include "eda/random.hpp"

namespace eda {

// Parameters of the multiplicative-drift tail bound: a process with drift
// at least delta*X_t started at x0 over states no smaller than s_min hits 0
// within ceil((r + ln(x0/s_min))/delta) steps except with probability
// exp(-r).
struct MultiplicativeDriftBound {
  double delta = 0.0;
  double x0 = 0.0;
  double s_min = 0.0;
  double r = 0.0;
};

// Parameters of the negative-drift tail bound t^2 * exp(-b|eps|/(2c^2)) for
// hitting a target b > 0 within t steps against drift eps < 0 with step
// sizes below c.
struct NegativeDriftBound {
  double b = 0.0;
  double c = 0.0;
  double eps = 0.0;
  std::int64_t t = 0;
};

// Parameters of the genetic-drift bound: on a fitness weakly preferring
// ones, frequency i stays above 1/2 - gamma for T iterations except with
// probability 2*exp(-gamma^2 mu^2 / (2T)).
struct GeneticDriftBound {
  double gamma = 0.0;
  double mu = 0.0;
  std::int64_t T = 0;
  int position = 0;  // 1-based
};

struct MultDriftTail {
  std::int64_t threshold = 0;
  double prob = 0.0;
};

// Tail evaluators; each validates its invariants and caps probabilities at 1.
MultDriftTail mult_drift_tail(const MultiplicativeDriftBound& bound);
double neg_drift_tail(const NegativeDriftBound& bound);
double genetic_drift_tail(const GeneticDriftBound& bound);

// Jump process X_{t+1} = 0 with probability delta, else X_t: exact
// multiplicative drift delta*X_t. Returns the first t >= 1 with X_t = 0
// (geometric law).
std::int64_t synthetic_mult_process(double delta, double x0, RandomSource& rng);

// Lattice walk started at 0 with steps +-step, up-probability
// (1 + eps/step)/2 (drift exactly eps < 0), and states below 0 reset to 0.
// Returns whether it reached >= b within `horizon` steps.
bool synthetic_neg_walk(double eps, double step, double b, std::int64_t horizon,
                        RandomSource& rng);

// One bound-vs-Monte-Carlo comparison. pass is the one-sided test: the 99%
// Wilson lower confidence bound of the empirical failure rate must not
// exceed the theorem's bound. A vacuous bound (capped at 1) passes but is
// flagged.
struct CheckReport {
  std::string theorem;
  std::string params;  // key=value pairs joined with ';'
  double bound_value = 0.0;
  bool vacuous = false;
  double empirical_rate = 0.0;
  std::int64_t trials = 0;
  double wilson_lower = 0.0;
  double wilson_upper = 0.0;
  bool pass = false;
};

// Monte Carlo check of the multiplicative-drift tail at one r: empirical
// Pr[T > threshold] over `trials` synthetic jump processes.
CheckReport check_multiplicative_drift(double delta, double x0, double s_min, double r,
                                       std::int64_t trials, std::uint64_t seed,
                                       int threads = 1);

// Monte Carlo check of the negative-drift tail on the reflected lattice
// walk. The step bound is set to c = 2*step, the value the per-step change
// |delta p| <= 1/mu analysis uses.
CheckReport check_negative_drift(double eps, double step, double b, std::int64_t horizon,
                                 std::int64_t trials, std::uint64_t seed, int threads = 1);

// Monte Carlo check of the genetic-drift bound on the cGA itself: fraction
// of `trials` trajectories of T iterations in which the frequency at
// `position` (1-based) ever drops to <= 1/2 - gamma. Rejects fitness
// functions that do not weakly prefer ones.
CheckReport check_genetic_drift_on_cga(const ModelParams& params, const FitnessFunction& f,
                                       int position, double gamma, std::int64_t T,
                                       std::int64_t trials, std::uint64_t seed,
                                       int threads = 1);

}  // namespace eda
