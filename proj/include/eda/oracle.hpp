#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eda/benchmarks.hpp"
#include "eda/cga.hpp"
#include "eda/model.hpp"

namespace eda {

// Exact one-step transition law of the cGA at a fixed frequency vector:
// probability of each post-clamping grid-delta vector, obtained by
// enumerating all 4^n ordered sample pairs. Deltas are encoded base 3
// (digit i = delta_i + 1, position 1 is the least significant digit).
struct StepDistribution {
  int n = 0;
  double mu = 0.0;
  std::vector<double> freqs;
  // code -> probability, sorted by code; zero-probability codes omitted.
  std::vector<std::pair<std::uint32_t, long double>> entries;
  long double total = 0.0L;

  static std::uint32_t encode_delta(std::span<const int> delta);
  static std::vector<int> decode_delta(std::uint32_t code, int n);
  long double probability(std::uint32_t code) const;
};

// Enumerates all ordered pairs (x1, x2), weights each by the product sampling
// law, applies the same ranking and clamped update as the cGA, and
// accumulates delta-vector probabilities with compensated long double
// summation. Throws std::invalid_argument for n > 10.
StepDistribution exact_step_distribution(const ModelParams& params, const FrequencyVector& p,
                                         const FitnessFunction& f);

// Marginal expected change of the frequency at `position` (1-based), in
// frequency units (grid delta / mu).
double exact_expected_delta(const StepDistribution& dist, int position);

// Unclamped per-step drift of the frequency after an all-ones prefix of
// length prefix_len: (2/mu) * prod_{j<=prefix_len} p_j^2
//                          * p_{prefix_len+1} * (1 - p_{prefix_len+1}).
double lemma3_formula(std::span<const double> freqs, int prefix_len, double mu);
double lemma3_formula(const FrequencyVector& p, int prefix_len);

// Expected signed change of the frequency at `position` (1-based) conditioned
// on it changing: (1/mu) * prod_{j<position} p_j^2.
double lemma2_conditional_drift(std::span<const double> freqs, int position, double mu);
double lemma2_conditional_drift(const FrequencyVector& p, int position);

// Total-variation distance between the exact law and an empirical delta
// distribution given as (code, count) pairs over `total` observations.
double tv_distance(const StepDistribution& dist,
                   const std::vector<std::pair<std::uint32_t, std::int64_t>>& counts,
                   std::int64_t total);

}  // namespace eda
