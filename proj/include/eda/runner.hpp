#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eda/benchmarks.hpp"
#include "eda/cga.hpp"
#include "eda/umda.hpp"

namespace eda {

// Model observables at one iteration boundary. critical_pos is the smallest
// 1-based position with frequency below 1 - 3/n; prefix_len_at_upper counts
// the leading frequencies sitting exactly at 1 - 1/n; optimum_prob is the
// per-sample probability of drawing the all-ones string; border_departure is
// set when some frequency that previously reached the upper border currently
// sits below it.
struct TraceRecord {
  std::int64_t iteration = 0;
  std::optional<int> critical_pos;
  double min_freq = 0.0;
  int prefix_len_at_upper = 0;
  double optimum_prob = 0.0;
  bool border_departure = false;
};

struct RunResult {
  bool success = false;
  std::optional<std::int64_t> hit_time_evals;  // evaluation index of the first optimal sample
  std::int64_t iterations_used = 0;
  std::int64_t evaluations_used = 0;
  std::optional<std::int64_t> first_all_high_iter;  // first iteration with all freqs > 1 - 3/n
  bool ever_below_quarter = false;
  // No frequency dropped to <= 1 - 3/n between first_all_high_iter and the
  // end of the run; checked every iteration, vacuously true if all-high was
  // never reached.
  bool maintained_all_high = true;
  std::vector<TraceRecord> trace;
};

// Default trace thinning: one record per max(1, iterations/10^4), so a run
// stores at most ~10^4 records. The initial and final states are always
// recorded.
std::int64_t default_trace_every(std::int64_t budget_evals, std::int64_t evals_per_iteration);

// Runs the cGA until an optimum is sampled or the evaluation budget is
// exhausted (budget is consumed in whole iterations of two evaluations).
// Hit times are reported in evaluations: 2t+1 if the first sample of
// iteration t hit, 2t+2 if the second did.
RunResult run_cga(const ModelParams& params, const FitnessFunction& f,
                  std::int64_t budget_evals, std::uint64_t seed, std::uint64_t stream,
                  std::int64_t trace_every = 0);

// Same contract for the UMDA; an iteration consumes lambda evaluations and
// the hit time is the in-order index of the first optimal sample.
RunResult run_umda(const UmdaParams& params, const FitnessFunction& f,
                   std::int64_t budget_evals, std::uint64_t seed, std::uint64_t stream,
                   std::int64_t trace_every = 0);

}  // namespace eda
