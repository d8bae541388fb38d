#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eda/benchmarks.hpp"
#include "eda/model.hpp"
#include "eda/random.hpp"

namespace eda {

// Full state of one cGA run. Two samples are evaluated per iteration, so
// evaluations == 2 * iteration at iteration boundaries.
struct CgaState {
  ModelParams params;
  FrequencyVector freq;
  std::int64_t iteration = 0;
  std::int64_t evaluations = 0;

  explicit CgaState(const ModelParams& p) : params(p), freq(p) {}
};

// Everything observable about one cGA step. deltas holds the per-position
// grid updates y1_i - y2_i before clamping; clamped lists the 0-based
// positions where the border changed the applied delta. The optimum flags
// are evaluated on the raw samples before the frequency update.
struct StepOutcome {
  BitString x1;
  BitString x2;
  bool winner_first = true;  // x1 kept rank y1 (no swap)
  std::vector<std::int8_t> deltas;
  std::vector<int> clamped;
  bool optimum_x1 = false;
  bool optimum_x2 = false;

  bool optimum_sampled() const { return optimum_x1 || optimum_x2; }
};

// Ranked view of a sample pair: winner has fitness >= loser, and ties keep
// x1 first (the swap happens only on strict inequality).
struct RankedPair {
  const BitString& y1;
  const BitString& y2;
  bool winner_first;
};

inline RankedPair rank_pair(const BitString& x1, const BitString& x2, const FitnessFunction& f) {
  if (f.evaluate(x1) < f.evaluate(x2)) return {x2, x1, false};
  return {x1, x2, true};
}

// Ranks the samples already stored in out.x1/out.x2 and applies the clamped
// frequency update to the state; fills the remaining outcome fields and
// advances iteration/evaluations. This is the deterministic half of a step,
// shared by the run loop, the enumeration oracle, and forced-sample tests.
void apply_update(CgaState& state, const FitnessFunction& f, StepOutcome& out);

// One full iteration: sample x1 then x2 (n draws each, position order), then
// apply_update.
void cga_step(CgaState& state, const FitnessFunction& f, RandomSource& rng, StepOutcome& out);

inline StepOutcome cga_step(CgaState& state, const FitnessFunction& f, RandomSource& rng) {
  StepOutcome out;
  cga_step(state, f, rng, out);
  return out;
}

// Smallest 1-based position whose frequency is below 1 - 3/n, by exact
// integer grid comparison; nullopt when all frequencies are >= 1 - 3/n.
std::optional<int> critical_position(const FrequencyVector& p);

}  // namespace eda
