#include "eda/cga.hpp"

namespace eda {

void apply_update(CgaState& state, const FitnessFunction& f, StepOutcome& out) {
  const int n = state.params.n;
  const RankedPair ranked = rank_pair(out.x1, out.x2, f);
  out.winner_first = ranked.winner_first;
  out.optimum_x1 = f.is_optimum(out.x1);
  out.optimum_x2 = f.is_optimum(out.x2);
  out.deltas.resize(static_cast<std::size_t>(n));
  out.clamped.clear();

  for (int i = 0; i < n; ++i) {
    const int d = static_cast<int>(ranked.y1[static_cast<std::size_t>(i)]) -
                  static_cast<int>(ranked.y2[static_cast<std::size_t>(i)]);
    out.deltas[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(d);
    if (d != 0 && state.freq.apply_delta(i, d) != d) out.clamped.push_back(i);
  }

  state.iteration += 1;
  state.evaluations += 2;
}

void cga_step(CgaState& state, const FitnessFunction& f, RandomSource& rng, StepOutcome& out) {
  sample_into(state.freq, rng, out.x1);
  sample_into(state.freq, rng, out.x2);
  apply_update(state, f, out);
}

std::optional<int> critical_position(const FrequencyVector& p) {
  const ModelParams& params = p.params();
  // p_i < 1 - 3/n  <=>  k_i (n-2) < 2m(n-4), all in exact integer arithmetic.
  const std::int64_t rhs = 2 * params.m * (params.n - 4);
  for (int i = 0; i < params.n; ++i)
    if (p.index(i) * (params.n - 2) < rhs) return i + 1;
  return std::nullopt;
}

}  // namespace eda
