#include "eda/runner.hpp"

#include <algorithm>
#include <stdexcept>

namespace eda {

namespace {

// Incremental monitors over the cGA grid state. Only positions whose index
// changed in a step are touched; thresholds are exact integer comparisons.
struct CgaMonitors {
  const ModelParams& params;
  std::int64_t high_rhs;     // k(n-2) >  high_rhs      <=>  p > 1 - 3/n
  std::int64_t quarter_rhs;  // 2k(n-2) < quarter_rhs   <=>  p < 1/4
  std::vector<std::uint8_t> high;
  std::vector<std::uint8_t> reached_upper;
  std::vector<std::uint8_t> departed;
  int not_high_count = 0;
  int departed_count = 0;
  bool below_quarter_seen = false;

  explicit CgaMonitors(const ModelParams& p)
      : params(p),
        high_rhs(2 * p.m * (p.n - 4)),
        quarter_rhs(p.m * (p.n - 4)),
        high(static_cast<std::size_t>(p.n)),
        reached_upper(static_cast<std::size_t>(p.n), 0),
        departed(static_cast<std::size_t>(p.n), 0) {
    for (int i = 0; i < p.n; ++i) {
      high[static_cast<std::size_t>(i)] = is_high(p.m) ? 1 : 0;
      if (!high[static_cast<std::size_t>(i)]) ++not_high_count;
      if (p.m == p.upper_index()) reached_upper[static_cast<std::size_t>(i)] = 1;
    }
  }

  bool is_high(std::int64_t k) const { return k * (params.n - 2) > high_rhs; }

  void on_index_change(int i, std::int64_t k) {
    const std::size_t idx = static_cast<std::size_t>(i);
    const std::uint8_t now_high = is_high(k) ? 1 : 0;
    if (now_high != high[idx]) {
      not_high_count += now_high ? -1 : 1;
      high[idx] = now_high;
    }
    if (k == params.upper_index()) {
      if (!reached_upper[idx]) reached_upper[idx] = 1;
      if (departed[idx]) {
        departed[idx] = 0;
        --departed_count;
      }
    } else if (reached_upper[idx] && !departed[idx]) {
      departed[idx] = 1;
      ++departed_count;
    }
    if (2 * k * (params.n - 2) < quarter_rhs) below_quarter_seen = true;
  }
};

TraceRecord make_trace_record(const FrequencyVector& freq, std::int64_t iteration,
                              bool departure) {
  TraceRecord rec;
  rec.iteration = iteration;
  rec.critical_pos = critical_position(freq);
  rec.border_departure = departure;

  const ModelParams& params = freq.params();
  std::int64_t min_k = params.upper_index();
  double prod = 1.0;
  int prefix = 0;
  bool prefix_open = true;
  for (int i = 0; i < params.n; ++i) {
    const std::int64_t k = freq.index(i);
    min_k = std::min(min_k, k);
    prod *= freq.freq(i);
    if (prefix_open && k == params.upper_index())
      ++prefix;
    else
      prefix_open = false;
  }
  rec.min_freq = freq_value(params, min_k);
  rec.prefix_len_at_upper = prefix;
  rec.optimum_prob = prod;
  return rec;
}

TraceRecord make_trace_record_umda(const UmdaModel& model, std::int64_t iteration,
                                   bool departure) {
  TraceRecord rec;
  rec.iteration = iteration;
  rec.border_departure = departure;

  const int n = model.n();
  double min_p = 1.0;
  double prod = 1.0;
  int prefix = 0;
  bool prefix_open = true;
  for (int i = 0; i < n; ++i) {
    const double p = model.freq(i);
    min_p = std::min(min_p, p);
    prod *= p;
    if (!rec.critical_pos && model.below_high(i)) rec.critical_pos = i + 1;
    if (prefix_open && model.at_upper(i))
      ++prefix;
    else
      prefix_open = false;
  }
  rec.min_freq = min_p;
  rec.prefix_len_at_upper = prefix;
  rec.optimum_prob = prod;
  return rec;
}

}  // namespace

std::int64_t default_trace_every(std::int64_t budget_evals, std::int64_t evals_per_iteration) {
  const std::int64_t iterations = budget_evals / std::max<std::int64_t>(1, evals_per_iteration);
  return std::max<std::int64_t>(1, iterations / 10000);
}

RunResult run_cga(const ModelParams& params, const FitnessFunction& f,
                  std::int64_t budget_evals, std::uint64_t seed, std::uint64_t stream,
                  std::int64_t trace_every) {
  if (budget_evals < 0) throw std::invalid_argument("run_cga: budget_evals must be >= 0");
  if (trace_every <= 0) trace_every = default_trace_every(budget_evals, 2);

  RandomSource rng(seed, stream);
  CgaState state(params);
  CgaMonitors mon(params);
  StepOutcome out;
  RunResult res;

  if (mon.not_high_count == 0) res.first_all_high_iter = 0;
  res.trace.push_back(make_trace_record(state.freq, 0, false));

  while (state.evaluations + 2 <= budget_evals) {
    cga_step(state, f, rng, out);

    std::size_t clamp_cursor = 0;
    for (int i = 0; i < params.n; ++i) {
      if (out.deltas[static_cast<std::size_t>(i)] == 0) continue;
      if (clamp_cursor < out.clamped.size() && out.clamped[clamp_cursor] == i) {
        ++clamp_cursor;  // clamped to zero, index unchanged
        continue;
      }
      mon.on_index_change(i, state.freq.index(i));
    }

    if (!res.first_all_high_iter) {
      if (mon.not_high_count == 0) res.first_all_high_iter = state.iteration;
    } else if (mon.not_high_count > 0) {
      res.maintained_all_high = false;
    }

    if (out.optimum_x1) {
      res.success = true;
      res.hit_time_evals = state.evaluations - 1;
    } else if (out.optimum_x2) {
      res.success = true;
      res.hit_time_evals = state.evaluations;
    }

    if (res.success || state.iteration % trace_every == 0)
      res.trace.push_back(
          make_trace_record(state.freq, state.iteration, mon.departed_count > 0));
    if (res.success) break;
  }

  if (res.trace.back().iteration != state.iteration)
    res.trace.push_back(make_trace_record(state.freq, state.iteration, mon.departed_count > 0));

  res.iterations_used = state.iteration;
  res.evaluations_used = state.evaluations;
  res.ever_below_quarter = mon.below_quarter_seen;
  return res;
}

RunResult run_umda(const UmdaParams& params, const FitnessFunction& f,
                   std::int64_t budget_evals, std::uint64_t seed, std::uint64_t stream,
                   std::int64_t trace_every) {
  if (budget_evals < 0) throw std::invalid_argument("run_umda: budget_evals must be >= 0");
  if (trace_every <= 0) trace_every = default_trace_every(budget_evals, params.lambda);

  RandomSource rng(seed, stream);
  UmdaState state(params);
  UmdaScratch scratch;
  RunResult res;

  const int n = params.n;
  std::vector<std::uint8_t> reached(static_cast<std::size_t>(n), 0);
  bool departure = false;

  auto scan_monitors = [&]() {
    int not_high = 0;
    departure = false;
    for (int i = 0; i < n; ++i) {
      if (!state.model.strictly_high(i)) ++not_high;
      if (state.model.at_upper(i))
        reached[static_cast<std::size_t>(i)] = 1;
      else if (reached[static_cast<std::size_t>(i)])
        departure = true;
      if (state.model.below_quarter(i)) res.ever_below_quarter = true;
    }
    if (!res.first_all_high_iter) {
      if (not_high == 0) res.first_all_high_iter = state.iteration;
    } else if (not_high > 0) {
      res.maintained_all_high = false;
    }
  };

  scan_monitors();
  res.trace.push_back(make_trace_record_umda(state.model, 0, false));

  while (state.evaluations + params.lambda <= budget_evals) {
    const std::int64_t evals_before = state.evaluations;
    const std::optional<int> hit = umda_step(state, f, rng, scratch);
    scan_monitors();

    if (hit) {
      res.success = true;
      res.hit_time_evals = evals_before + *hit + 1;
    }
    if (res.success || state.iteration % trace_every == 0)
      res.trace.push_back(make_trace_record_umda(state.model, state.iteration, departure));
    if (res.success) break;
  }

  if (res.trace.back().iteration != state.iteration)
    res.trace.push_back(make_trace_record_umda(state.model, state.iteration, departure));

  res.iterations_used = state.iteration;
  res.evaluations_used = state.evaluations;
  return res;
}

}  // namespace eda
