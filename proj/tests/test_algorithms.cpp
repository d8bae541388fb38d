#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "eda/cga.hpp"
#include "eda/runner.hpp"
#include "eda/umda.hpp"

using namespace eda;

namespace {

int hamming(const BitString& a, const BitString& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace

TEST_CASE("rank_pair keeps the fitter sample first and breaks ties toward x1") {
  const FitnessFunction lo = make_benchmark("leadingones");

  const BitString a = {1, 1, 0}, b = {1, 0, 1};
  const RankedPair r1 = rank_pair(a, b, lo);
  CHECK(r1.winner_first);
  CHECK(r1.y1 == a);

  const BitString c = {0, 1, 0}, d = {0, 0, 1};  // tie at fitness 0
  const RankedPair r2 = rank_pair(c, d, lo);
  CHECK(r2.winner_first);
  CHECK(r2.y1 == c);

  const RankedPair r3 = rank_pair(a, a, lo);
  CHECK(r3.winner_first);

  const RankedPair r4 = rank_pair(b, a, lo);  // strict swap
  CHECK_FALSE(r4.winner_first);
  CHECK(r4.y1 == a);
}

TEST_CASE("cga update on the forced spec example (n=3, mu=12)") {
  const ModelParams params = make_well_behaved(3, 12.0);
  REQUIRE(params.m == 2);
  CgaState state(params);
  const FitnessFunction lo = make_benchmark("leadingones");

  StepOutcome out;
  out.x1 = {1, 1, 0};
  out.x2 = {1, 0, 1};
  apply_update(state, lo, out);

  CHECK(out.winner_first);
  CHECK(out.deltas == std::vector<std::int8_t>{0, 1, -1});
  CHECK(out.clamped.empty());
  CHECK_FALSE(out.optimum_sampled());
  CHECK(state.freq.freq(0) == doctest::Approx(0.5));
  CHECK(state.freq.freq(1) == doctest::Approx(7.0 / 12.0));
  CHECK(state.freq.freq(2) == doctest::Approx(5.0 / 12.0));
  CHECK(state.iteration == 1);
  CHECK(state.evaluations == 2);
}

TEST_CASE("identical ranked samples leave the model unchanged") {
  const ModelParams params = make_well_behaved(4, 24.0);
  CgaState state(params);
  const FitnessFunction lo = make_benchmark("leadingones");

  StepOutcome out;
  out.x1 = {1, 0, 1, 0};
  out.x2 = {1, 0, 1, 0};
  apply_update(state, lo, out);
  for (int i = 0; i < 4; ++i) CHECK(state.freq.index(i) == params.m);
  CHECK(std::all_of(out.deltas.begin(), out.deltas.end(),
                    [](std::int8_t d) { return d == 0; }));
}

TEST_CASE("updates pushing past the border are clamped and reported") {
  const ModelParams params = make_well_behaved(3, 12.0);
  CgaState state(params);
  state.freq.set_index(1, params.upper_index());
  const FitnessFunction lo = make_benchmark("leadingones");

  StepOutcome out;
  out.x1 = {1, 1, 0};  // fitness 2
  out.x2 = {1, 0, 1};  // fitness 1; delta at position 2 is +1 into the border
  apply_update(state, lo, out);
  CHECK(out.deltas[1] == 1);
  CHECK(out.clamped == std::vector<int>{1});
  CHECK(state.freq.index(1) == params.upper_index());
}

TEST_CASE("optimum detection happens on the raw samples") {
  const ModelParams params = make_well_behaved(3, 12.0);
  const FitnessFunction lo = make_benchmark("leadingones");
  CgaState state(params);

  StepOutcome out;
  out.x1 = {1, 0, 1};
  out.x2 = {1, 1, 1};
  apply_update(state, lo, out);
  CHECK_FALSE(out.optimum_x1);
  CHECK(out.optimum_x2);
  CHECK_FALSE(out.winner_first);
}

TEST_CASE("per-step movement bound and winner contract (randomized)") {
  const ModelParams params = make_well_behaved(9, 60.0);
  const FitnessFunction lo = make_benchmark("leadingones");
  CgaState state(params);
  RandomSource rng(7, 3);
  StepOutcome out;

  for (int step = 0; step < 3000; ++step) {
    const std::vector<std::int64_t> before = state.freq.indices();
    cga_step(state, lo, rng, out);
    int moved = 0;
    for (int i = 0; i < params.n; ++i) {
      const std::int64_t diff = state.freq.index(i) - before[static_cast<std::size_t>(i)];
      CHECK(std::llabs(diff) <= 1);
      if (out.deltas[static_cast<std::size_t>(i)] != 0) ++moved;
    }
    CHECK(moved == hamming(out.x1, out.x2));
    const RankedPair ranked = rank_pair(out.x1, out.x2, lo);
    CHECK(lo.evaluate(ranked.y1) >= lo.evaluate(ranked.y2));
  }
  CHECK(state.evaluations == 2 * state.iteration);
}

TEST_CASE("positions after both first zeros drift symmetrically (exhaustive n=5)") {
  // For any position strictly after the first zero of both samples, the
  // conditional delta given a change must be +-1 with equal probability.
  // Enumerate all ordered pairs at a mixed interior state and accumulate the
  // exact conditional masses.
  const int n = 5;
  const ModelParams params = make_well_behaved(n, 40.0);
  FrequencyVector p(params);
  p.set_index(0, 20);
  p.set_index(1, 8);
  p.set_index(2, 15);
  p.set_index(3, 4);
  p.set_index(4, 19);
  const FitnessFunction lo = make_benchmark("leadingones");

  std::vector<double> probs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) probs[static_cast<std::size_t>(i)] = p.freq(i);

  auto mask_weight = [&](std::uint32_t mask) {
    double w = 1.0;
    for (int i = 0; i < n; ++i)
      w *= ((mask >> i) & 1u) ? probs[static_cast<std::size_t>(i)]
                              : 1.0 - probs[static_cast<std::size_t>(i)];
    return w;
  };
  auto first_zero = [&](std::uint32_t mask) {
    for (int i = 0; i < n; ++i)
      if (!((mask >> i) & 1u)) return i;
    return n;
  };

  std::vector<double> up(static_cast<std::size_t>(n), 0.0);
  std::vector<double> down(static_cast<std::size_t>(n), 0.0);
  BitString x1(static_cast<std::size_t>(n)), x2(static_cast<std::size_t>(n));
  for (std::uint32_t a = 0; a < (1u << n); ++a) {
    for (std::uint32_t b = 0; b < (1u << n); ++b) {
      const double w = mask_weight(a) * mask_weight(b);
      for (int i = 0; i < n; ++i) {
        x1[static_cast<std::size_t>(i)] = (a >> i) & 1u;
        x2[static_cast<std::size_t>(i)] = (b >> i) & 1u;
      }
      const RankedPair ranked = rank_pair(x1, x2, lo);
      const int cut = std::max(first_zero(a), first_zero(b));
      for (int i = cut + 1; i < n; ++i) {
        const int d = static_cast<int>(ranked.y1[static_cast<std::size_t>(i)]) -
                      static_cast<int>(ranked.y2[static_cast<std::size_t>(i)]);
        if (d > 0) up[static_cast<std::size_t>(i)] += w;
        if (d < 0) down[static_cast<std::size_t>(i)] += w;
      }
    }
  }
  for (int i = 1; i < n; ++i)
    CHECK(up[static_cast<std::size_t>(i)] ==
          doctest::Approx(down[static_cast<std::size_t>(i)]).epsilon(1e-12));
}

TEST_CASE("critical_position uses exact grid comparisons") {
  const ModelParams params = make_well_behaved(8, 64.0);  // m = 24, mu = 64
  FrequencyVector p(params);
  SUBCASE("first frequency below 1 - 3/n is reported 1-based") {
    p.set_index(0, params.upper_index());  // 7/8
    p.set_index(1, params.upper_index());  // 7/8
    // remaining positions stay at 1/2 < 5/8
    CHECK(critical_position(p) == 3);
  }
  SUBCASE("all at the upper border: no critical position") {
    for (int i = 0; i < 8; ++i) p.set_index(i, params.upper_index());
    CHECK_FALSE(critical_position(p).has_value());
  }
  SUBCASE("first position low") { CHECK(critical_position(p) == 1); }
  SUBCASE("exactly at 1 - 3/n is not below it") {
    // 1 - 3/8 = 5/8 sits on the grid at k = mu(1 - 4/n) = 32... on this grid
    // k(n-2) = 2m(n-4) at k = 16.
    for (int i = 0; i < 8; ++i) p.set_index(i, params.upper_index());
    p.set_index(4, 16);
    CHECK(freq_value(params, 16) == doctest::Approx(0.625));
    CHECK_FALSE(critical_position(p).has_value());
    p.set_index(4, 15);
    CHECK(critical_position(p) == 5);
  }
}

TEST_CASE("run_cga respects the budget and is deterministic") {
  const ModelParams params = make_well_behaved(3, 12.0);
  const FitnessFunction lo = make_benchmark("leadingones");

  SUBCASE("zero budget means zero iterations and no success") {
    const RunResult r = run_cga(params, lo, 0, 1, 0);
    CHECK_FALSE(r.success);
    CHECK(r.iterations_used == 0);
    CHECK(r.trace.size() == 1);
  }
  SUBCASE("identical inputs give identical results") {
    const RunResult a = run_cga(params, lo, 100000, 11, 4);
    const RunResult b = run_cga(params, lo, 100000, 11, 4);
    CHECK(a.success == b.success);
    CHECK(a.hit_time_evals == b.hit_time_evals);
    CHECK(a.iterations_used == b.iterations_used);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      CHECK(a.trace[i].iteration == b.trace[i].iteration);
      CHECK(a.trace[i].min_freq == b.trace[i].min_freq);
      CHECK(a.trace[i].optimum_prob == b.trace[i].optimum_prob);
    }
  }
  SUBCASE("tiny instance succeeds almost surely") {
    int successes = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const RunResult r = run_cga(params, lo, 100000, 5, static_cast<std::uint64_t>(trial));
      if (r.success) {
        ++successes;
        CHECK(*r.hit_time_evals <= 100000);
        // Parity sanity: odd hit = first sample, even = second.
        CHECK((*r.hit_time_evals >= 1));
      }
    }
    CHECK(successes >= 990);
  }
}

TEST_CASE("umda update on the forced spec example (n=3, lambda=4, mu_sel=2)") {
  const UmdaParams params = make_umda_params(3, 4, 2);
  UmdaState state(params);
  const FitnessFunction lo = make_benchmark("leadingones");

  const std::vector<BitString> samples = {
      {1, 1, 1},  // fitness 3 (optimum)
      {1, 0, 1},  // fitness 1
      {0, 1, 1},  // fitness 0
      {1, 1, 0},  // fitness 2
  };
  const std::optional<int> hit = umda_update_from_samples(state, samples, lo);
  REQUIRE(hit.has_value());
  CHECK(*hit == 0);
  // Selected: samples 0 and 3; counts (2, 2, 1); clamp 1 -> 2/3 for n=3.
  CHECK(state.model.freq(0) == doctest::Approx(2.0 / 3.0));
  CHECK(state.model.freq(1) == doctest::Approx(2.0 / 3.0));
  CHECK(state.model.freq(2) == doctest::Approx(0.5));
  CHECK(state.evaluations == 4);
  CHECK(state.iteration == 1);
}

TEST_CASE("umda with identical samples copies the clamped bits") {
  const UmdaParams params = make_umda_params(4, 3, 2);
  UmdaState state(params);
  const FitnessFunction om = make_benchmark("onemax");
  const std::vector<BitString> samples = {{1, 0, 1, 0}, {1, 0, 1, 0}, {1, 0, 1, 0}};
  umda_update_from_samples(state, samples, om);
  CHECK(state.model.freq(0) == doctest::Approx(0.75));  // clamp(1) = 1 - 1/4
  CHECK(state.model.freq(1) == doctest::Approx(0.25));  // clamp(0) = 1/4
  CHECK(state.model.freq(2) == doctest::Approx(0.75));
  CHECK(state.model.freq(3) == doctest::Approx(0.25));
}

TEST_CASE("umda ties select the first mu_sel samples by index") {
  const UmdaParams params = make_umda_params(3, 4, 2);
  UmdaState state(params);
  const FitnessFunction lo = make_benchmark("leadingones");
  // All fitness 0; selection must take samples 0 and 1.
  const std::vector<BitString> samples = {
      {0, 1, 1}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
  umda_update_from_samples(state, samples, lo);
  CHECK(state.model.freq(0) == doctest::Approx(1.0 / 3.0));  // clamp(0)
  CHECK(state.model.freq(1) == doctest::Approx(2.0 / 3.0));  // clamp(1)
  CHECK(state.model.freq(2) == doctest::Approx(0.5));        // 1/2
}

TEST_CASE("make_umda_params validates the selection size") {
  CHECK_THROWS_AS(make_umda_params(5, 4, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_umda_params(5, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_umda_params(2, 4, 2), std::invalid_argument);
}

TEST_CASE("run_umda finds the optimum on a small instance deterministically") {
  const UmdaParams params = make_umda_params(5, 24, 6);
  const FitnessFunction lo = make_benchmark("leadingones");
  const RunResult a = run_umda(params, lo, 50000, 3, 1);
  const RunResult b = run_umda(params, lo, 50000, 3, 1);
  CHECK(a.success);
  CHECK(a.success == b.success);
  CHECK(a.hit_time_evals == b.hit_time_evals);
  CHECK(*a.hit_time_evals <= 50000);
}
