#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "eda/oracle.hpp"
#include "eda/random.hpp"

using namespace eda;

TEST_CASE("delta codes round-trip") {
  const std::vector<int> delta = {-1, 0, 1, 1, -1};
  const std::uint32_t code = StepDistribution::encode_delta(delta);
  CHECK(StepDistribution::decode_delta(code, 5) == delta);
  CHECK_THROWS_AS(StepDistribution::encode_delta(std::vector<int>{2}), std::invalid_argument);
}

TEST_CASE("exact distribution at the uniform state, n=3, mu=12") {
  const ModelParams params = make_well_behaved(3, 12.0);
  const FrequencyVector p(params);
  const FitnessFunction lo = make_benchmark("leadingones");
  const StepDistribution dist = exact_step_distribution(params, p, lo);

  CHECK(std::fabs(static_cast<double>(dist.total - 1.0L)) < 1e-15);
  // E[delta p_1] = (2/mu) p_1 (1-p_1) = 1/(2 mu) = 1/24.
  CHECK(exact_expected_delta(dist, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
  // Spec's worked marginals at mu = 12.
  CHECK(exact_expected_delta(dist, 2) == doctest::Approx(1.0 / 96.0).epsilon(1e-12));
  CHECK(exact_expected_delta(dist, 3) == doctest::Approx(1.0 / 384.0).epsilon(1e-12));
  // The all-zero delta contains at least the 8 identical pairs.
  CHECK(static_cast<double>(dist.probability(StepDistribution::encode_delta(
            std::vector<int>{0, 0, 0}))) > 8.0 / 64.0 - 1e-12);
}

TEST_CASE("oracle rejects n > 10") {
  const ModelParams params = make_well_behaved(11, 44.0);
  const FrequencyVector p(params);
  const FitnessFunction lo = make_benchmark("leadingones");
  CHECK_THROWS_AS(exact_step_distribution(params, p, lo), std::invalid_argument);
}

TEST_CASE("all-upper-border state only moves down or stays") {
  const ModelParams params = make_well_behaved(5, 30.0);
  FrequencyVector p(params);
  for (int i = 0; i < 5; ++i) p.set_index(i, params.upper_index());
  const FitnessFunction lo = make_benchmark("leadingones");
  const StepDistribution dist = exact_step_distribution(params, p, lo);

  CHECK(std::fabs(static_cast<double>(dist.total - 1.0L)) < 1e-15);
  for (int pos = 1; pos <= 5; ++pos) CHECK(exact_expected_delta(dist, pos) <= 0.0);
  for (const auto& [code, prob] : dist.entries)
    for (int d : StepDistribution::decode_delta(code, 5)) CHECK(d <= 0);
}

TEST_CASE("lemma3 formula on the spec cases") {
  const ModelParams params = make_well_behaved(3, 12.0);
  const FrequencyVector p(params);
  CHECK(lemma3_formula(p, 0) == doctest::Approx(1.0 / 24.0));

  // Hypothetical all-ones prefix: the prefix factor is 1.
  const std::vector<double> hypothetical = {1.0, 1.0, 0.5};
  CHECK(lemma3_formula(hypothetical, 2, 12.0) == doctest::Approx(1.0 / 24.0));

  CHECK_THROWS_AS(lemma3_formula(p, 3), std::invalid_argument);
  CHECK_THROWS_AS(lemma3_formula(p, -1), std::invalid_argument);
}

TEST_CASE("at the upper border the formula is an overestimate (clamping)") {
  const ModelParams params = make_well_behaved(4, 24.0);
  FrequencyVector p(params);
  p.set_index(0, params.upper_index());  // p_1 = 1 - 1/n, clamping active
  const FitnessFunction lo = make_benchmark("leadingones");
  const StepDistribution dist = exact_step_distribution(params, p, lo);

  const double formula = lemma3_formula(p, 0);
  const double exact = exact_expected_delta(dist, 1);
  CHECK(formula > 0.0);
  CHECK(exact < formula);
}

TEST_CASE("lemma2 conditional drift on the spec cases") {
  const ModelParams params = make_well_behaved(3, 12.0);
  const FrequencyVector p(params);
  const FitnessFunction lo = make_benchmark("leadingones");
  const StepDistribution dist = exact_step_distribution(params, p, lo);

  // Oracle conditional expectation: E[delta_2] / Pr[change at 2].
  const double conditional = exact_expected_delta(dist, 2) / (2.0 * 0.5 * 0.5);
  CHECK(conditional == doctest::Approx(1.0 / 48.0).epsilon(1e-12));
  CHECK(lemma2_conditional_drift(p, 2) == doctest::Approx(1.0 / 48.0));

  // Prefix pinned at 1 - 3/n gives (1/mu)(1 - 3/n)^(2(i-1)).
  const int n = 8;
  const double mu = 64.0;
  std::vector<double> freqs(n, 1.0 - 3.0 / n);
  for (int i = 2; i <= n; ++i)
    CHECK(lemma2_conditional_drift(freqs, i, mu) ==
          doctest::Approx(std::pow(1.0 - 3.0 / n, 2 * (i - 1)) / mu).epsilon(1e-12));

  // Lower-border prefix: near-neutral drift (1/mu) n^-2.
  std::vector<double> low = freqs;
  low[0] = 1.0 / n;
  CHECK(lemma2_conditional_drift(low, 2, mu) == doctest::Approx(1.0 / (mu * n * n)));
}

TEST_CASE("formula equals oracle on random interior states, n in [3, 7]") {
  const FitnessFunction lo = make_benchmark("leadingones");
  RandomSource rng(12345, 0);
  for (int n = 3; n <= 7; ++n) {
    const ModelParams params = make_well_behaved(n, 6.0 * n);
    REQUIRE(params.m >= 2);
    for (int v = 0; v < 20; ++v) {
      FrequencyVector p(params);
      for (int i = 0; i < n; ++i) p.set_index(i, rng.uniform_int(1, params.upper_index() - 1));
      const StepDistribution dist = exact_step_distribution(params, p, lo);
      for (int pos = 1; pos <= n; ++pos) {
        const double exact = exact_expected_delta(dist, pos);
        CHECK(std::fabs(exact - lemma3_formula(p, pos - 1)) <= 1e-10);
        const double pi = p.freq(pos - 1);
        CHECK(std::fabs(exact / (2.0 * pi * (1.0 - pi)) -
                        lemma2_conditional_drift(p, pos)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("(1 - 3/n)^(2(n-1)) stays above exp(-6)/2 for n >= 8") {
  const double floor_value = std::exp(-6.0) / 2.0;
  for (int n = 8; n <= 4096; n = n < 64 ? n + 1 : n * 2) {
    const double value = std::pow(1.0 - 3.0 / n, 2.0 * (n - 1));
    CHECK(value >= floor_value);
  }
}

TEST_CASE("sampled single steps agree with the exact law (small pilot)") {
  const int n = 5;
  const ModelParams params = make_well_behaved(n, 40.0);
  FrequencyVector p(params);
  p.set_index(0, 30);
  p.set_index(1, 12);
  p.set_index(2, 18);
  p.set_index(3, 6);
  p.set_index(4, 24);
  const FitnessFunction lo = make_benchmark("leadingones");
  const StepDistribution dist = exact_step_distribution(params, p, lo);

  const int kSteps = 100000;
  RandomSource rng(77, 0);
  std::vector<std::int64_t> counts(243, 0);
  StepOutcome out;
  std::vector<int> applied(n);
  for (int s = 0; s < kSteps; ++s) {
    CgaState state(params);
    state.freq = p;
    cga_step(state, lo, rng, out);
    for (int i = 0; i < n; ++i)
      applied[static_cast<std::size_t>(i)] =
          static_cast<int>(state.freq.index(i) - p.index(i));
    counts[StepDistribution::encode_delta(applied)] += 1;
  }
  std::vector<std::pair<std::uint32_t, std::int64_t>> observed;
  for (std::uint32_t code = 0; code < counts.size(); ++code)
    if (counts[code] > 0) observed.emplace_back(code, counts[code]);

  CHECK(tv_distance(dist, observed, kSteps) <= 0.02);
}
