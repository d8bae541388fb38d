#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eda/benchmarks.hpp"
#include "eda/runner.hpp"
#include "eda/stats.hpp"

namespace eda {

// Named parameter rules mapping the problem size (and, for budgets, the
// resolved mu) to a value: "<c>*n*ln2n" is c*n*ln^2(n), "<c>*n*lnn" is
// c*n*ln(n), "<c>*mu*n*lnn" is c*mu*n*ln(n), and a plain decimal is a
// constant.
struct RuleSpec {
  enum class Kind { Constant, NLn2N, NLnN, MuNLnN };
  Kind kind = Kind::Constant;
  double c = 0.0;
};

RuleSpec parse_rule(const std::string& text);
std::string rule_to_string(const RuleSpec& rule);
double eval_mu_rule(const RuleSpec& rule, int n);
double eval_budget_rule(const RuleSpec& rule, int n, double mu);

struct ScalingRow {
  int n = 0;
  double mu = 0.0;
  std::int64_t budget_evals = 0;
  std::int64_t trials = 0;
  double success_rate = 0.0;
  double median_evals = 0.0;  // among successes; NaN if none
  double iqr_lo = 0.0;
  double iqr_hi = 0.0;
  double mean_first_all_high = 0.0;  // among runs where defined; NaN if none
  double below_quarter_rate = 0.0;
  double stay_high_rate = 0.0;  // maintained runs among successes; NaN if none
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  std::optional<LinearFit> fit;  // ln(median_evals) on ln(n); needs >= 3 rows with successes
};

// Seeded runtime-scaling experiment: `trials` cGA runs per n, aggregated per
// row, with an OLS fit of log median runtime against log problem size.
// Trial j of row i uses RandomSource stream i*trials + j.
ScalingReport scaling_experiment(const std::vector<int>& n_grid, const RuleSpec& mu_rule,
                                 const RuleSpec& budget_rule, std::int64_t trials,
                                 std::uint64_t seed, const FitnessFunction& f,
                                 int threads = 1, std::int64_t trace_every = 0);

struct StayHighRecord {
  std::optional<std::int64_t> first_all_high_iter;
  // Every traced record at or after first_all_high_iter has no critical
  // position; vacuously true if all-high was never reached.
  bool maintained_traced = true;
  // Distinct positions of the once-perfect prefix later observed below
  // 1 - 3/n (from traced critical positions).
  int distinct_below_after_top = 0;
};

StayHighRecord stay_high_analysis(const RunResult& result);

// Fraction of runs whose minimum frequency ever dropped below 1/4.
double below_quarter_rate(std::span<const RunResult> results);

struct CriticalAdvance {
  bool running_max_nondecreasing = true;
  int final_running_max = 0;
  // (iteration, new value) whenever the running max of prefix_len_at_upper
  // grows, and the iteration gaps between successive events.
  std::vector<std::pair<std::int64_t, int>> new_max_events;
  std::vector<std::int64_t> gaps;
};

CriticalAdvance critical_advance_analysis(const RunResult& result);

// Per-sample probability of drawing the all-ones string.
double optimum_prob(std::span<const double> freqs);
double optimum_prob(const FrequencyVector& p);

struct CompareRow {
  int n = 0;
  double cga_mu = 0.0;
  int umda_mu_sel = 0;
  int umda_lambda = 0;
  std::int64_t budget_evals = 0;
  std::int64_t trials = 0;
  double cga_success_rate = 0.0;
  double umda_success_rate = 0.0;
  double cga_median_evals = 0.0;
  double umda_median_evals = 0.0;
  // Mean (over trials) fraction of traced iterations in which some frequency
  // sat below the upper border after having reached it.
  double cga_departure_fraction = 0.0;
  double umda_departure_fraction = 0.0;
};

// Paired cGA-vs-UMDA comparison under a matched evaluation budget and
// matched model granularity (UMDA mu_sel = round(cga mu), lambda =
// umda_ratio * mu_sel). Trial j of row i uses streams 2*(i*trials+j) for the
// cGA and 2*(i*trials+j)+1 for the UMDA.
std::vector<CompareRow> compare_cga_umda(const std::vector<int>& n_grid,
                                         const RuleSpec& mu_rule, const RuleSpec& budget_rule,
                                         double umda_ratio, std::int64_t trials,
                                         std::uint64_t seed, const FitnessFunction& f,
                                         int threads = 1);

// Fraction of trace records flagged with a border departure.
double departure_fraction(const RunResult& result);

}  // namespace eda
