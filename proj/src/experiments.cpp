#include "eda/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eda/parallel.hpp"

namespace eda {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return kNaN;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

}  // namespace

RuleSpec parse_rule(const std::string& text) {
  static const std::vector<std::pair<std::string, RuleSpec::Kind>> kForms = {
      {"*n*ln2n", RuleSpec::Kind::NLn2N},
      {"*n*lnn", RuleSpec::Kind::NLnN},
      {"*mu*n*lnn", RuleSpec::Kind::MuNLnN},
  };
  std::string head = text;
  RuleSpec rule;
  for (const auto& [suffix, kind] : kForms) {
    if (text.size() > suffix.size() &&
        text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0) {
      head = text.substr(0, text.size() - suffix.size());
      rule.kind = kind;
      break;
    }
  }
  std::size_t used = 0;
  try {
    rule.c = std::stod(head, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_rule: cannot parse \"" + text + "\"");
  }
  if (used != head.size() || !(rule.c > 0.0))
    throw std::invalid_argument("parse_rule: cannot parse \"" + text +
                                "\" (expected <c>, <c>*n*lnn, <c>*n*ln2n or <c>*mu*n*lnn "
                                "with positive decimal c)");
  return rule;
}

std::string rule_to_string(const RuleSpec& rule) {
  std::ostringstream os;
  os << rule.c;
  switch (rule.kind) {
    case RuleSpec::Kind::Constant: break;
    case RuleSpec::Kind::NLn2N: os << "*n*ln2n"; break;
    case RuleSpec::Kind::NLnN: os << "*n*lnn"; break;
    case RuleSpec::Kind::MuNLnN: os << "*mu*n*lnn"; break;
  }
  return os.str();
}

double eval_mu_rule(const RuleSpec& rule, int n) {
  const double ln = std::log(static_cast<double>(n));
  switch (rule.kind) {
    case RuleSpec::Kind::Constant: return rule.c;
    case RuleSpec::Kind::NLn2N: return rule.c * n * ln * ln;
    case RuleSpec::Kind::NLnN: return rule.c * n * ln;
    case RuleSpec::Kind::MuNLnN:
      throw std::invalid_argument("eval_mu_rule: mu*n*lnn is a budget rule");
  }
  return 0.0;
}

double eval_budget_rule(const RuleSpec& rule, int n, double mu) {
  const double ln = std::log(static_cast<double>(n));
  switch (rule.kind) {
    case RuleSpec::Kind::Constant: return rule.c;
    case RuleSpec::Kind::NLn2N: return rule.c * n * ln * ln;
    case RuleSpec::Kind::NLnN: return rule.c * n * ln;
    case RuleSpec::Kind::MuNLnN: return rule.c * mu * n * ln;
  }
  return 0.0;
}

ScalingReport scaling_experiment(const std::vector<int>& n_grid, const RuleSpec& mu_rule,
                                 const RuleSpec& budget_rule, std::int64_t trials,
                                 std::uint64_t seed, const FitnessFunction& f, int threads,
                                 std::int64_t trace_every) {
  if (n_grid.empty()) throw std::invalid_argument("scaling_experiment: empty n grid");
  if (trials < 1) throw std::invalid_argument("scaling_experiment: trials must be >= 1");

  std::vector<int> grid = n_grid;
  std::sort(grid.begin(), grid.end());

  ScalingReport report;
  for (std::size_t row = 0; row < grid.size(); ++row) {
    const int n = grid[row];
    const ModelParams params = make_well_behaved(n, eval_mu_rule(mu_rule, n));
    const std::int64_t budget =
        static_cast<std::int64_t>(std::llround(eval_budget_rule(budget_rule, n, params.mu)));

    std::vector<RunResult> results(static_cast<std::size_t>(trials));
    parallel_for(trials, threads, [&](std::int64_t trial) {
      const std::uint64_t stream = static_cast<std::uint64_t>(row) * trials +
                                   static_cast<std::uint64_t>(trial);
      results[static_cast<std::size_t>(trial)] =
          run_cga(params, f, budget, seed, stream, trace_every);
    });

    ScalingRow out;
    out.n = n;
    out.mu = params.mu;
    out.budget_evals = budget;
    out.trials = trials;

    std::vector<double> hit_times;
    std::vector<double> first_highs;
    std::int64_t successes = 0, maintained = 0;
    for (const RunResult& r : results) {
      if (r.success) {
        ++successes;
        hit_times.push_back(static_cast<double>(*r.hit_time_evals));
        if (r.maintained_all_high) ++maintained;
      }
      if (r.first_all_high_iter)
        first_highs.push_back(static_cast<double>(*r.first_all_high_iter));
    }
    out.success_rate = static_cast<double>(successes) / static_cast<double>(trials);
    out.median_evals = hit_times.empty() ? kNaN : median(hit_times);
    out.iqr_lo = hit_times.empty() ? kNaN : percentile(hit_times, 0.25);
    out.iqr_hi = hit_times.empty() ? kNaN : percentile(hit_times, 0.75);
    out.mean_first_all_high = mean_of(first_highs);
    out.below_quarter_rate = below_quarter_rate(results);
    out.stay_high_rate =
        successes == 0 ? kNaN
                       : static_cast<double>(maintained) / static_cast<double>(successes);
    report.rows.push_back(out);
  }

  std::vector<double> log_n, log_median;
  for (const ScalingRow& row : report.rows) {
    if (std::isnan(row.median_evals)) continue;
    log_n.push_back(std::log(static_cast<double>(row.n)));
    log_median.push_back(std::log(row.median_evals));
  }
  if (log_n.size() >= 3) report.fit = ols_fit(log_n, log_median);
  return report;
}

StayHighRecord stay_high_analysis(const RunResult& result) {
  StayHighRecord rec;
  rec.first_all_high_iter = result.first_all_high_iter;
  if (result.trace.empty()) throw std::invalid_argument("stay_high_analysis: trace is empty");

  if (rec.first_all_high_iter) {
    for (const TraceRecord& tr : result.trace) {
      if (tr.iteration < *rec.first_all_high_iter) continue;
      if (tr.critical_pos) {
        rec.maintained_traced = false;
        break;
      }
    }
  }

  int running_max_prefix = 0;
  std::set<int> below_after_top;
  for (const TraceRecord& tr : result.trace) {
    running_max_prefix = std::max(running_max_prefix, tr.prefix_len_at_upper);
    if (tr.critical_pos && *tr.critical_pos <= running_max_prefix)
      below_after_top.insert(*tr.critical_pos);
  }
  rec.distinct_below_after_top = static_cast<int>(below_after_top.size());
  return rec;
}

double below_quarter_rate(std::span<const RunResult> results) {
  if (results.empty()) throw std::invalid_argument("below_quarter_rate: no results");
  std::int64_t count = 0;
  for (const RunResult& r : results) count += r.ever_below_quarter ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(results.size());
}

CriticalAdvance critical_advance_analysis(const RunResult& result) {
  CriticalAdvance adv;
  int running_max = -1;
  for (const TraceRecord& tr : result.trace) {
    if (tr.prefix_len_at_upper > running_max) {
      running_max = tr.prefix_len_at_upper;
      adv.new_max_events.emplace_back(tr.iteration, running_max);
    }
  }
  adv.final_running_max = std::max(0, running_max);
  for (std::size_t i = 1; i < adv.new_max_events.size(); ++i)
    adv.gaps.push_back(adv.new_max_events[i].first - adv.new_max_events[i - 1].first);
  return adv;
}

double optimum_prob(std::span<const double> freqs) {
  double prod = 1.0;
  for (double p : freqs) prod *= p;
  return prod;
}

double optimum_prob(const FrequencyVector& p) { return optimum_prob(p.freqs()); }

double departure_fraction(const RunResult& result) {
  if (result.trace.empty()) return 0.0;
  std::int64_t count = 0;
  for (const TraceRecord& tr : result.trace) count += tr.border_departure ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(result.trace.size());
}

std::vector<CompareRow> compare_cga_umda(const std::vector<int>& n_grid,
                                         const RuleSpec& mu_rule, const RuleSpec& budget_rule,
                                         double umda_ratio, std::int64_t trials,
                                         std::uint64_t seed, const FitnessFunction& f,
                                         int threads) {
  if (n_grid.empty()) throw std::invalid_argument("compare_cga_umda: empty n grid");
  if (trials < 1) throw std::invalid_argument("compare_cga_umda: trials must be >= 1");
  if (!(umda_ratio >= 1.0))
    throw std::invalid_argument("compare_cga_umda: umda_ratio must be >= 1");

  std::vector<int> grid = n_grid;
  std::sort(grid.begin(), grid.end());

  std::vector<CompareRow> rows;
  for (std::size_t row = 0; row < grid.size(); ++row) {
    const int n = grid[row];
    const ModelParams params = make_well_behaved(n, eval_mu_rule(mu_rule, n));
    const std::int64_t budget =
        static_cast<std::int64_t>(std::llround(eval_budget_rule(budget_rule, n, params.mu)));
    const int mu_sel = static_cast<int>(std::llround(params.mu));
    const UmdaParams umda =
        make_umda_params(n, static_cast<int>(std::llround(umda_ratio * mu_sel)), mu_sel);

    std::vector<RunResult> cga_results(static_cast<std::size_t>(trials));
    std::vector<RunResult> umda_results(static_cast<std::size_t>(trials));
    parallel_for(trials, threads, [&](std::int64_t trial) {
      const std::uint64_t base =
          2 * (static_cast<std::uint64_t>(row) * trials + static_cast<std::uint64_t>(trial));
      cga_results[static_cast<std::size_t>(trial)] = run_cga(params, f, budget, seed, base);
      umda_results[static_cast<std::size_t>(trial)] =
          run_umda(umda, f, budget, seed, base + 1);
    });

    CompareRow out;
    out.n = n;
    out.cga_mu = params.mu;
    out.umda_mu_sel = mu_sel;
    out.umda_lambda = umda.lambda;
    out.budget_evals = budget;
    out.trials = trials;

    auto summarize = [](const std::vector<RunResult>& results, double& success_rate,
                        double& median_evals, double& departure) {
      std::vector<double> hit_times;
      double depart_sum = 0.0;
      for (const RunResult& r : results) {
        if (r.success) hit_times.push_back(static_cast<double>(*r.hit_time_evals));
        depart_sum += departure_fraction(r);
      }
      success_rate =
          static_cast<double>(hit_times.size()) / static_cast<double>(results.size());
      median_evals = hit_times.empty() ? kNaN : median(hit_times);
      departure = depart_sum / static_cast<double>(results.size());
    };
    summarize(cga_results, out.cga_success_rate, out.cga_median_evals,
              out.cga_departure_fraction);
    summarize(umda_results, out.umda_success_rate, out.umda_median_evals,
              out.umda_departure_fraction);
    rows.push_back(out);
  }
  return rows;
}

}  // namespace eda
