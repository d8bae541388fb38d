#include "eda/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "eda/benchmarks.hpp"
#include "eda/drift.hpp"
#include "eda/experiments.hpp"
#include "eda/oracle.hpp"
#include "eda/runner.hpp"

namespace eda::cli {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr int kOracleMaxN = 10;
constexpr double kLemmaTolerance = 1e-10;
constexpr double kProbSumTolerance = 1e-12;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_bool(bool v) { return v ? "true" : "false"; }

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

// --- config file / header plumbing ---------------------------------------

void apply_config_json(const json& j, ExperimentConfig& cfg) {
  require(j.is_object(), "config: top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "subcommand") cfg.subcommand = value.get<std::string>();
    else if (key == "benchmark") cfg.benchmark = value.get<std::string>();
    else if (key == "n") cfg.n = value.get<int>();
    else if (key == "n_grid") cfg.n_grid = value.get<std::vector<int>>();
    else if (key == "target_mu") cfg.target_mu = value.get<double>();
    else if (key == "mu_rule") cfg.mu_rule = value.get<std::string>();
    else if (key == "budget") cfg.budget = value.get<double>();
    else if (key == "budget_rule") cfg.budget_rule = value.get<std::string>();
    else if (key == "trials") cfg.trials = value.get<std::int64_t>();
    else if (key == "seed") { cfg.seed = value.get<std::uint64_t>(); cfg.has_seed = true; }
    else if (key == "stream") cfg.stream = value.get<std::uint64_t>();
    else if (key == "trace_every") cfg.trace_every = value.get<std::int64_t>();
    else if (key == "output") cfg.output = value.get<std::string>();
    else if (key == "format") cfg.format = value.get<std::string>();
    else if (key == "threads") cfg.threads = value.get<int>();
    else if (key == "theorem") cfg.theorem = value.get<std::string>();
    else if (key == "gamma") cfg.gamma = value.get<double>();
    else if (key == "position") cfg.position = value.get<int>();
    else if (key == "T") cfg.big_t = value.get<std::int64_t>();
    else if (key == "delta") cfg.delta = value.get<double>();
    else if (key == "x0") cfg.x0 = value.get<double>();
    else if (key == "s_min") cfg.s_min = value.get<double>();
    else if (key == "r_values") cfg.r_values = value.get<std::vector<double>>();
    else if (key == "eps") cfg.eps = value.get<double>();
    else if (key == "step") cfg.step = value.get<double>();
    else if (key == "b") cfg.b = value.get<double>();
    else if (key == "horizon") cfg.horizon = value.get<std::int64_t>();
    else if (key == "vectors") cfg.vectors = value.get<int>();
    else if (key == "indices") cfg.indices = value.get<std::vector<std::int64_t>>();
    else if (key == "dist_out") cfg.dist_out = value.get<std::string>();
    else if (key == "umda_ratio") cfg.umda_ratio = value.get<double>();
    else if (key == "mu_resolved" || key == "mu_adjustment" || key == "schema") {
      // informational echo keys; recomputed on every run
    } else {
      throw std::invalid_argument("config: unknown key \"" + key + "\"");
    }
  }
}

void finalize_defaults(ExperimentConfig& cfg) {
  if (cfg.format.empty()) cfg.format = cfg.subcommand == "run" ? "json" : "csv";
  if (cfg.position == 0) cfg.position = cfg.n;
}

ordered_json config_to_json_object(const ExperimentConfig& cfg) {
  ordered_json j;
  j["schema"] = "eda-lab-config v1";
  j["subcommand"] = cfg.subcommand;
  j["benchmark"] = cfg.benchmark;
  if (cfg.n > 0) j["n"] = cfg.n;
  if (!cfg.n_grid.empty()) j["n_grid"] = cfg.n_grid;
  if (cfg.target_mu > 0.0) {
    j["target_mu"] = cfg.target_mu;
    const ModelParams params = make_well_behaved(cfg.n, cfg.target_mu);
    j["mu_resolved"] = params.mu;
    j["mu_adjustment"] = params.mu_adjustment;
  }
  if (!cfg.mu_rule.empty()) j["mu_rule"] = cfg.mu_rule;
  if (cfg.budget >= 0.0) j["budget"] = cfg.budget;
  if (!cfg.budget_rule.empty()) j["budget_rule"] = cfg.budget_rule;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["stream"] = cfg.stream;
  if (cfg.trace_every > 0) j["trace_every"] = cfg.trace_every;
  j["format"] = cfg.format;
  j["threads"] = cfg.threads;
  if (!cfg.theorem.empty()) {
    j["theorem"] = cfg.theorem;
    if (cfg.theorem == "mult") {
      j["delta"] = cfg.delta;
      j["x0"] = cfg.x0;
      j["s_min"] = cfg.s_min;
      j["r_values"] = cfg.r_values;
    } else if (cfg.theorem == "neg") {
      j["eps"] = cfg.eps;
      j["step"] = cfg.step;
      j["b"] = cfg.b;
      j["horizon"] = cfg.horizon;
    } else if (cfg.theorem == "genetic") {
      j["gamma"] = cfg.gamma;
      j["position"] = cfg.position;
      j["T"] = cfg.big_t;
    }
  }
  if (cfg.subcommand == "oracle-check") {
    j["vectors"] = cfg.vectors;
    if (!cfg.indices.empty()) j["indices"] = cfg.indices;
    if (!cfg.dist_out.empty()) j["dist_out"] = cfg.dist_out;
  }
  if (cfg.subcommand == "compare") j["umda_ratio"] = cfg.umda_ratio;
  return j;
}

// --- output helpers -------------------------------------------------------

struct Sink {
  std::ostream& stream;
  std::ofstream file;

  Sink(const std::string& path, std::ostream& fallback)
      : stream(path.empty() ? fallback : file) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::invalid_argument("output: cannot open \"" + path + "\"");
    }
  }
};

void write_config_header(std::ostream& os, const ExperimentConfig& cfg) {
  os << "# config " << config_to_json_object(cfg).dump() << "\n";
}

ordered_json trace_to_json(const std::vector<TraceRecord>& trace) {
  ordered_json arr = ordered_json::array();
  for (const TraceRecord& tr : trace) {
    ordered_json rec;
    rec["iteration"] = tr.iteration;
    if (tr.critical_pos)
      rec["critical_pos"] = *tr.critical_pos;
    else
      rec["critical_pos"] = nullptr;
    rec["min_freq"] = tr.min_freq;
    rec["prefix_len_at_upper"] = tr.prefix_len_at_upper;
    rec["optimum_prob"] = tr.optimum_prob;
    rec["border_departure"] = tr.border_departure;
    arr.push_back(std::move(rec));
  }
  return arr;
}

ordered_json result_to_json(const RunResult& res) {
  ordered_json j;
  j["success"] = res.success;
  if (res.hit_time_evals)
    j["hit_time_evals"] = *res.hit_time_evals;
  else
    j["hit_time_evals"] = nullptr;
  j["iterations_used"] = res.iterations_used;
  j["evaluations_used"] = res.evaluations_used;
  if (res.first_all_high_iter)
    j["first_all_high_iter"] = *res.first_all_high_iter;
  else
    j["first_all_high_iter"] = nullptr;
  j["ever_below_quarter"] = res.ever_below_quarter;
  j["maintained_all_high"] = res.maintained_all_high;
  j["trace"] = trace_to_json(res.trace);
  return j;
}

void write_check_rows_csv(std::ostream& os, const std::vector<CheckReport>& rows) {
  os << "# schema: drift-check v1\n";
  os << "theorem,params,bound,empirical,wilson_upper,vacuous,pass\n";
  for (const CheckReport& r : rows)
    os << r.theorem << ',' << r.params << ',' << g17(r.bound_value) << ','
       << g17(r.empirical_rate) << ',' << g17(r.wilson_upper) << ',' << csv_bool(r.vacuous)
       << ',' << csv_bool(r.pass) << "\n";
}

ordered_json check_rows_json(const std::vector<CheckReport>& rows) {
  ordered_json arr = ordered_json::array();
  for (const CheckReport& r : rows) {
    ordered_json j;
    j["theorem"] = r.theorem;
    j["params"] = r.params;
    j["bound"] = r.bound_value;
    j["empirical"] = r.empirical_rate;
    j["trials"] = r.trials;
    j["wilson_lower"] = r.wilson_lower;
    j["wilson_upper"] = r.wilson_upper;
    j["vacuous"] = r.vacuous;
    j["pass"] = r.pass;
    arr.push_back(std::move(j));
  }
  return arr;
}

// --- subcommands ----------------------------------------------------------

int cmd_run(const ExperimentConfig& cfg, std::ostream& os) {
  require(cfg.n >= 3, "run: --n must be >= 3");
  require(cfg.target_mu > 0.0, "run: --mu must be positive");
  require(cfg.budget >= 0.0, "run: --budget must be >= 0");

  const ModelParams params = make_well_behaved(cfg.n, cfg.target_mu);
  const FitnessFunction f = make_benchmark(cfg.benchmark);
  const RunResult res =
      run_cga(params, f, static_cast<std::int64_t>(std::llround(cfg.budget)), cfg.seed,
              cfg.stream, cfg.trace_every);

  if (cfg.format == "json") {
    ordered_json j;
    j["config"] = config_to_json_object(cfg);
    j["result"] = result_to_json(res);
    os << j.dump(2) << "\n";
  } else {
    write_config_header(os, cfg);
    os << "# schema: run v1\n";
    os << "iteration,critical_pos,min_freq,prefix_len_at_upper,optimum_prob,border_departure\n";
    for (const TraceRecord& tr : res.trace) {
      os << tr.iteration << ',';
      if (tr.critical_pos) os << *tr.critical_pos;
      os << ',' << g17(tr.min_freq) << ',' << tr.prefix_len_at_upper << ','
         << g17(tr.optimum_prob) << ',' << csv_bool(tr.border_departure) << "\n";
    }
    os << "# success=" << csv_bool(res.success);
    if (res.hit_time_evals) os << " hit_time_evals=" << *res.hit_time_evals;
    os << " iterations_used=" << res.iterations_used
       << " evaluations_used=" << res.evaluations_used;
    if (res.first_all_high_iter) os << " first_all_high_iter=" << *res.first_all_high_iter;
    os << " ever_below_quarter=" << csv_bool(res.ever_below_quarter)
       << " maintained_all_high=" << csv_bool(res.maintained_all_high) << "\n";
  }
  return 0;
}

int cmd_scaling(const ExperimentConfig& cfg, std::ostream& os) {
  require(!cfg.n_grid.empty(), "scaling: --n-grid is required");
  require(!cfg.mu_rule.empty(), "scaling: --mu-rule is required");
  require(!cfg.budget_rule.empty(), "scaling: --budget-rule is required");
  require(cfg.trials >= 1, "scaling: --trials must be >= 1");
  for (int n : cfg.n_grid) require(n >= 3, "scaling: every n must be >= 3");

  const FitnessFunction f = make_benchmark(cfg.benchmark);
  const ScalingReport report =
      scaling_experiment(cfg.n_grid, parse_rule(cfg.mu_rule), parse_rule(cfg.budget_rule),
                         cfg.trials, cfg.seed, f, cfg.threads, cfg.trace_every);

  if (cfg.format == "json") {
    ordered_json j;
    j["config"] = config_to_json_object(cfg);
    ordered_json rows = ordered_json::array();
    for (const ScalingRow& row : report.rows) {
      ordered_json r;
      r["n"] = row.n;
      r["mu"] = row.mu;
      r["budget_evals"] = row.budget_evals;
      r["trials"] = row.trials;
      r["success_rate"] = row.success_rate;
      r["median_evals"] = row.median_evals;
      r["iqr_lo"] = row.iqr_lo;
      r["iqr_hi"] = row.iqr_hi;
      r["mean_first_all_high"] = row.mean_first_all_high;
      r["below_quarter_rate"] = row.below_quarter_rate;
      r["stay_high_rate"] = row.stay_high_rate;
      rows.push_back(std::move(r));
    }
    j["rows"] = rows;
    if (report.fit) {
      j["fit"] = {{"slope", report.fit->slope},
                  {"intercept", report.fit->intercept},
                  {"r_squared", report.fit->r_squared}};
    } else {
      j["fit"] = nullptr;
    }
    os << j.dump(2) << "\n";
    return 0;
  }

  write_config_header(os, cfg);
  os << "# schema: scaling v1\n";
  os << "n,mu,trials,success_rate,median_evals,iqr_lo,iqr_hi,mean_first_all_high\n";
  for (const ScalingRow& row : report.rows)
    os << row.n << ',' << g17(row.mu) << ',' << row.trials << ',' << g17(row.success_rate)
       << ',' << g17(row.median_evals) << ',' << g17(row.iqr_lo) << ',' << g17(row.iqr_hi)
       << ',' << g17(row.mean_first_all_high) << "\n";
  for (const ScalingRow& row : report.rows)
    os << "# row n=" << row.n << " budget_evals=" << row.budget_evals
       << " below_quarter_rate=" << g17(row.below_quarter_rate)
       << " stay_high_rate=" << g17(row.stay_high_rate) << "\n";
  os << "slope,r2\n";
  if (report.fit)
    os << g17(report.fit->slope) << ',' << g17(report.fit->r_squared) << "\n";
  else
    os << "nan,nan\n";
  return 0;
}

int cmd_drift_check(const ExperimentConfig& cfg, std::ostream& os) {
  require(cfg.trials >= 1, "drift-check: --trials must be >= 1");
  std::vector<CheckReport> rows;

  if (cfg.theorem == "mult") {
    require(cfg.delta > 0.0, "drift-check mult: --delta must be positive");
    require(!cfg.r_values.empty(), "drift-check mult: --r needs at least one value");
    for (double r : cfg.r_values)
      rows.push_back(check_multiplicative_drift(cfg.delta, cfg.x0, cfg.s_min, r, cfg.trials,
                                                cfg.seed, cfg.threads));
  } else if (cfg.theorem == "neg") {
    require(cfg.step > 0.0, "drift-check neg: --step must be positive");
    require(cfg.horizon > 0, "drift-check neg: --horizon must be positive");
    rows.push_back(check_negative_drift(cfg.eps, cfg.step, cfg.b, cfg.horizon, cfg.trials,
                                        cfg.seed, cfg.threads));
  } else if (cfg.theorem == "genetic") {
    require(cfg.n >= 3, "drift-check genetic: --n must be >= 3");
    require(cfg.target_mu > 0.0, "drift-check genetic: --mu must be positive");
    require(cfg.big_t >= 1, "drift-check genetic: --T must be >= 1");
    const ModelParams params = make_well_behaved(cfg.n, cfg.target_mu);
    const FitnessFunction f = make_benchmark(cfg.benchmark);
    rows.push_back(check_genetic_drift_on_cga(params, f, cfg.position, cfg.gamma, cfg.big_t,
                                              cfg.trials, cfg.seed, cfg.threads));
  } else {
    throw std::invalid_argument("drift-check: --theorem must be one of mult, neg, genetic");
  }

  if (cfg.format == "json") {
    ordered_json j;
    j["config"] = config_to_json_object(cfg);
    j["checks"] = check_rows_json(rows);
    os << j.dump(2) << "\n";
  } else {
    write_config_header(os, cfg);
    write_check_rows_csv(os, rows);
  }
  for (const CheckReport& r : rows)
    if (!r.pass) return 1;
  return 0;
}

int cmd_oracle_check(const ExperimentConfig& cfg, std::ostream& os) {
  require(cfg.n >= 3, "oracle-check: --n must be >= 3");
  if (cfg.n > kOracleMaxN)
    throw std::invalid_argument("oracle-check: n must be <= " + std::to_string(kOracleMaxN) +
                                " (the oracle enumerates 4^n sample pairs), got " +
                                std::to_string(cfg.n));
  require(cfg.vectors >= 1, "oracle-check: --vectors must be >= 1");

  const double target_mu = cfg.target_mu > 0.0 ? cfg.target_mu : 4.0 * cfg.n;
  const ModelParams params = make_well_behaved(cfg.n, target_mu);
  require(params.m >= 2, "oracle-check: grid too coarse for interior vectors, raise --mu");
  const FitnessFunction f = make_benchmark(cfg.benchmark);
  const bool formulas = cfg.benchmark == "leadingones";

  double max_lemma3 = 0.0, max_lemma2 = 0.0, max_prob = 0.0;
  for (int v = 0; v < cfg.vectors; ++v) {
    RandomSource rng(cfg.seed, static_cast<std::uint64_t>(v));
    FrequencyVector p(params);
    for (int i = 0; i < params.n; ++i)
      p.set_index(i, rng.uniform_int(1, params.upper_index() - 1));
    const StepDistribution dist = exact_step_distribution(params, p, f);
    max_prob = std::max(max_prob, std::fabs(static_cast<double>(dist.total - 1.0L)));
    if (!formulas) continue;
    for (int pos = 1; pos <= params.n; ++pos) {
      const double exact = exact_expected_delta(dist, pos);
      max_lemma3 =
          std::max(max_lemma3, std::fabs(exact - lemma3_formula(p, pos - 1)));
      const double pi = p.freq(pos - 1);
      const double conditional = exact / (2.0 * pi * (1.0 - pi));
      max_lemma2 =
          std::max(max_lemma2, std::fabs(conditional - lemma2_conditional_drift(p, pos)));
    }
  }
  const bool pass = max_prob <= kProbSumTolerance &&
                    (!formulas || (max_lemma3 <= kLemmaTolerance && max_lemma2 <= kLemmaTolerance));

  // Distribution export for the explicitly requested state (default: the
  // initial state with every index at m).
  FrequencyVector state(params);
  if (!cfg.indices.empty()) {
    require(static_cast<int>(cfg.indices.size()) == params.n,
            "oracle-check: --indices must list exactly n grid indices");
    for (int i = 0; i < params.n; ++i) state.set_index(i, cfg.indices[static_cast<std::size_t>(i)]);
  }
  ordered_json dist_json;
  if (!cfg.dist_out.empty() || cfg.format == "json") {
    const StepDistribution dist = exact_step_distribution(params, state, f);
    dist_json["n"] = dist.n;
    dist_json["mu"] = dist.mu;
    dist_json["benchmark"] = cfg.benchmark;
    dist_json["freqs"] = dist.freqs;
    dist_json["total"] = static_cast<double>(dist.total);
    ordered_json entries = ordered_json::array();
    for (const auto& [code, prob] : dist.entries) {
      ordered_json e;
      e["delta"] = StepDistribution::decode_delta(code, dist.n);
      e["prob"] = static_cast<double>(prob);
      entries.push_back(std::move(e));
    }
    dist_json["entries"] = std::move(entries);
    if (!cfg.dist_out.empty()) {
      std::ofstream df(cfg.dist_out);
      require(static_cast<bool>(df), "oracle-check: cannot open dist_out file");
      df << dist_json.dump(2) << "\n";
    }
  }

  if (cfg.format == "json") {
    ordered_json j;
    j["config"] = config_to_json_object(cfg);
    j["max_lemma3_error"] = formulas ? ordered_json(max_lemma3) : ordered_json(nullptr);
    j["max_lemma2_error"] = formulas ? ordered_json(max_lemma2) : ordered_json(nullptr);
    j["max_prob_error"] = max_prob;
    j["pass"] = pass;
    j["distribution"] = dist_json;
    os << j.dump(2) << "\n";
  } else {
    write_config_header(os, cfg);
    os << "# schema: oracle-check v1\n";
    os << "n,mu,vectors,max_lemma3_error,max_lemma2_error,max_prob_error,pass\n";
    os << params.n << ',' << g17(params.mu) << ',' << cfg.vectors << ','
       << (formulas ? g17(max_lemma3) : std::string()) << ','
       << (formulas ? g17(max_lemma2) : std::string()) << ',' << g17(max_prob) << ','
       << csv_bool(pass) << "\n";
  }
  return pass ? 0 : 1;
}

int cmd_compare(const ExperimentConfig& cfg, std::ostream& os) {
  std::vector<int> grid = cfg.n_grid;
  if (grid.empty() && cfg.n >= 3) grid.push_back(cfg.n);
  require(!grid.empty(), "compare: --n-grid or --n is required");
  require(!cfg.mu_rule.empty(), "compare: --mu-rule is required");
  require(!cfg.budget_rule.empty(), "compare: --budget-rule is required");
  require(cfg.trials >= 1, "compare: --trials must be >= 1");

  const FitnessFunction f = make_benchmark(cfg.benchmark);
  const std::vector<CompareRow> rows =
      compare_cga_umda(grid, parse_rule(cfg.mu_rule), parse_rule(cfg.budget_rule),
                       cfg.umda_ratio, cfg.trials, cfg.seed, f, cfg.threads);

  if (cfg.format == "json") {
    ordered_json j;
    j["config"] = config_to_json_object(cfg);
    ordered_json arr = ordered_json::array();
    for (const CompareRow& row : rows) {
      ordered_json r;
      r["n"] = row.n;
      r["cga_mu"] = row.cga_mu;
      r["umda_mu_sel"] = row.umda_mu_sel;
      r["umda_lambda"] = row.umda_lambda;
      r["budget_evals"] = row.budget_evals;
      r["trials"] = row.trials;
      r["cga_success_rate"] = row.cga_success_rate;
      r["umda_success_rate"] = row.umda_success_rate;
      r["cga_median_evals"] = row.cga_median_evals;
      r["umda_median_evals"] = row.umda_median_evals;
      r["cga_departure_fraction"] = row.cga_departure_fraction;
      r["umda_departure_fraction"] = row.umda_departure_fraction;
      arr.push_back(std::move(r));
    }
    j["rows"] = arr;
    os << j.dump(2) << "\n";
  } else {
    write_config_header(os, cfg);
    os << "# schema: compare v1\n";
    os << "n,cga_mu,umda_mu_sel,umda_lambda,budget_evals,trials,cga_success_rate,"
          "umda_success_rate,cga_median_evals,umda_median_evals,cga_departure_fraction,"
          "umda_departure_fraction\n";
    for (const CompareRow& row : rows)
      os << row.n << ',' << g17(row.cga_mu) << ',' << row.umda_mu_sel << ','
         << row.umda_lambda << ',' << row.budget_evals << ',' << row.trials << ','
         << g17(row.cga_success_rate) << ',' << g17(row.umda_success_rate) << ','
         << g17(row.cga_median_evals) << ',' << g17(row.umda_median_evals) << ','
         << g17(row.cga_departure_fraction) << ',' << g17(row.umda_departure_fraction)
         << "\n";
  }
  return 0;
}

}  // namespace

void apply_config_json_text(const std::string& json_text, ExperimentConfig& cfg) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  apply_config_json(j, cfg);
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
  return config_to_json_object(cfg).dump();
}

ExperimentConfig parse_config_header(const std::string& line) {
  const std::string prefix = "# config ";
  require(line.rfind(prefix, 0) == 0, "parse_config_header: line lacks \"# config \" prefix");
  ExperimentConfig cfg;
  apply_config_json_text(line.substr(prefix.size()), cfg);
  return cfg;
}

int dispatch(ExperimentConfig cfg, std::ostream& out, std::ostream& err) {
  try {
    require(!cfg.subcommand.empty(),
            "no subcommand given (run, scaling, drift-check, oracle-check, compare)");
    require(cfg.has_seed, "seed must be set explicitly (--seed or config \"seed\")");
    require(cfg.trials >= 0 && cfg.vectors >= 0 && cfg.trace_every >= 0,
            "numeric fields must not be negative");
    require(cfg.format.empty() || cfg.format == "csv" || cfg.format == "json",
            "format must be csv or json");
    finalize_defaults(cfg);

    Sink sink(cfg.output, out);
    if (cfg.subcommand == "run") return cmd_run(cfg, sink.stream);
    if (cfg.subcommand == "scaling") return cmd_scaling(cfg, sink.stream);
    if (cfg.subcommand == "drift-check") return cmd_drift_check(cfg, sink.stream);
    if (cfg.subcommand == "oracle-check") return cmd_oracle_check(cfg, sink.stream);
    if (cfg.subcommand == "compare") return cmd_compare(cfg, sink.stream);
    throw std::invalid_argument("unknown subcommand \"" + cfg.subcommand + "\"");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  ExperimentConfig cfg;

  // Load --config first so command-line flags override file values.
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        err << "error: --config needs a file path\n";
        return 2;
      }
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    std::ifstream in(path);
    if (!in) {
      err << "error: cannot open config file \"" << path << "\"\n";
      return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      apply_config_json_text(buffer.str(), cfg);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }

  CLI::App app{"eda-lab: cGA / UMDA laboratory for LeadingOnes and OneMax"};
  app.require_subcommand(0, 1);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed (required, no implicit default)")
        ->each([&cfg](const std::string&) { cfg.has_seed = true; });
    sub->add_option("--stream", cfg.stream, "random stream index");
    sub->add_option("--trials", cfg.trials, "number of trials");
    sub->add_option("--output", cfg.output, "output path (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    sub->add_option("--trace-every", cfg.trace_every, "trace thinning (0 = auto)");
  };

  CLI::App* run = app.add_subcommand("run", "single traced cGA run");
  run->add_option("--benchmark", cfg.benchmark, "leadingones or onemax");
  run->add_option("--n", cfg.n, "problem size");
  run->add_option("--mu", cfg.target_mu, "target hypothetical population size");
  run->add_option("--budget", cfg.budget, "evaluation budget");
  add_common(run);

  CLI::App* scaling = app.add_subcommand("scaling", "runtime scaling experiment");
  scaling->add_option("--benchmark", cfg.benchmark, "leadingones or onemax");
  scaling->add_option("--n-grid", cfg.n_grid, "problem sizes")->delimiter(',');
  scaling->add_option("--mu-rule", cfg.mu_rule, "e.g. 2*n*ln2n");
  scaling->add_option("--budget-rule", cfg.budget_rule, "e.g. 24*mu*n*lnn");
  add_common(scaling);

  CLI::App* drift = app.add_subcommand("drift-check", "Monte Carlo drift-bound checks");
  drift->add_option("--theorem", cfg.theorem, "mult, neg or genetic");
  drift->add_option("--benchmark", cfg.benchmark, "genetic: fitness function");
  drift->add_option("--n", cfg.n, "genetic: problem size");
  drift->add_option("--mu", cfg.target_mu, "genetic: target mu");
  drift->add_option("--position", cfg.position, "genetic: 1-based position (default n)");
  drift->add_option("--gamma", cfg.gamma, "genetic: margin");
  drift->add_option("--T", cfg.big_t, "genetic: iteration horizon");
  drift->add_option("--delta", cfg.delta, "mult: drift coefficient");
  drift->add_option("--x0", cfg.x0, "mult: initial value");
  drift->add_option("--smin", cfg.s_min, "mult: minimal nonzero state");
  drift->add_option("--r", cfg.r_values, "mult: tail parameters")->delimiter(',');
  drift->add_option("--eps", cfg.eps, "neg: drift (negative)");
  drift->add_option("--step", cfg.step, "neg: walk step size");
  drift->add_option("--b", cfg.b, "neg: target");
  drift->add_option("--horizon", cfg.horizon, "neg: step horizon");
  add_common(drift);

  CLI::App* oracle = app.add_subcommand("oracle-check", "exact enumeration vs drift formulas");
  oracle->add_option("--benchmark", cfg.benchmark, "leadingones or onemax");
  oracle->add_option("--n", cfg.n, "problem size (<= 10)");
  oracle->add_option("--mu", cfg.target_mu, "target mu (default 4n)");
  oracle->add_option("--vectors", cfg.vectors, "random interior vectors to sweep");
  oracle->add_option("--indices", cfg.indices, "explicit grid state to export")->delimiter(',');
  oracle->add_option("--dist-out", cfg.dist_out, "write the exact distribution JSON here");
  add_common(oracle);

  CLI::App* compare = app.add_subcommand("compare", "cGA vs UMDA side by side");
  compare->add_option("--benchmark", cfg.benchmark, "leadingones or onemax");
  compare->add_option("--n", cfg.n, "single problem size");
  compare->add_option("--n-grid", cfg.n_grid, "problem sizes")->delimiter(',');
  compare->add_option("--mu-rule", cfg.mu_rule, "cGA mu rule, e.g. 2*n*ln2n");
  compare->add_option("--budget-rule", cfg.budget_rule, "e.g. 24*mu*n*lnn");
  compare->add_option("--umda-ratio", cfg.umda_ratio, "lambda / mu_sel (default 12)");
  add_common(compare);

  std::vector<const char*> argv;
  argv.push_back("eda-lab");
  for (const std::string& a : rest) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  for (CLI::App* sub : {run, scaling, drift, oracle, compare})
    if (sub->parsed()) cfg.subcommand = sub->get_name();

  return dispatch(std::move(cfg), out, err);
}

}  // namespace eda::cli
