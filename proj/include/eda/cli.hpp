#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eda::cli {

// Resolved invocation parameters. Subcommands use the subset that applies to
// them; dispatch validates the rest. A JSON config file can pre-fill any
// field; command-line flags override file values. Seeds are always explicit.
struct ExperimentConfig {
  std::string subcommand;
  std::string benchmark = "leadingones";
  int n = 0;
  std::vector<int> n_grid;
  double target_mu = 0.0;
  std::string mu_rule;
  double budget = -1.0;  // evaluations
  std::string budget_rule;
  std::int64_t trials = 1000;
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::int64_t trace_every = 0;  // 0 = default thinning rule
  std::string output;            // empty = standard output
  std::string format;            // csv | json; per-subcommand default if empty
  int threads = 1;
  // drift-check
  std::string theorem;  // mult | neg | genetic
  double gamma = 0.25;
  int position = 0;  // 1-based; 0 = n
  std::int64_t big_t = 0;
  double delta = 0.0;
  double x0 = 1.0;
  double s_min = 1.0;
  std::vector<double> r_values = {1.0, 2.0, 3.0};
  double eps = 0.0;
  double step = 0.0;
  double b = 0.0;
  std::int64_t horizon = 0;
  // oracle-check
  int vectors = 100;
  std::vector<std::int64_t> indices;  // explicit grid state for the export
  std::string dist_out;
  // compare
  double umda_ratio = 12.0;
};

// Applies a JSON object ({"key": value, ...}) onto cfg. Unknown keys are
// rejected with std::invalid_argument.
void apply_config_json_text(const std::string& json_text, ExperimentConfig& cfg);

// Serializes the fields relevant to cfg.subcommand, including the resolved
// well-behaved mu where a single model is involved.
std::string config_to_json_text(const ExperimentConfig& cfg);

// Reads a "# config {...}" header line back into a config.
ExperimentConfig parse_config_header(const std::string& line);

// Runs a fully resolved config. Returns 0 on success, 1 if any emitted check
// row has pass=false, 2 on config errors.
int dispatch(ExperimentConfig cfg, std::ostream& out, std::ostream& err);

// Full command-line entry: subcommand + flags (+ optional --config file).
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);

}  // namespace eda::cli
