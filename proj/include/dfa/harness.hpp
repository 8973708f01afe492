#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dfa/environments.hpp"
#include "dfa/solver.hpp"

namespace dfa {

struct RuleSpec {
  std::string kind = "identity";  // identity | swap | constant
  int action = 0;                 // constant
  int a = 0, b = 1;               // swap
  std::string selection = "always";  // always | alternating | join
  int phase = 0;                  // alternating
  std::int64_t join = 1;          // join
};

struct RunConfig {
  std::string name;
  std::string algorithm = "anytime";  // fixed_horizon | quantile | anytime | internal | awake |
                                      // hedge | two_loss
  EnvironmentSpec env;
  std::int64_t T = 100;
  int N = 2;
  std::uint64_t seed = 1;
  std::vector<double> epsilon_grid;  // empty = default {1/2, 1/4, 1/8, 1/N}
  int eta_nodes = 16;
  int i_max = 0;  // 0 = automatic
  SolverConfig solver;
  std::vector<RuleSpec> rules;  // internal / awake
  int two_loss_square = 3;
  int two_loss_binary = 3;
};

struct TraceRow {
  std::int64_t t = 0;
  double learner_cum = 0.0;
  double f_value = 1.0;
  double threshold = 1.0;
  std::string mode;
  std::vector<double> decision;
  std::vector<double> leps;   // per epsilon
  std::vector<double> reps;   // per epsilon
  std::vector<double> bound;  // per epsilon: the anytime quantile bound at this prefix
  std::vector<double> ref_cum;  // expert cumulative losses (or rule regrets); not serialized to CSV
};

struct RunSummary {
  std::vector<double> epsilon_grid;
  double final_learner_cum = 0.0;
  std::vector<double> final_leps, final_reps, final_bound;
  std::vector<double> max_bound_gap;  // per epsilon: max over t of (reps - bound)
  double max_f_over_threshold = 0.0;  // max over rows of f/C - 1
  double max_threshold = 0.0;
  bool f_nonincreasing = true;
  std::vector<double> final_rule_regret;
  std::vector<double> final_expert_cum;
  double final_learner_abs_cum = 0.0;      // two-loss runs only
  bool two_loss_consistent = true;         // p<1/2 => ptilde=0, p>1/2 => ptilde=1
  double max_residual_minus_tol = 0.0;     // max over steps of bisection residual minus tol_f
  int max_solver_iterations = 0;
  std::int64_t warm_start_steps = 0;
};

struct RunResult {
  RunConfig config;
  std::vector<TraceRow> rows;
  RunSummary summary;
};

RunResult run_experiment(const RunConfig& cfg);

// CSV schema:
//   t,learner_loss,f_value,threshold,solver_mode,decision_0..decision_{N-1},
//   Leps_<eps>...,Reps_<eps>...,bound17_<eps>...
// learner_loss is the cumulative learner loss; numbers are serialized with 17
// significant digits so parsing them back is lossless.
void emit_trace_csv(const RunResult& result, std::ostream& os);
void write_trace_csv(const RunResult& result, const std::string& path);
std::string summary_json(const RunResult& result);
void write_summary_json(const RunResult& result, const std::string& path);

struct ParsedTrace {
  std::vector<double> epsilon_grid;
  int num_decisions = 0;
  std::vector<TraceRow> rows;
};
ParsedTrace parse_trace_csv(std::istream& is);
ParsedTrace parse_trace_csv_file(const std::string& path);

enum class TraceStyle {
  Decreasing,  // realized f must never increase (and stays <= 1)
  Anytime,     // realized f <= C_t and C_t <= 1 at every step
};

struct TraceViolation {
  std::int64_t index = 0;
  std::string what;
};

// Checks a trace of (realized f, threshold) pairs; nullopt when clean.
std::optional<TraceViolation> verify_decrease(
    const std::vector<std::pair<double, double>>& f_and_threshold, TraceStyle style,
    double tol = 1e-9);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Offline checks over an emitted trace: schema, simplex validity of decisions,
// f <= threshold, threshold <= 1, monotone f when the thresholds chain to the
// previous realized value, the Reps/Leps identity, and the per-prefix bound
// columns.
VerifyReport verify_trace_file(const std::string& path);

// Experiment configurations shipped with the CLI; each passes verify_trace.
std::vector<RunConfig> shipped_presets();
std::optional<RunConfig> find_preset(const std::string& name);

RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& cfg);
RunConfig load_config(const std::string& path);

}  // namespace dfa
