#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfa/simplex.hpp"

namespace dfa {

// Column-stochastic N x N matrix stored row-major: entry(i, j) is the weight
// moved onto action i from action j.
struct StochMatrix {
  int n = 0;
  std::vector<double> a;  // n*n, row-major

  double entry(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  double& entry(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }

  std::vector<double> apply(std::span<const double> gamma) const;

  static StochMatrix identity(int n);
  static StochMatrix swap(int n, int i, int j);
  // "always play action i": row i all ones
  static StochMatrix constant_action(int n, int i);
};

// Empty when valid; otherwise the first violated constraint.
std::optional<std::string> rule_violation(const StochMatrix& m, double selection);

// Throws std::invalid_argument describing the first violated constraint.
void validate_rule(const StochMatrix& m, double selection);

// One-step regret of decision gamma to the rule (m, selection) on outcome
// omega: selection * (gamma . omega - (m gamma) . omega).
double rule_regret_step(const SimplexVector& gamma, std::span<const double> omega,
                        const StochMatrix& m, double selection);

// A modification rule with an attached time selection function. Both may vary
// with the step index (steps are 1-based).
struct ModificationRule {
  std::function<StochMatrix(std::int64_t t)> matrix_provider;
  std::function<double(std::int64_t t)> selection_provider;

  static ModificationRule fixed(StochMatrix m);
  static ModificationRule fixed_with_selection(StochMatrix m,
                                               std::function<double(std::int64_t)> sel);
  // selection 1 when (t + phase) is even, else 0
  static std::function<double(std::int64_t)> alternating(int phase);
  // selection 0 before join_step, 1 from join_step on
  static std::function<double(std::int64_t)> join_at(std::int64_t join_step);
};

// Per-rule regret and awake-time accounting.
struct RuleLedger {
  std::int64_t t = 0;
  std::vector<double> rule_regret;
  std::vector<double> awake_time;     // sum of selection values
  std::vector<double> awake_time_sq;  // sum of squared selection values

  std::size_t num_rules() const { return rule_regret.size(); }
};

RuleLedger make_rule_ledger(std::size_t num_rules);

}  // namespace dfa
