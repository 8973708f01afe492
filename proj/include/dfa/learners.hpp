#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dfa/game.hpp"
#include "dfa/ledgers.hpp"
#include "dfa/mixture.hpp"
#include "dfa/rules.hpp"
#include "dfa/solver.hpp"

namespace dfa {

enum class LearnerKind {
  FixedHorizon,
  Quantile,
  AnytimeQuantile,
  InternalRegret,
  AwakeTime,
  HedgeBaseline,
};

struct LearnerStepInfo {
  std::int64_t t = 0;
  double threshold = 1.0;        // C_t, linear domain
  double f_realized = 1.0;       // f_t at the played decision and outcome
  double achieved_sup_log = 0.0; // certified sup at the decision
  SupMode mode = SupMode::ExactVertices;
  bool solved = false;           // false for the closed-form baseline
  bool warm_start_accepted = false;
  int solver_iterations = 0;
  SimplexVector decision;
};

// Sequential decision-maker for the vector-loss game: announce a probability
// vector over N actions, observe a loss vector in [0,1]^N, repeat. One
// instance owns one run; nothing is shared between instances.
class DtolLearner {
 public:
  LearnerKind kind() const { return kind_; }
  int num_actions() const { return num_actions_; }
  std::int64_t current_step() const { return ledger_.t + 1; }
  std::int64_t horizon() const { return horizon_; }

  SimplexVector decide();
  void observe(std::span<const double> omega);

  const LossLedger& ledger() const { return ledger_; }
  const RuleLedger& rule_ledger() const { return rule_ledger_; }
  const MixtureEvaluator& evaluator() const { return evaluator_; }
  const LearnerStepInfo& last_step() const { return last_; }
  const SolverConfig& solver_config() const { return solver_; }

  bool rule_based() const {
    return kind_ == LearnerKind::InternalRegret || kind_ == LearnerKind::AwakeTime;
  }

  friend DtolLearner make_fixed_horizon(std::int64_t T, int N, SolverConfig cfg);
  friend DtolLearner make_quantile(std::vector<double> weights, int eta_nodes, SolverConfig cfg);
  friend DtolLearner make_anytime(std::vector<double> weights, int i_max, SolverConfig cfg);
  friend DtolLearner make_internal(int N, std::vector<ModificationRule> rules, int i_max,
                                   SolverConfig cfg);
  friend DtolLearner make_awake(int N, std::vector<ModificationRule> rules, int eta_nodes,
                                SolverConfig cfg);
  friend DtolLearner make_hedge_baseline(int N, bool anytime_eta, std::int64_t T,
                                         double explicit_eta);

 private:
  DtolLearner(LearnerKind kind, int num_actions, MixtureEvaluator ev, SolverConfig cfg)
      : kind_(kind), num_actions_(num_actions), evaluator_(std::move(ev)), solver_(cfg) {}

  SimplexVector hedge_decision() const;

  LearnerKind kind_;
  int num_actions_;
  MixtureEvaluator evaluator_;
  SolverConfig solver_;
  LossLedger ledger_;
  RuleLedger rule_ledger_;
  std::vector<ModificationRule> rules_;
  std::int64_t horizon_ = 0;    // FixedHorizon only
  double hedge_eta_ = 0.0;      // HedgeBaseline, fixed-rate mode
  bool hedge_anytime_ = false;

  bool pending_ = false;
  SimplexVector pending_decision_;
  LearnerStepInfo last_;
};

// One learning rate chosen for a known horizon T; the warm start is the
// exponentially weighted forecaster and is always feasible, so each step costs
// one verification sweep.
DtolLearner make_fixed_horizon(std::int64_t T, int N, SolverConfig cfg = {});

// Quadrature mixture over learning rates; the realized mixture value never
// increases and stays at most 1.
DtolLearner make_quantile(std::vector<double> weights, int eta_nodes = 16, SolverConfig cfg = {});

// Step-indexed grid: guarantees hold at every step simultaneously. i_max = 0
// picks the truncation automatically for uniform weights, 64 otherwise.
DtolLearner make_anytime(std::vector<double> weights, int i_max = 0, SolverConfig cfg = {});

// Anytime-style learner over modification rules (uniform rule weights).
DtolLearner make_internal(int N, std::vector<ModificationRule> rules, int i_max = 0,
                          SolverConfig cfg = {});

// Quadrature mixture over rules with awake-time corrections.
DtolLearner make_awake(int N, std::vector<ModificationRule> rules, int eta_nodes = 16,
                       SolverConfig cfg = {});

// Exponentially weighted average baseline: fixed rate sqrt(2 ln N / T) (or an
// explicitly supplied rate), or the step-dependent rate sqrt(2 ln N / t) in
// anytime mode.
DtolLearner make_hedge_baseline(int N, bool anytime_eta, std::int64_t T = 0,
                                double explicit_eta = 0.0);

// Thin adapter running the vector-loss core inside a binary-outcome convex
// game: expert decisions and the outcome are folded into a loss vector, and
// the aggregation weights are pooled into a scalar decision, which by
// convexity never does worse than the weighted expert losses.
class PeaBinaryLearner {
 public:
  PeaBinaryLearner(GameDescriptor game, DtolLearner core);

  double decide(std::span<const double> expert_decisions);
  void observe(int omega);

  const DtolLearner& core() const { return core_; }
  double learner_cum() const { return learner_cum_; }

 private:
  GameDescriptor game_;
  DtolLearner core_;
  std::vector<double> pending_experts_;
  double pending_decision_ = 0.0;
  bool pending_ = false;
  double learner_cum_ = 0.0;
};

}  // namespace dfa
