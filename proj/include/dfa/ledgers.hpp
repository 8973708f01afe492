#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dfa/simplex.hpp"

namespace dfa {

// Cumulative loss accounting for one run. Expert weights are fixed at
// construction; they are positive and sum to at most 1 (the pool may carry
// strictly less than unit mass, in which case quantiles are taken against the
// given weights without renormalization).
struct LossLedger {
  std::int64_t t = 0;
  double learner_cum = 0.0;
  std::vector<double> expert_cum;
  std::vector<double> expert_weights;

  std::size_t num_experts() const { return expert_cum.size(); }
};

LossLedger make_ledger(std::vector<double> expert_weights);
LossLedger make_uniform_ledger(std::size_t num_experts);

// Returns the advanced ledger; losses must lie in [0,1].
LossLedger update_ledger(const LossLedger& ledger, double learner_loss,
                         std::span<const double> expert_losses);

struct QuantileReport {
  double epsilon = 0.0;
  double quantile_loss = 0.0;    // smallest attained loss whose cumulative weight reaches epsilon
  double quantile_regret = 0.0;  // learner_cum - quantile_loss
};

// Closed lower quantile of the expert losses: the smallest attained value v
// such that the total weight of experts with cumulative loss <= v is >= eps.
QuantileReport quantile_loss(const LossLedger& ledger, double eps);

// Weighted mixture loss sum_n u_n L_n and divergence sum_n u_n ln(u_n / p_n),
// with 0 ln 0 read as 0. Throws when some u_n > 0 has p_n = 0.
std::pair<double, double> u_mixture_value(const LossLedger& ledger, const SimplexVector& u);

// Quantile over rule regrets: the largest attained regret r such that the
// total weight of rules with regret >= r is at least eps.
double quantile_regret(std::span<const double> regrets, std::span<const double> weights, double eps);

}  // namespace dfa
