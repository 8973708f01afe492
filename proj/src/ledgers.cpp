#include "dfa/ledgers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dfa {

namespace {
constexpr double kLossTol = 1e-12;

void check_loss(double v, const char* what) {
  if (!(v >= -kLossTol && v <= 1.0 + kLossTol))
    throw std::invalid_argument(std::string(what) + " outside [0,1]: " + std::to_string(v));
}
}  // namespace

LossLedger make_ledger(std::vector<double> expert_weights) {
  double sum = 0.0;
  for (double w : expert_weights) {
    if (!(w > 0.0)) throw std::invalid_argument("expert weight must be positive");
    sum += w;
  }
  if (sum > 1.0 + kLossTol) throw std::invalid_argument("expert weights sum to more than 1");
  LossLedger ledger;
  ledger.expert_cum.assign(expert_weights.size(), 0.0);
  ledger.expert_weights = std::move(expert_weights);
  return ledger;
}

LossLedger make_uniform_ledger(std::size_t num_experts) {
  return make_ledger(std::vector<double>(num_experts, 1.0 / static_cast<double>(num_experts)));
}

LossLedger update_ledger(const LossLedger& ledger, double learner_loss,
                         std::span<const double> expert_losses) {
  if (expert_losses.size() != ledger.num_experts())
    throw std::invalid_argument("update_ledger: expert count mismatch");
  check_loss(learner_loss, "learner loss");
  for (double l : expert_losses) check_loss(l, "expert loss");
  LossLedger next = ledger;
  next.t += 1;
  next.learner_cum += learner_loss;
  for (std::size_t n = 0; n < expert_losses.size(); ++n) next.expert_cum[n] += expert_losses[n];
  return next;
}

QuantileReport quantile_loss(const LossLedger& ledger, double eps) {
  const double total = std::accumulate(ledger.expert_weights.begin(), ledger.expert_weights.end(), 0.0);
  if (!(eps > 0.0) || eps > total + kLossTol)
    throw std::invalid_argument("quantile_loss: eps must lie in (0, total weight]");
  std::vector<std::size_t> order(ledger.num_experts());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ledger.expert_cum[a] < ledger.expert_cum[b];
  });
  double cum = 0.0;
  double value = ledger.expert_cum[order.back()];
  for (std::size_t i = 0; i < order.size(); ++i) {
    cum += ledger.expert_weights[order[i]];
    // absorb everything tied at this loss value before testing the weight
    while (i + 1 < order.size() &&
           ledger.expert_cum[order[i + 1]] == ledger.expert_cum[order[i]]) {
      ++i;
      cum += ledger.expert_weights[order[i]];
    }
    if (cum >= eps - kLossTol) {
      value = ledger.expert_cum[order[i]];
      break;
    }
  }
  return QuantileReport{eps, value, ledger.learner_cum - value};
}

std::pair<double, double> u_mixture_value(const LossLedger& ledger, const SimplexVector& u) {
  if (u.size() != ledger.num_experts()) throw std::invalid_argument("u_mixture_value: dimension mismatch");
  double mix = 0.0, div = 0.0;
  for (std::size_t n = 0; n < u.size(); ++n) {
    if (u[n] == 0.0) continue;
    const double p = ledger.expert_weights[n];
    if (p <= 0.0) throw std::invalid_argument("u_mixture_value: u puts mass on a zero-weight expert");
    mix += u[n] * ledger.expert_cum[n];
    div += u[n] * std::log(u[n] / p);
  }
  return {mix, div};
}

double quantile_regret(std::span<const double> regrets, std::span<const double> weights, double eps) {
  if (regrets.size() != weights.size()) throw std::invalid_argument("quantile_regret: dimension mismatch");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(eps > 0.0) || eps > total + kLossTol)
    throw std::invalid_argument("quantile_regret: eps must lie in (0, total weight]");
  std::vector<std::size_t> order(regrets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return regrets[a] > regrets[b]; });
  double cum = 0.0;
  double value = regrets[order.back()];
  for (std::size_t i = 0; i < order.size(); ++i) {
    cum += weights[order[i]];
    while (i + 1 < order.size() && regrets[order[i + 1]] == regrets[order[i]]) {
      ++i;
      cum += weights[order[i]];
    }
    if (cum >= eps - kLossTol) {
      value = regrets[order[i]];
      break;
    }
  }
  return value;
}

}  // namespace dfa
