#include "dfa/mixture.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dfa/game.hpp"

namespace dfa {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_sum_exp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

MixtureEvaluator MixtureEvaluator::experts(EtaGrid grid, std::vector<double> ref_weights,
                                           int num_actions) {
  if (static_cast<int>(ref_weights.size()) != num_actions)
    throw std::invalid_argument("MixtureEvaluator::experts: one weight per action required");
  MixtureEvaluator ev;
  ev.refs_ = RefKind::Expert;
  ev.grid_ = std::move(grid);
  ev.num_actions_ = num_actions;
  double sum = 0.0;
  for (double w : ref_weights) {
    if (!(w > 0.0)) throw std::invalid_argument("MixtureEvaluator: reference weights must be positive");
    sum += w;
    ev.log_ref_weight_.push_back(std::log(w));
  }
  if (sum > 1.0 + 1e-9) throw std::invalid_argument("MixtureEvaluator: reference weights exceed unit mass");
  ev.acc_.assign(ref_weights.size(), 0.0);
  return ev;
}

MixtureEvaluator MixtureEvaluator::rules(EtaGrid grid, std::vector<double> rule_weights,
                                         int num_actions, bool awake_corrections) {
  MixtureEvaluator ev;
  ev.refs_ = RefKind::Rule;
  ev.grid_ = std::move(grid);
  ev.num_actions_ = num_actions;
  ev.awake_corrections_ = awake_corrections;
  double sum = 0.0;
  for (double w : rule_weights) {
    if (!(w > 0.0)) throw std::invalid_argument("MixtureEvaluator: rule weights must be positive");
    sum += w;
    ev.log_ref_weight_.push_back(std::log(w));
  }
  if (sum > 1.0 + 1e-9) throw std::invalid_argument("MixtureEvaluator: rule weights exceed unit mass");
  ev.acc_.assign(rule_weights.size(), 0.0);
  ev.awake_sq_.assign(rule_weights.size(), 0.0);
  return ev;
}

void MixtureEvaluator::set_step_context(std::vector<StochMatrix> matrices,
                                        std::vector<double> selections) {
  if (refs_ != RefKind::Rule) throw std::logic_error("step context only applies to rule references");
  if (matrices.size() != num_refs() || selections.size() != num_refs())
    throw std::invalid_argument("set_step_context: one matrix and selection per rule required");
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    if (matrices[k].n != num_actions_)
      throw std::invalid_argument("set_step_context: matrix dimension mismatch");
    validate_rule(matrices[k], selections[k]);
  }
  step_matrices_ = std::move(matrices);
  step_selections_ = std::move(selections);
}

void MixtureEvaluator::require_step_context() const {
  if (refs_ == RefKind::Rule && step_matrices_.size() != num_refs())
    throw std::logic_error("rule evaluator used without a step context");
}

double MixtureEvaluator::acc_exponent(std::size_t n, std::size_t k) const {
  if (grid_.kind == GridKind::AnytimeIndexed) {
    const double root_t = std::sqrt(static_cast<double>(current_step()));
    const double i = grid_.node[k];
    return (i / root_t) * acc_[n] - (i * i / (2.0 * root_t)) * sqrt_sum_;
  }
  const double eta = grid_.node[k];
  const double corr = awake_corrections_ ? awake_sq_[n] : static_cast<double>(steps_);
  return eta * acc_[n] - 0.5 * eta * eta * corr;
}

double MixtureEvaluator::increment(std::size_t n, std::span<const double> gamma,
                                   std::span<const double> omega) const {
  if (static_cast<int>(gamma.size()) != num_actions_ || static_cast<int>(omega.size()) != num_actions_)
    throw std::invalid_argument("MixtureEvaluator: decision/outcome dimension mismatch");
  const double own = dot(gamma, omega);
  if (refs_ == RefKind::Expert) return own - omega[n];
  require_step_context();
  const double sel = step_selections_[n];
  if (sel == 0.0) return 0.0;
  const std::vector<double> moved = step_matrices_[n].apply(gamma);
  return sel * (own - dot(moved, omega));
}

double MixtureEvaluator::step_correction(std::size_t n, std::size_t k) const {
  const double eta = node_eta(k);
  if (awake_corrections_) {
    const double scaled = eta * step_selections_[n];
    return 0.5 * scaled * scaled;
  }
  return 0.5 * eta * eta;
}

double MixtureEvaluator::eval_log(std::span<const double> gamma, std::span<const double> omega) const {
  require_step_context();
  const std::size_t refs = num_refs();
  const std::size_t nodes = grid_.size();
  std::vector<double> terms;
  terms.reserve(refs * nodes);
  for (std::size_t n = 0; n < refs; ++n) {
    const double d = increment(n, gamma, omega);
    for (std::size_t k = 0; k < nodes; ++k) {
      const double x = log_ref_weight_[n] + grid_.log_weight[k] + acc_exponent(n, k) +
                       node_eta(k) * d - step_correction(n, k);
      if (!std::isfinite(x) && x != kNegInf)
        throw std::runtime_error("eval_log: non-finite exponent; accumulated state is corrupt");
      terms.push_back(x);
    }
  }
  return log_sum_exp(terms);
}

double MixtureEvaluator::threshold_log() const {
  const std::size_t refs = num_refs();
  const std::size_t nodes = grid_.size();
  std::vector<double> terms;
  terms.reserve(refs * nodes);
  for (std::size_t n = 0; n < refs; ++n)
    for (std::size_t k = 0; k < nodes; ++k)
      terms.push_back(log_ref_weight_[n] + grid_.log_weight[k] + acc_exponent(n, k));
  return log_sum_exp(terms);
}

double MixtureEvaluator::threshold() const { return std::exp(threshold_log()); }

void MixtureEvaluator::advance(std::span<const double> gamma, std::span<const double> omega) {
  require_step_context();
  for (std::size_t n = 0; n < num_refs(); ++n) acc_[n] += increment(n, gamma, omega);
  if (awake_corrections_)
    for (std::size_t n = 0; n < num_refs(); ++n)
      awake_sq_[n] += step_selections_[n] * step_selections_[n];
  if (grid_.kind == GridKind::AnytimeIndexed)
    sqrt_sum_ += 1.0 / std::sqrt(static_cast<double>(current_step()));
  steps_ += 1;
  step_matrices_.clear();
  step_selections_.clear();
}

}  // namespace dfa
