#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dfa/bisection.hpp"
#include "dfa/eta_grid.hpp"

namespace dfa {

// Paired prediction: a square-loss probability p and an expected boolean
// prediction ptilde, constrained to agree (p < 1/2 forces ptilde = 0,
// p > 1/2 forces ptilde = 1).
struct TwoLossDecision {
  double p = 0.5;
  double p_tilde = 0.5;

  bool consistent() const {
    if (p < 0.5) return p_tilde == 0.0;
    if (p > 0.5) return p_tilde == 1.0;
    return p_tilde >= 0.0 && p_tilde <= 1.0;
  }
};

// Learner over outcomes {0,1} competing simultaneously against K square-loss
// experts (probability forecasts) and M absolute-loss experts (boolean
// forecasts). The square side mixes at the fixed rate 2 with no correction
// term; the boolean side carries the quadrature grid with Hoeffding
// corrections. Decisions come from the one-dimensional continuation search.
class TwoLossLearner {
 public:
  TwoLossLearner(int num_square, int num_binary, int eta_nodes = 16, double tol_x = 1e-12);

  int num_square() const { return num_square_; }
  int num_binary() const { return num_binary_; }
  std::int64_t steps_done() const { return steps_; }

  TwoLossDecision decide(std::span<const double> square_preds, std::span<const int> binary_preds);
  void observe(int omega);

  // mixture value at arbitrary (p, ptilde, omega) given the pending step inputs
  double mixture_value(double p, double p_tilde, int omega) const;

  double learner_square_cum() const { return learner_square_cum_; }
  double learner_abs_cum() const { return learner_abs_cum_; }
  std::span<const double> expert_square_cum() const { return expert_square_cum_; }
  std::span<const double> expert_abs_cum() const { return expert_abs_cum_; }

  struct StepInfo {
    TwoLossDecision decision;
    double f_realized = 0.0;  // mixture value at the played move and outcome
    double residual_0 = 0.0;  // g(x0, 0)
    double residual_1 = 0.0;  // g(x0, 1)
    double tol_f = 0.0;
  };
  const StepInfo& last_step() const { return last_; }

 private:
  int num_square_;
  int num_binary_;
  EtaGrid grid_;
  double tol_x_;

  std::vector<double> square_acc_;  // per square expert: sum of loss differences
  std::vector<double> abs_acc_;     // per binary expert: sum of loss differences
  std::int64_t steps_ = 0;

  double learner_square_cum_ = 0.0;
  double learner_abs_cum_ = 0.0;
  std::vector<double> expert_square_cum_;
  std::vector<double> expert_abs_cum_;

  bool pending_ = false;
  std::vector<double> pend_square_;
  std::vector<int> pend_binary_;
  TwoLossDecision pend_decision_;

  StepInfo last_;

  double lipschitz_bound() const;
};

TwoLossLearner make_two_loss(int num_square, int num_binary, int eta_nodes = 16,
                             double tol_x = 1e-12);

}  // namespace dfa
