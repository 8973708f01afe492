#include "dfa/two_loss.hpp"

#include <cmath>
#include <stdexcept>

namespace dfa {

TwoLossLearner::TwoLossLearner(int num_square, int num_binary, int eta_nodes, double tol_x)
    : num_square_(num_square),
      num_binary_(num_binary),
      grid_(build_grid_mu(eta_nodes)),
      tol_x_(tol_x) {
  if (num_square < 1 || num_binary < 1)
    throw std::invalid_argument("TwoLossLearner: need at least one expert of each kind");
  square_acc_.assign(num_square, 0.0);
  abs_acc_.assign(num_binary, 0.0);
  expert_square_cum_.assign(num_square, 0.0);
  expert_abs_cum_.assign(num_binary, 0.0);
}

double TwoLossLearner::mixture_value(double p, double p_tilde, int omega) const {
  if (!pending_) throw std::logic_error("mixture_value: no pending step inputs");
  const double w0 = 1.0 / static_cast<double>(num_square_ + num_binary_);
  const double ow = static_cast<double>(omega);
  double value = 0.0;
  // square side: fixed rate 2, no correction (the loss is mixable there)
  for (int k = 0; k < num_square_; ++k) {
    const double dk = (p - ow) * (p - ow) - (pend_square_[k] - ow) * (pend_square_[k] - ow);
    value += w0 * std::exp(2.0 * square_acc_[k] + 2.0 * dk);
  }
  // boolean side: quadrature over learning rates with Hoeffding corrections
  const double t_corr = static_cast<double>(steps_);
  for (int m = 0; m < num_binary_; ++m) {
    const double mism = (pend_binary_[m] != omega) ? 1.0 : 0.0;
    const double dm = std::fabs(p_tilde - ow) - mism;
    for (std::size_t j = 0; j < grid_.size(); ++j) {
      const double eta = grid_.node[j];
      const double expo = eta * abs_acc_[m] - 0.5 * eta * eta * t_corr + eta * dm - 0.5 * eta * eta;
      value += w0 * std::exp(grid_.log_weight[j]) * std::exp(expo);
    }
  }
  return value;
}

double TwoLossLearner::lipschitz_bound() const {
  const double w0 = 1.0 / static_cast<double>(num_square_ + num_binary_);
  double lip = 0.0;
  // |d/dx| of the square terms: |4 (p - w)| e^{2 acc + 2 diff} <= 4 e^{2 acc + 2}, |p'(x)| <= 1
  for (int k = 0; k < num_square_; ++k)
    lip += w0 * 4.0 * std::exp(2.0 * square_acc_[k] + 2.0);
  const double t_corr = static_cast<double>(steps_);
  for (int m = 0; m < num_binary_; ++m)
    for (std::size_t j = 0; j < grid_.size(); ++j) {
      const double eta = grid_.node[j];
      lip += w0 * std::exp(grid_.log_weight[j]) * eta *
             std::exp(eta * abs_acc_[m] - 0.5 * eta * eta * t_corr + eta);
    }
  return lip;
}

TwoLossDecision TwoLossLearner::decide(std::span<const double> square_preds,
                                       std::span<const int> binary_preds) {
  if (pending_) throw std::logic_error("decide: outcome of the previous step not observed yet");
  if (static_cast<int>(square_preds.size()) != num_square_ ||
      static_cast<int>(binary_preds.size()) != num_binary_)
    throw std::invalid_argument("decide: expert input dimensions mismatch");
  for (double p : square_preds)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("decide: square prediction outside [0,1]");
  for (int b : binary_preds)
    if (b != 0 && b != 1) throw std::invalid_argument("decide: boolean prediction not in {0,1}");

  pend_square_.assign(square_preds.begin(), square_preds.end());
  pend_binary_.assign(binary_preds.begin(), binary_preds.end());
  pending_ = true;

  auto g = [this](double x, int omega) {
    return mixture_value(twoloss_p(x), twoloss_ptilde(x), omega) - 1.0;
  };
  const BisectionResult res = bisection_binary(g, tol_x_, lipschitz_bound());

  pend_decision_ = TwoLossDecision{twoloss_p(res.x0), twoloss_ptilde(res.x0)};
  last_.decision = pend_decision_;
  last_.residual_0 = res.g_at_0;
  last_.residual_1 = res.g_at_1;
  last_.tol_f = res.tol_f;
  return pend_decision_;
}

void TwoLossLearner::observe(int omega) {
  if (!pending_) throw std::logic_error("observe: decide must be called first");
  if (omega != 0 && omega != 1) throw std::invalid_argument("observe: outcome must be 0 or 1");

  last_.f_realized = mixture_value(pend_decision_.p, pend_decision_.p_tilde, omega);

  const double ow = static_cast<double>(omega);
  const double lsq = (pend_decision_.p - ow) * (pend_decision_.p - ow);
  const double labs = std::fabs(pend_decision_.p_tilde - ow);
  learner_square_cum_ += lsq;
  learner_abs_cum_ += labs;
  for (int k = 0; k < num_square_; ++k) {
    const double le = (pend_square_[k] - ow) * (pend_square_[k] - ow);
    expert_square_cum_[k] += le;
    square_acc_[k] += lsq - le;
  }
  for (int m = 0; m < num_binary_; ++m) {
    const double le = (pend_binary_[m] != omega) ? 1.0 : 0.0;
    expert_abs_cum_[m] += le;
    abs_acc_[m] += labs - le;
  }
  steps_ += 1;
  pending_ = false;
}

}  // namespace dfa
