#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dfa/eta_grid.hpp"
#include "dfa/rules.hpp"
#include "dfa/simplex.hpp"

namespace dfa {

enum class RefKind {
  Expert,  // references are the N actions; increment gamma.omega - omega_n
  Rule,    // references are modification rules; increment I_k (gamma.omega - (M_k gamma).omega)
};

// Mixture of Hoeffding-style exponential terms, one per (reference, grid
// node), kept entirely in log domain. The accumulated state is (A_n, step
// count, and the kind-specific correction accumulators); exponents are
// recomputed on demand so the anytime rescaling across steps introduces no
// drift.
class MixtureEvaluator {
 public:
  static MixtureEvaluator experts(EtaGrid grid, std::vector<double> ref_weights, int num_actions);
  static MixtureEvaluator rules(EtaGrid grid, std::vector<double> rule_weights, int num_actions,
                                bool awake_corrections);

  RefKind ref_kind() const { return refs_; }
  GridKind grid_kind() const { return grid_.kind; }
  const EtaGrid& grid() const { return grid_; }
  int num_actions() const { return num_actions_; }
  std::size_t num_refs() const { return log_ref_weight_.size(); }
  std::int64_t steps_done() const { return steps_; }
  std::int64_t current_step() const { return steps_ + 1; }
  bool awake_corrections() const { return awake_corrections_; }

  std::span<const double> accumulated_regret() const { return acc_; }
  std::span<const double> log_ref_weights() const { return log_ref_weight_; }
  double sqrt_sum() const { return sqrt_sum_; }
  std::span<const double> awake_sq() const { return awake_sq_; }

  // Rule references only: install the matrices and selection values for the
  // upcoming step. Must be called before eval/advance of each step.
  void set_step_context(std::vector<StochMatrix> matrices, std::vector<double> selections);
  const std::vector<StochMatrix>& step_matrices() const { return step_matrices_; }
  std::span<const double> step_selections() const { return step_selections_; }

  // Accumulated exponent of term (n, k) at the current step, excluding the
  // reference and grid weights.
  double acc_exponent(std::size_t n, std::size_t k) const;

  // Learning rate of node k at the current step.
  double node_eta(std::size_t k) const { return grid_.eta(k, current_step()); }

  // This step's increment for reference n at decision gamma, outcome omega.
  double increment(std::size_t n, std::span<const double> gamma, std::span<const double> omega) const;

  // Per-step Hoeffding correction of term (n, k).
  double step_correction(std::size_t n, std::size_t k) const;

  // log f_t(gamma, omega): log-sum-exp over all (n, k) terms.
  double eval_log(std::span<const double> gamma, std::span<const double> omega) const;

  // log of the defensive threshold: the mixture mass with zero increment.
  // Equals the previous step's realized f for the decreasing kinds, and the
  // anytime threshold C_T for AnytimeIndexed grids.
  double threshold_log() const;

  // C_T in linear domain (AnytimeIndexed contract; valid for all kinds).
  double threshold() const;

  // Roll the state forward with the move actually played.
  void advance(std::span<const double> gamma, std::span<const double> omega);

 private:
  RefKind refs_ = RefKind::Expert;
  EtaGrid grid_;
  bool awake_corrections_ = false;
  int num_actions_ = 0;

  std::vector<double> log_ref_weight_;
  std::vector<double> acc_;
  std::int64_t steps_ = 0;
  double sqrt_sum_ = 0.0;
  std::vector<double> awake_sq_;

  std::vector<StochMatrix> step_matrices_;
  std::vector<double> step_selections_;

  void require_step_context() const;
};

// Stable log(sum(exp(x))) over a span; -inf entries are skipped.
double log_sum_exp(std::span<const double> xs);

}  // namespace dfa
