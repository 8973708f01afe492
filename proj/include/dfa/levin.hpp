#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dfa/simplex.hpp"

namespace dfa {

// Bounded convex game with finitely many outcomes: decisions are probability
// vectors over base actions and the loss is the mixture of per-action loss
// vectors (all inside [0,1]).
struct SimplexGame {
  int num_outcomes = 0;
  std::vector<std::vector<double>> action_loss;  // [action][outcome]

  double loss(const SimplexVector& gamma, int omega) const;
  double expected_loss_action(std::size_t action, std::span<const double> pi) const;
  // deterministic minimizer: uniform over the lexicographically first tied set
  SimplexVector argmin_decision(std::span<const double> pi, double tie_tol = 1e-12) const;
};

// Scalar-decision game on a finite outcome set with a convex loss; the
// canonical example is the square loss against outcome values in [0,1].
struct ScalarConvexGame {
  std::vector<double> outcome_values;
  std::function<double(double decision, double outcome_value)> loss;

  int num_outcomes() const { return static_cast<int>(outcome_values.size()); }
  // minimizer of the expected loss over [0,1], found by ternary search
  double argmin_decision(std::span<const double> pi) const;
};

ScalarConvexGame square_loss_game(std::vector<double> outcome_values);

// E_pi exp(eta (loss(gamma,.) - loss(gamma_ref,.)) - eta^2/2). The decision
// gamma must minimize the expected loss under pi (verified up to 1e-9); the
// returned expectation is then at most 1.
double lemma5_certificate(const SimplexGame& game, std::span<const double> pi,
                          const SimplexVector& gamma, const SimplexVector& gamma_ref, double eta);
double lemma5_certificate(const ScalarConvexGame& game, std::span<const double> pi, double x,
                          double x_ref, double eta);

// All probability vectors over `outcomes` points with coordinates in
// multiples of delta = 1/denominator.
std::vector<std::vector<double>> belief_grid(int outcomes, int denominator);

// A relation assigning to each belief a finite set of payoff vectors.
using BeliefRelation = std::function<std::vector<std::vector<double>>(std::span<const double> pi)>;

struct LevinResult {
  std::vector<double> pi;
  std::vector<double> payoff;
  double max_payoff = 0.0;
  double bound = 0.0;  // C + kappa * delta
  std::size_t grid_points_scanned = 0;
};

class SupermartingalePropertyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class GridTooCoarseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Brute-force search for a belief whose payoff defends every outcome up to
// C + kappa*delta. Checks the mean-payoff precondition E_pi g <= C at every
// grid point first and reports a violation as a supermartingale-property
// failure. Scan order is the deterministic grid enumeration; the scan over
// grid points runs in parallel when enabled.
LevinResult levin_oracle(const BeliefRelation& q, double C, int outcomes, int denominator,
                         double kappa, bool parallel = true);

}  // namespace dfa
