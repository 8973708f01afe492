#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dfa/kernels.hpp"
#include "dfa/mixture.hpp"
#include "dfa/simplex.hpp"

namespace dfa {

struct SolverConfig {
  double feasibility_slack = 1e-9;  // relative to the threshold
  int max_iterations = 10000;
  int vertex_exact_max_n = 12;
  int heuristic_restarts = 16;
  std::uint64_t seed = 0;
  bool force_heuristic = false;  // use the heuristic sup even when exact is affordable
  bool parallel = true;
};

enum class SupMode { ExactVertices, Heuristic };

struct SolverResult {
  SimplexVector decision;
  double achieved_sup_log = 0.0;  // sup over outcomes of log f at the decision
  double threshold_log = 0.0;
  SupMode mode = SupMode::ExactVertices;
  int iterations = 0;
  bool warm_start_accepted = false;
  // outcomes checked at the accepted decision: (vertex mask, log f)
  std::vector<std::pair<std::uint64_t, double>> certificate;
};

// Thrown when the feasibility search exhausts its iteration budget. Existence
// of a defensive decision is a theorem, so this signals a numerical-tolerance
// problem or an evaluator bug, never true infeasibility.
class NotFeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exponential-weights warm start: the mixture over grid nodes of the per-node
// weight vectors, blended proportionally to node weight * eta * node mass.
// For a single-node grid this is the classical exponentially weighted
// forecaster and is feasible outright.
SimplexVector warm_start_decision(const MixtureTables& tables);

// sup_omega f_t(gamma, omega) over the outcome box. Exact mode enumerates all
// 2^N vertices; heuristic mode runs seeded coordinate-ascent walks and yields
// a lower bound on the true sup.
SupResult sup_over_outcomes(const MixtureEvaluator& ev, const SimplexVector& gamma,
                            const SolverConfig& cfg, std::uint64_t sup_seed = 0);

// Finds gamma with f_t(gamma, omega) <= C for all omega, where C is the
// evaluator's current threshold (checked against threshold_log within slack).
// Projected subgradient descent on log sup f with Polyak steps, warm-started
// as above; exits at the first feasible decision.
SolverResult solve_defensive_step(const MixtureEvaluator& ev, double threshold_log,
                                  const SolverConfig& cfg, std::uint64_t step_seed = 0);

}  // namespace dfa
