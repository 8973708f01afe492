#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dfa/mixture.hpp"

namespace dfa {

// Per-solve tables derived from a MixtureEvaluator with the accumulated state
// frozen. Expert references admit a factorized form: every term's dependence
// on the outcome goes through the scalar gamma.omega and the single coordinate
// omega_n, so each grid block collapses to
//   exp(block_const_k + eta_k * (gamma.omega)) * sum_n abar[k][n] e^{-eta_k omega_n}.
// Rule references keep the generic term-by-term layout.
struct MixtureTables {
  RefKind kind = RefKind::Expert;
  int num_actions = 0;
  std::size_t num_nodes = 0;
  std::size_t num_refs = 0;
  std::vector<double> eta;  // per node, at the step the tables were built for

  // expert kind
  std::vector<double> block_const;  // log w_k + scale_k - eta_k^2/2
  std::vector<double> abar;         // num_nodes x num_actions, row-major
  std::vector<double> mbar;         // per node: sum_n abar
  std::vector<double> em1;          // per node: 1 - e^{-eta_k}

  // rule kind
  std::vector<double> term_mass;  // num_refs x num_nodes: weights + acc exponent
  std::vector<double> term_eval;  // term_mass minus the per-step correction
  std::vector<double> selections;
  std::vector<StochMatrix> matrices;

  static MixtureTables build(const MixtureEvaluator& ev);

  // log of the total mass (the defensive threshold), from the tables alone
  double threshold_log() const;
};

// f_t(gamma, .) with the decision bound: a convex function of the outcome over
// the box [0,1]^num_actions, maximized at a vertex.
class StepFunction {
 public:
  StepFunction(const MixtureTables* tables, std::vector<double> gamma);

  int dim() const { return tables_->num_actions; }
  const MixtureTables& tables() const { return *tables_; }
  std::span<const double> gamma() const { return gamma_; }

  // log f at the vertex encoded by the low dim() bits of mask; pure function,
  // computed from scratch so results are identical under any parallel split.
  double log_at_vertex(std::uint64_t mask) const;

  // log f at an arbitrary outcome in the box
  double log_at(std::span<const double> omega) const;

  // gradient of log f with respect to gamma, at the given outcome
  std::vector<double> grad_log_gamma(std::span<const double> omega) const;

  // rule kind: flattened num_refs x num_actions coefficients r_n = sel_n (gamma - M_n gamma)
  std::span<const double> rule_coeffs() const { return rvec_; }

 private:
  const MixtureTables* tables_;
  std::vector<double> gamma_;
  std::vector<double> rvec_;
};

struct SupResult {
  double log_value = 0.0;
  std::vector<double> witness;       // outcome vector achieving log_value
  std::uint64_t vertex_mask = 0;     // valid when the witness is a vertex
  bool exact = false;                // all vertices enumerated
};

// Exact maximum over all 2^dim vertices. The parallel version splits the
// vertex range across threads; every vertex value is computed from scratch and
// ties resolve to the lowest mask, so the result is bit-identical to the
// serial scan for any thread count.
SupResult sup_vertices_serial(const StepFunction& f);
SupResult sup_vertices_parallel(const StepFunction& f);

// Greedy coordinate-ascent vertex walks from seeded random starts (plus the
// all-zeros and all-ones vertices). Returns a lower bound on the true sup.
SupResult sup_heuristic(const StepFunction& f, int restarts, std::uint64_t seed,
                        bool parallel = true);

// Reference path kept for testing: enumerates vertices serially through the
// term-by-term evaluator instead of the factorized tables.
SupResult sup_vertices_reference(const MixtureEvaluator& ev, std::span<const double> gamma);

// Batch evaluation helper used by tests and the benchmark.
std::vector<double> batch_log_at_vertices(const StepFunction& f,
                                          std::span<const std::uint64_t> masks, bool parallel);

std::vector<double> vertex_to_outcome(std::uint64_t mask, int dim);

}  // namespace dfa
