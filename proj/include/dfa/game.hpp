#pragma once

#include <functional>
#include <span>

#include "dfa/simplex.hpp"

namespace dfa {

// A bounded convex game. Two concrete kinds are supported:
//  - Dtol: the learner plays a probability vector over N actions, the outcome
//    is a loss vector in [0,1]^N, and the learner's loss is the dot product.
//  - BinaryConvex: outcomes {0,1}, scalar decisions in [0,1], loss convex in
//    the decision with range inside [0,1].
struct GameDescriptor {
  enum class Kind { Dtol, BinaryConvex };

  Kind kind = Kind::Dtol;
  int num_actions = 0;  // Dtol only
  std::function<double(double decision, int outcome)> loss;  // BinaryConvex only

  static GameDescriptor dtol(int n) { return GameDescriptor{Kind::Dtol, n, nullptr}; }
  static GameDescriptor binary_convex(std::function<double(double, int)> loss_fn) {
    return GameDescriptor{Kind::BinaryConvex, 0, std::move(loss_fn)};
  }
};

// Learner loss for one Dtol step. Throws on dimension mismatch.
double dtol_loss(const SimplexVector& gamma, std::span<const double> omega);

// Maps an aggregation weight vector over experts to an admissible decision of
// the underlying game. For Dtol the weight vector is itself the decision; for
// BinaryConvex the pooled decision is the convex combination of the experts'
// scalar decisions, which never does worse than the weighted expert losses
// because the loss is convex in the decision.
double substitute_decision_binary(const GameDescriptor& game,
                                  std::span<const double> expert_decisions,
                                  const SimplexVector& agg_weights);

SimplexVector substitute_decision_dtol(const GameDescriptor& game, const SimplexVector& agg_weights);

}  // namespace dfa
