#include "dfa/game.hpp"

#include <stdexcept>

namespace dfa {

double dtol_loss(const SimplexVector& gamma, std::span<const double> omega) {
  if (gamma.size() != omega.size()) throw std::invalid_argument("dtol_loss: dimension mismatch");
  return dot(gamma.weights, omega);
}

double substitute_decision_binary(const GameDescriptor& game,
                                  std::span<const double> expert_decisions,
                                  const SimplexVector& agg_weights) {
  if (game.kind != GameDescriptor::Kind::BinaryConvex)
    throw std::invalid_argument("substitute_decision_binary: game is not BinaryConvex");
  if (expert_decisions.size() != agg_weights.size())
    throw std::invalid_argument("substitute_decision_binary: dimension mismatch");
  return dot(expert_decisions, agg_weights.weights);
}

SimplexVector substitute_decision_dtol(const GameDescriptor& game, const SimplexVector& agg_weights) {
  if (game.kind != GameDescriptor::Kind::Dtol)
    throw std::invalid_argument("substitute_decision_dtol: game is not Dtol");
  return agg_weights;
}

}  // namespace dfa
