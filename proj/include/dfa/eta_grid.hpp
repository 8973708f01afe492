#pragma once

#include <cstdint>
#include <vector>

namespace dfa {

// Hoeffding-style exponent for one step: eta * (loss - ref_loss) - eta^2 / 2.
double hoeffding_increment(double eta, double loss, double ref_loss);

enum class GridKind {
  FixedHorizon,    // a single learning rate chosen from (T, N)
  MuIntegral,      // quadrature of d(eta) / (eta ln^2(1/eta)) on (0, 1/e]
  AnytimeIndexed,  // eta_i = i / sqrt(T), weights c / i^2 with c = 6 / pi^2
};

// Mixing grid over learning rates. For AnytimeIndexed the node field stores
// the integer index i and the effective learning rate depends on the current
// step; for the other kinds it stores eta itself. Weights are carried both
// linearly (exact quadrature masses) and in log domain (what the evaluator
// consumes).
struct EtaGrid {
  GridKind kind = GridKind::FixedHorizon;
  std::vector<double> node;        // eta, or index i for AnytimeIndexed
  std::vector<double> weight;      // mixing weights
  std::vector<double> log_weight;  // log of the same weights

  std::size_t size() const { return node.size(); }

  // Learning rate of node k when the upcoming step is `step` (1-based).
  double eta(std::size_t k, std::int64_t step) const;

  double total_weight() const;
};

// Single node at eta = sqrt(2 ln(N) / T), weight 1. Requires N >= 2.
EtaGrid build_grid_fixed(std::int64_t T, int N);

// Midpoint quadrature of the measure d(eta) / (eta ln^2(1/eta)) on (0, 1/e]
// after the substitution u = 1 / ln(1/eta), under which the measure is the
// uniform distribution on (0, 1]. Nodes u_j = (j - 1/2) / M, eta_j = e^{-1/u_j},
// weights exactly 1/M each.
EtaGrid build_grid_mu(int nodes);

// Indexed grid eta_i = i / sqrt(T), weight c / i^2, truncated at i_max.
EtaGrid build_grid_anytime(std::int64_t T, int i_max);

// Truncation index that preserves the quantile guarantee for a finite uniform
// pool of N references: ceil(sqrt(ln N)) + 1.
int anytime_index_bound(double n_effective);

inline constexpr double kBaselWeight = 0.6079271018540267;  // 6 / pi^2

}  // namespace dfa
