#include "dfa/eta_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace dfa {

double hoeffding_increment(double eta, double loss, double ref_loss) {
  return eta * (loss - ref_loss) - 0.5 * eta * eta;
}

double EtaGrid::eta(std::size_t k, std::int64_t step) const {
  if (kind == GridKind::AnytimeIndexed) return node[k] / std::sqrt(static_cast<double>(step));
  return node[k];
}

double EtaGrid::total_weight() const {
  double s = 0.0;
  for (double w : weight) s += w;
  return s;
}

EtaGrid build_grid_fixed(std::int64_t T, int N) {
  if (T < 1) throw std::invalid_argument("build_grid_fixed: T must be >= 1");
  if (N < 2) throw std::invalid_argument("build_grid_fixed: N must be >= 2");
  EtaGrid g;
  g.kind = GridKind::FixedHorizon;
  g.node = {std::sqrt(2.0 * std::log(static_cast<double>(N)) / static_cast<double>(T))};
  g.weight = {1.0};
  g.log_weight = {0.0};
  return g;
}

EtaGrid build_grid_mu(int nodes) {
  if (nodes < 1) throw std::invalid_argument("build_grid_mu: need at least one node");
  EtaGrid g;
  g.kind = GridKind::MuIntegral;
  g.node.reserve(nodes);
  g.weight.reserve(nodes);
  g.log_weight.reserve(nodes);
  const double w = 1.0 / static_cast<double>(nodes);
  const double lw = -std::log(static_cast<double>(nodes));
  for (int j = 1; j <= nodes; ++j) {
    const double u = (j - 0.5) / static_cast<double>(nodes);
    g.node.push_back(std::exp(-1.0 / u));
    g.weight.push_back(w);
    g.log_weight.push_back(lw);
  }
  return g;
}

EtaGrid build_grid_anytime(std::int64_t T, int i_max) {
  if (T < 1) throw std::invalid_argument("build_grid_anytime: T must be >= 1");
  if (i_max < 1) throw std::invalid_argument("build_grid_anytime: i_max must be >= 1");
  EtaGrid g;
  g.kind = GridKind::AnytimeIndexed;
  g.node.reserve(i_max);
  g.weight.reserve(i_max);
  g.log_weight.reserve(i_max);
  (void)T;  // the node stores the index; eta(k, step) applies the 1/sqrt(step) scaling
  const double log_c = std::log(kBaselWeight);
  for (int i = 1; i <= i_max; ++i) {
    g.node.push_back(static_cast<double>(i));
    g.weight.push_back(kBaselWeight / (static_cast<double>(i) * i));
    g.log_weight.push_back(log_c - 2.0 * std::log(static_cast<double>(i)));
  }
  return g;
}

int anytime_index_bound(double n_effective) {
  if (!(n_effective >= 1.0)) throw std::invalid_argument("anytime_index_bound: need n >= 1");
  return static_cast<int>(std::ceil(std::sqrt(std::log(n_effective)))) + 1;
}

}  // namespace dfa
