#include "dfa/levin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dfa {

double SimplexGame::loss(const SimplexVector& gamma, int omega) const {
  double s = 0.0;
  for (std::size_t a = 0; a < action_loss.size(); ++a) s += gamma[a] * action_loss[a][omega];
  return s;
}

double SimplexGame::expected_loss_action(std::size_t action, std::span<const double> pi) const {
  double s = 0.0;
  for (int w = 0; w < num_outcomes; ++w) s += pi[w] * action_loss[action][w];
  return s;
}

SimplexVector SimplexGame::argmin_decision(std::span<const double> pi, double tie_tol) const {
  const std::size_t num_actions = action_loss.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> means(num_actions);
  for (std::size_t a = 0; a < num_actions; ++a) {
    means[a] = expected_loss_action(a, pi);
    best = std::min(best, means[a]);
  }
  std::vector<double> gamma(num_actions, 0.0);
  std::size_t tied = 0;
  for (std::size_t a = 0; a < num_actions; ++a)
    if (means[a] <= best + tie_tol) ++tied;
  for (std::size_t a = 0; a < num_actions; ++a)
    if (means[a] <= best + tie_tol) gamma[a] = 1.0 / static_cast<double>(tied);
  return SimplexVector{std::move(gamma)};
}

double ScalarConvexGame::argmin_decision(std::span<const double> pi) const {
  auto expected = [&](double x) {
    double s = 0.0;
    for (int w = 0; w < num_outcomes(); ++w) s += pi[w] * loss(x, outcome_values[w]);
    return s;
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (expected(m1) <= expected(m2))
      hi = m2;
    else
      lo = m1;
  }
  return 0.5 * (lo + hi);
}

ScalarConvexGame square_loss_game(std::vector<double> outcome_values) {
  ScalarConvexGame g;
  g.outcome_values = std::move(outcome_values);
  g.loss = [](double x, double v) { return (x - v) * (x - v); };
  return g;
}

namespace {

void check_minimizer(double got, double best, const char* what) {
  if (got > best + 1e-9)
    throw std::invalid_argument(std::string(what) +
                                ": decision does not minimize the expected loss");
}

}  // namespace

double lemma5_certificate(const SimplexGame& game, std::span<const double> pi,
                          const SimplexVector& gamma, const SimplexVector& gamma_ref, double eta) {
  if (eta < 0.0) throw std::invalid_argument("lemma5_certificate: eta must be >= 0");
  double expected = 0.0, best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < game.action_loss.size(); ++a)
    best = std::min(best, game.expected_loss_action(a, pi));
  for (int w = 0; w < game.num_outcomes; ++w) expected += pi[w] * game.loss(gamma, w);
  check_minimizer(expected, best, "lemma5_certificate");
  double value = 0.0;
  for (int w = 0; w < game.num_outcomes; ++w)
    value += pi[w] * std::exp(eta * (game.loss(gamma, w) - game.loss(gamma_ref, w)) -
                              0.5 * eta * eta);
  return value;
}

double lemma5_certificate(const ScalarConvexGame& game, std::span<const double> pi, double x,
                          double x_ref, double eta) {
  if (eta < 0.0) throw std::invalid_argument("lemma5_certificate: eta must be >= 0");
  auto expected = [&](double d) {
    double s = 0.0;
    for (int w = 0; w < game.num_outcomes(); ++w) s += pi[w] * game.loss(d, game.outcome_values[w]);
    return s;
  };
  check_minimizer(expected(x), expected(game.argmin_decision(pi)) , "lemma5_certificate");
  double value = 0.0;
  for (int w = 0; w < game.num_outcomes(); ++w) {
    const double v = game.outcome_values[w];
    value += pi[w] * std::exp(eta * (game.loss(x, v) - game.loss(x_ref, v)) - 0.5 * eta * eta);
  }
  return value;
}

std::vector<std::vector<double>> belief_grid(int outcomes, int denominator) {
  if (outcomes < 1 || denominator < 1) throw std::invalid_argument("belief_grid: bad arguments");
  std::vector<std::vector<double>> grid;
  std::vector<int> counts(outcomes, 0);
  const double delta = 1.0 / static_cast<double>(denominator);
  // enumerate compositions of `denominator` into `outcomes` parts
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == outcomes - 1) {
      counts[pos] = remaining;
      std::vector<double> pi(outcomes);
      for (int i = 0; i < outcomes; ++i) pi[i] = counts[i] * delta;
      grid.push_back(std::move(pi));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[pos] = c;
      rec(pos + 1, remaining - c);
    }
  };
  rec(0, denominator);
  return grid;
}

LevinResult levin_oracle(const BeliefRelation& q, double C, int outcomes, int denominator,
                         double kappa, bool parallel) {
  const auto grid = belief_grid(outcomes, denominator);
  const double delta = 1.0 / static_cast<double>(denominator);
  const double bound = C + kappa * delta;
  const std::int64_t total = static_cast<std::int64_t>(grid.size());

  // one record per grid point: -1 unseen, 0 no payoff qualifies, 1 qualifies,
  // 2 precondition violated
  std::vector<int> status(grid.size(), -1);
  std::vector<int> chosen(grid.size(), -1);

  auto scan_point = [&](std::int64_t i) {
    const auto& pi = grid[i];
    const auto payoffs = q(pi);
    int verdict = 0, pick = -1;
    for (std::size_t j = 0; j < payoffs.size(); ++j) {
      const auto& g = payoffs[j];
      double mean = 0.0, worst = -std::numeric_limits<double>::infinity();
      for (int w = 0; w < outcomes; ++w) {
        mean += pi[w] * g[w];
        worst = std::max(worst, g[w]);
      }
      if (mean > C + 1e-9 * std::max(1.0, std::fabs(C))) {
        verdict = 2;
        pick = static_cast<int>(j);
        break;
      }
      if (verdict == 0 && worst <= bound) {
        verdict = 1;
        pick = static_cast<int>(j);
      }
    }
    status[i] = verdict;
    chosen[i] = pick;
  };

#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) scan_point(i);
  } else
#endif
  {
    (void)parallel;
    for (std::int64_t i = 0; i < total; ++i) scan_point(i);
  }

  for (std::int64_t i = 0; i < total; ++i) {
    if (status[i] == 2)
      throw SupermartingalePropertyError(
          "levin_oracle: mean payoff exceeds C at a grid belief; the relation is not a "
          "supermartingale");
  }
  for (std::int64_t i = 0; i < total; ++i) {
    if (status[i] != 1) continue;
    const auto payoffs = q(grid[i]);
    LevinResult r;
    r.pi = grid[i];
    r.payoff = payoffs[static_cast<std::size_t>(chosen[i])];
    r.max_payoff = *std::max_element(r.payoff.begin(), r.payoff.end());
    r.bound = bound;
    r.grid_points_scanned = grid.size();
    return r;
  }
  throw GridTooCoarseError("levin_oracle: no grid belief defends every outcome; refine the grid");
}

}  // namespace dfa
