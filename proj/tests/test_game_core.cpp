#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dfa/game.hpp"
#include "dfa/ledgers.hpp"
#include "dfa/rng.hpp"
#include "dfa/rules.hpp"
#include "dfa/simplex.hpp"

using namespace dfa;

TEST_CASE("dtol loss is the dot product") {
  CHECK(dtol_loss(make_simplex({1.0, 0.0}), std::vector<double>{0.3, 0.9}) == doctest::Approx(0.3));
  CHECK(dtol_loss(make_simplex({0.5, 0.5}), std::vector<double>{0.0, 1.0}) == doctest::Approx(0.5));
  CHECK(dtol_loss(make_simplex({0.3, 0.7}), std::vector<double>{1.0, 0.0}) == doctest::Approx(0.3));
  CHECK_THROWS_AS(dtol_loss(make_simplex({1.0}), std::vector<double>{0.1, 0.2}),
                  std::invalid_argument);
}

TEST_CASE("simplex validation") {
  CHECK(is_simplex(std::vector<double>{0.5, 0.5}));
  CHECK_FALSE(is_simplex(std::vector<double>{0.5, 0.6}));
  CHECK_FALSE(is_simplex(std::vector<double>{-0.1, 1.1}));
  CHECK_THROWS_AS(make_simplex({0.2, 0.2}), std::invalid_argument);
}

TEST_CASE("ledger updates accumulate") {
  LossLedger ledger = make_uniform_ledger(2);
  ledger = update_ledger(ledger, 0.3, std::vector<double>{0.3, 0.9});
  CHECK(ledger.t == 1);
  CHECK(ledger.learner_cum == doctest::Approx(0.3));
  CHECK(ledger.expert_cum[0] == doctest::Approx(0.3));
  CHECK(ledger.expert_cum[1] == doctest::Approx(0.9));

  LossLedger zero = update_ledger(ledger, 0.0, std::vector<double>{0.0, 0.0});
  CHECK(zero.t == 2);
  CHECK(zero.learner_cum == ledger.learner_cum);
  CHECK(zero.expert_cum == ledger.expert_cum);

  LossLedger twice = make_uniform_ledger(2);
  twice = update_ledger(twice, 0.5, std::vector<double>{0.5, 0.5});
  twice = update_ledger(twice, 0.5, std::vector<double>{0.5, 0.5});
  CHECK(twice.learner_cum == doctest::Approx(1.0));

  CHECK_THROWS_AS(update_ledger(ledger, 1.5, std::vector<double>{0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(update_ledger(ledger, 0.5, std::vector<double>{0.0, -0.2}),
                  std::invalid_argument);
}

namespace {

LossLedger ledger_with(std::vector<double> losses, std::vector<double> weights) {
  LossLedger ledger = make_ledger(std::move(weights));
  ledger.expert_cum = std::move(losses);
  ledger.t = 10;
  ledger.learner_cum = 5.0;
  return ledger;
}

// independent oracle: scan every attained loss value in ascending order and
// return the first whose cumulative weight reaches eps
double quantile_by_scan(const LossLedger& ledger, double eps) {
  std::vector<double> values = ledger.expert_cum;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (double v : values) {
    double w = 0.0;
    for (std::size_t n = 0; n < ledger.num_experts(); ++n)
      if (ledger.expert_cum[n] <= v) w += ledger.expert_weights[n];
    if (w >= eps - 1e-12) return v;
  }
  return values.back();
}

}  // namespace

TEST_CASE("quantile loss follows the closed lower quantile rule") {
  const LossLedger l4 = ledger_with({1, 2, 3, 4}, {0.25, 0.25, 0.25, 0.25});
  CHECK(quantile_loss(l4, 0.5).quantile_loss == doctest::Approx(2.0));
  CHECK(quantile_loss(l4, 0.25).quantile_loss == doctest::Approx(1.0));

  const LossLedger l2 = ledger_with({5, 1}, {0.9, 0.1});
  CHECK(quantile_loss(l2, 0.05).quantile_loss == doctest::Approx(1.0));

  CHECK_THROWS_AS(quantile_loss(l2, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(quantile_loss(l2, 0.0), std::invalid_argument);
}

TEST_CASE("quantile loss properties on random ledgers") {
  Rng rng(991);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + rng.uniform_int(12);
    std::vector<double> losses(n);
    for (double& v : losses) v = std::floor(rng.uniform01() * 8.0);
    const LossLedger ledger = ledger_with(losses, std::vector<double>(n, 1.0 / n));

    // best-expert recovery at eps = 1/N
    CHECK(quantile_loss(ledger, 1.0 / n).quantile_loss ==
          doctest::Approx(*std::min_element(losses.begin(), losses.end())));

    // monotone nondecreasing in eps, and matches the independent scan
    double prev = -1.0;
    for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
      const double q = quantile_loss(ledger, eps).quantile_loss;
      CHECK(q == doctest::Approx(quantile_by_scan(ledger, eps)));
      CHECK(q >= prev);
      prev = q;
    }

    // duplicating every expert into m equal shares changes nothing
    const int m = 1 + rng.uniform_int(4);
    std::vector<double> dup_losses, dup_weights;
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < m; ++c) {
        dup_losses.push_back(losses[i]);
        dup_weights.push_back(1.0 / n / m);
      }
    LossLedger dup = make_ledger(dup_weights);
    dup.expert_cum = dup_losses;
    dup.t = ledger.t;
    dup.learner_cum = ledger.learner_cum;
    for (double eps : {0.25, 0.5, 1.0}) {
      CHECK(quantile_loss(dup, eps).quantile_loss ==
            doctest::Approx(quantile_loss(ledger, eps).quantile_loss));
      CHECK(quantile_loss(dup, eps).quantile_regret ==
            doctest::Approx(quantile_loss(ledger, eps).quantile_regret));
    }
  }
}

TEST_CASE("u-mixture value and divergence") {
  LossLedger ledger = ledger_with({1, 2}, {0.5, 0.5});
  auto [mix, div] = u_mixture_value(ledger, make_simplex({0.5, 0.5}));
  CHECK(mix == doctest::Approx(1.5));
  CHECK(div == doctest::Approx(0.0));

  // point mass against uniform weights over N
  const int n = 5;
  LossLedger l5 = ledger_with({1, 2, 3, 4, 5}, std::vector<double>(n, 1.0 / n));
  std::vector<double> point(n, 0.0);
  point[2] = 1.0;
  auto [mix5, div5] = u_mixture_value(l5, make_simplex(point));
  CHECK(mix5 == doctest::Approx(3.0));
  CHECK(div5 == doctest::Approx(std::log(5.0)));

  // half-half over a 4-expert quarter-weight pool
  LossLedger l4 = ledger_with({1, 2, 3, 4}, {0.25, 0.25, 0.25, 0.25});
  auto [mix4, div4] = u_mixture_value(l4, make_simplex({0.5, 0.5, 0.0, 0.0}));
  CHECK(div4 == doctest::Approx(std::log(2.0)));
  (void)mix4;

  // sub-unit total weight keeps the divergence nonnegative
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + rng.uniform_int(6);
    std::vector<double> w(k), u(k);
    double ws = 0.0, us = 0.0;
    for (int i = 0; i < k; ++i) {
      w[i] = rng.uniform(0.01, 1.0);
      u[i] = rng.uniform(0.0, 1.0);
      ws += w[i];
      us += u[i];
    }
    const double scale = rng.uniform(0.2, 1.0);  // total weight <= 1
    for (int i = 0; i < k; ++i) {
      w[i] *= scale / ws;
      u[i] /= us;
    }
    LossLedger lr = make_ledger(w);
    lr.expert_cum.assign(k, 0.0);
    auto [m2, d2] = u_mixture_value(lr, make_simplex(u));
    (void)m2;
    CHECK(d2 >= -1e-12);
  }
}

TEST_CASE("rule validation reports the first violated constraint") {
  CHECK_FALSE(rule_violation(StochMatrix::identity(2), 1.0).has_value());
  StochMatrix half{2, {0.5, 0.5, 0.5, 0.5}};
  CHECK_FALSE(rule_violation(half, 0.3).has_value());

  StochMatrix bad{2, {1.0, 0.0, 0.1, 1.0}};
  const auto msg = rule_violation(bad, 1.0);
  REQUIRE(msg.has_value());
  CHECK(msg->find("column 0") != std::string::npos);

  CHECK(rule_violation(StochMatrix::identity(2), 1.5).has_value());
  CHECK_THROWS_AS(validate_rule(bad, 1.0), std::invalid_argument);
}

TEST_CASE("one-step rule regret") {
  const SimplexVector gamma = make_simplex({0.3, 0.7});
  const std::vector<double> omega = {0.0, 1.0};

  CHECK(rule_regret_step(gamma, omega, StochMatrix::identity(2), 1.0) == doctest::Approx(0.0));
  CHECK(rule_regret_step(gamma, omega, StochMatrix::swap(2, 0, 1), 0.5) == doctest::Approx(0.2));
  CHECK(rule_regret_step(gamma, omega, StochMatrix::swap(2, 0, 1), 0.0) == doctest::Approx(0.0));

  // the constant-action rule recovers the plain per-step regret to that action
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + rng.uniform_int(5);
    std::vector<double> g(n), w(n);
    double gs = 0.0;
    for (int i = 0; i < n; ++i) {
      g[i] = rng.uniform01() + 1e-3;
      gs += g[i];
      w[i] = rng.uniform01();
    }
    for (double& v : g) v /= gs;
    const SimplexVector dec = make_simplex(g);
    const int a = rng.uniform_int(n);
    const double sel = rng.uniform01();
    const double got = rule_regret_step(dec, w, StochMatrix::constant_action(n, a), sel);
    CHECK(got == doctest::Approx(sel * (dot(dec.weights, w) - w[a])).epsilon(1e-12));
    CHECK(got >= -1.0 - 1e-12);
    CHECK(got <= 1.0 + 1e-12);
  }
}

TEST_CASE("decision substitution for convex binary games") {
  const GameDescriptor dtol = GameDescriptor::dtol(2);
  const SimplexVector agg = make_simplex({0.5, 0.5});
  CHECK(substitute_decision_dtol(dtol, agg).weights == agg.weights);

  const GameDescriptor square =
      GameDescriptor::binary_convex([](double x, int w) { return (x - w) * (x - w); });
  const std::vector<double> experts = {0.0, 1.0};
  const double pooled = substitute_decision_binary(square, experts, agg);
  CHECK(pooled == doctest::Approx(0.5));
  for (int w : {0, 1}) {
    const double pooled_loss = square.loss(pooled, w);
    const double mix_loss = 0.5 * square.loss(0.0, w) + 0.5 * square.loss(1.0, w);
    CHECK(pooled_loss <= mix_loss + 1e-12);
  }

  const double single = substitute_decision_binary(square, std::vector<double>{0.7},
                                                   make_simplex({1.0}));
  CHECK(single == doctest::Approx(0.7));
}
