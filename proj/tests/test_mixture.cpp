#include <doctest.h>

#include <cmath>
#include <vector>

#include "dfa/mixture.hpp"
#include "dfa/rng.hpp"

using namespace dfa;

namespace {

EtaGrid single_eta(double eta) {
  EtaGrid g;
  g.kind = GridKind::FixedHorizon;
  g.node = {eta};
  g.log_weight = {0.0};
  return g;
}

// direct linear-domain evaluation, the reference the log path is tested against
double eval_linear(const MixtureEvaluator& ev, std::span<const double> gamma,
                   std::span<const double> omega) {
  double total = 0.0;
  for (std::size_t n = 0; n < ev.num_refs(); ++n) {
    const double d = ev.increment(n, gamma, omega);
    for (std::size_t k = 0; k < ev.grid().size(); ++k)
      total += std::exp(ev.log_ref_weights()[n]) * std::exp(ev.grid().log_weight[k]) *
               std::exp(ev.acc_exponent(n, k)) *
               std::exp(ev.node_eta(k) * d - ev.step_correction(n, k));
  }
  return total;
}

std::vector<double> random_outcome(Rng& rng, int n) {
  std::vector<double> w(n);
  for (double& v : w) v = rng.uniform01();
  return w;
}

std::vector<double> random_decision(Rng& rng, int n) {
  std::vector<double> g(n);
  double s = 0.0;
  for (double& v : g) {
    v = rng.uniform01() + 1e-6;
    s += v;
  }
  for (double& v : g) v /= s;
  return g;
}

}  // namespace

TEST_CASE("mixture value, frozen two-term example") {
  auto ev = MixtureEvaluator::experts(single_eta(1.0), {0.5, 0.5}, 2);
  const std::vector<double> gamma = {0.5, 0.5};
  const std::vector<double> omega = {0.0, 1.0};
  const double f = std::exp(ev.eval_log(gamma, omega));
  CHECK(f == doctest::Approx(0.5 * (1.0 + std::exp(-1.0))).epsilon(1e-12));
  CHECK(f == doctest::Approx(0.68394).epsilon(1e-5));
}

TEST_CASE("all-zero learning rate gives the total mass") {
  auto ev = MixtureEvaluator::experts(single_eta(0.0), {0.25, 0.25, 0.25, 0.25}, 4);
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto gamma = random_decision(rng, 4);
    const auto omega = random_outcome(rng, 4);
    CHECK(ev.eval_log(gamma, omega) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("echoed losses keep every exponent at the correction only") {
  auto ev = MixtureEvaluator::experts(build_grid_mu(8), std::vector<double>(3, 1.0 / 3), 3);
  // every expert suffers exactly the learner's loss: constant outcome vectors
  const std::vector<double> gamma = {0.2, 0.3, 0.5};
  for (int t = 0; t < 5; ++t) {
    const std::vector<double> omega(3, 0.4);
    CHECK(std::exp(ev.eval_log(gamma, omega)) <= ev.grid().total_weight() + 1e-12);
    ev.advance(gamma, omega);
    for (double a : ev.accumulated_regret()) CHECK(a == doctest::Approx(0.0));
  }
}

TEST_CASE("threshold equals the previous realized value for decreasing kinds") {
  Rng rng(11);
  auto ev = MixtureEvaluator::experts(build_grid_mu(16), std::vector<double>(4, 0.25), 4);
  CHECK(ev.threshold_log() == doctest::Approx(0.0).epsilon(1e-12));
  for (int t = 0; t < 30; ++t) {
    const auto gamma = random_decision(rng, 4);
    const auto omega = random_outcome(rng, 4);
    const double realized = ev.eval_log(gamma, omega);
    ev.advance(gamma, omega);
    CHECK(ev.threshold_log() == doctest::Approx(realized).epsilon(1e-9));
  }
}

TEST_CASE("log-domain evaluation agrees with direct summation") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + rng.uniform_int(4);
    auto ev = MixtureEvaluator::experts(build_grid_mu(4 + rng.uniform_int(8)),
                                        std::vector<double>(n, 1.0 / n), n);
    for (int t = 0; t < 10; ++t) ev.advance(random_decision(rng, n), random_outcome(rng, n));
    for (int probe = 0; probe < 5; ++probe) {
      const auto gamma = random_decision(rng, n);
      const auto omega = random_outcome(rng, n);
      const double direct = eval_linear(ev, gamma, omega);
      CHECK(std::exp(ev.eval_log(gamma, omega)) == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("duplicating references leaves the mixture unchanged") {
  Rng rng(37);
  const int n = 3, m = 4;
  auto base = MixtureEvaluator::experts(build_grid_anytime(1, 4), std::vector<double>(n, 1.0 / n), n);
  auto dup = MixtureEvaluator::experts(build_grid_anytime(1, 4),
                                       std::vector<double>(n * m, 1.0 / (n * m)), n * m);
  for (int t = 0; t < 12; ++t) {
    const auto gamma = random_decision(rng, n);
    const auto omega = random_outcome(rng, n);
    std::vector<double> gamma_dup(n * m), omega_dup(n * m);
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < m; ++c) {
        gamma_dup[j * m + c] = gamma[j] / m;
        omega_dup[j * m + c] = omega[j];
      }
    CHECK(dup.eval_log(gamma_dup, omega_dup) ==
          doctest::Approx(base.eval_log(gamma, omega)).epsilon(1e-12));
    CHECK(dup.threshold_log() == doctest::Approx(base.threshold_log()).epsilon(1e-12));
    base.advance(gamma, omega);
    dup.advance(gamma_dup, omega_dup);
  }
}

TEST_CASE("state roll-forward") {
  auto ev = MixtureEvaluator::experts(build_grid_anytime(1, 3), {0.5, 0.5}, 2);
  // played (1,0) against losses (0,1): the trailing expert accumulates -1
  ev.advance(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0});
  CHECK(ev.accumulated_regret()[0] == doctest::Approx(0.0));
  CHECK(ev.accumulated_regret()[1] == doctest::Approx(-1.0));
  CHECK(ev.sqrt_sum() == doctest::Approx(1.0));

  // constant outcomes are a zero-increment step
  ev.advance(std::vector<double>{0.5, 0.5}, std::vector<double>{0.3, 0.3});
  CHECK(ev.accumulated_regret()[1] == doctest::Approx(-1.0));

  ev.advance(std::vector<double>{0.5, 0.5}, std::vector<double>{0.3, 0.3});
  const double before = ev.sqrt_sum();
  ev.advance(std::vector<double>{0.5, 0.5}, std::vector<double>{0.3, 0.3});  // step 4
  CHECK(ev.sqrt_sum() - before == doctest::Approx(0.5));

  // the accumulator always equals sum over recorded steps of 1/sqrt(s)
  double expect = 0.0;
  for (int s = 1; s <= ev.steps_done(); ++s) expect += 1.0 / std::sqrt(static_cast<double>(s));
  CHECK(ev.sqrt_sum() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("anytime threshold values") {
  // truncated three-node grid at the first step
  auto ev3 = MixtureEvaluator::experts(build_grid_anytime(1, 3), std::vector<double>(5, 0.2), 5);
  CHECK(ev3.threshold() == doctest::Approx(0.8274563330790918).epsilon(1e-9));

  // deep truncation approaches unit mass
  auto ev_big = MixtureEvaluator::experts(build_grid_anytime(1, 4000), {1.0}, 1);
  CHECK(ev_big.threshold() > 0.9997);
  CHECK(ev_big.threshold() <= 1.0 + 1e-12);

  // the concavity step of the induction: the next threshold never exceeds the
  // realized value raised to sqrt(T)/sqrt(T+1), whatever was played
  Rng rng(51);
  auto ev = MixtureEvaluator::experts(build_grid_anytime(1, 6), std::vector<double>(3, 1.0 / 3), 3);
  for (int t = 1; t <= 40; ++t) {
    const auto gamma = random_decision(rng, 3);
    const auto omega = random_outcome(rng, 3);
    const double realized = std::exp(ev.eval_log(gamma, omega));
    ev.advance(gamma, omega);
    const double alpha = std::sqrt(static_cast<double>(t)) / std::sqrt(static_cast<double>(t + 1));
    CHECK(ev.threshold() <= std::pow(realized, alpha) * (1.0 + 1e-12));
  }
}

TEST_CASE("rule references with constant-action matrices match expert references") {
  Rng rng(77);
  const int n = 3;
  auto expert = MixtureEvaluator::experts(build_grid_anytime(1, 4), std::vector<double>(n, 1.0 / n), n);
  auto rules = MixtureEvaluator::rules(build_grid_anytime(1, 4), std::vector<double>(n, 1.0 / n), n,
                                       /*awake_corrections=*/false);
  auto context = [&]() {
    std::vector<StochMatrix> mats;
    for (int a = 0; a < n; ++a) mats.push_back(StochMatrix::constant_action(n, a));
    rules.set_step_context(std::move(mats), std::vector<double>(n, 1.0));
  };
  for (int t = 0; t < 10; ++t) {
    const auto gamma = random_decision(rng, n);
    const auto omega = random_outcome(rng, n);
    context();
    CHECK(rules.eval_log(gamma, omega) == doctest::Approx(expert.eval_log(gamma, omega)).epsilon(1e-12));
    CHECK(rules.threshold_log() == doctest::Approx(expert.threshold_log()).epsilon(1e-12));
    expert.advance(gamma, omega);
    rules.advance(gamma, omega);
  }
}

TEST_CASE("asleep rules contribute constant mass") {
  const int n = 2;
  auto ev = MixtureEvaluator::rules(build_grid_mu(8), {0.5, 0.5}, n, /*awake_corrections=*/true);
  Rng rng(99);
  for (int t = 0; t < 6; ++t) {
    std::vector<StochMatrix> mats = {StochMatrix::swap(n, 0, 1), StochMatrix::swap(n, 0, 1)};
    ev.set_step_context(std::move(mats), {1.0, 0.0});  // the second rule never wakes
    ev.advance(random_decision(rng, n), random_outcome(rng, n));
  }
  CHECK(ev.accumulated_regret()[1] == 0.0);
  CHECK(ev.awake_sq()[1] == 0.0);
  CHECK(ev.awake_sq()[0] == doctest::Approx(6.0));
}
