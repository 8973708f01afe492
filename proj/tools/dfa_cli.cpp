#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dfa/bounds.hpp"
#include "dfa/harness.hpp"
#include "dfa/levin.hpp"
#include "dfa/mixture.hpp"
#include "dfa/rng.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& preset, const std::string& out_dir) {
  dfa::RunConfig cfg;
  if (!preset.empty()) {
    auto found = dfa::find_preset(preset);
    if (!found) {
      std::cerr << "unknown preset: " << preset << "\n";
      return 2;
    }
    cfg = *found;
  } else if (!config_path.empty()) {
    cfg = dfa::load_config(config_path);
  } else {
    std::cerr << "run: provide --config or --preset\n";
    return 2;
  }
  std::filesystem::create_directories(out_dir);
  const dfa::RunResult result = dfa::run_experiment(cfg);
  const std::string stem = cfg.name.empty() ? "run" : cfg.name;
  const std::string trace_path = out_dir + "/" + stem + ".csv";
  const std::string summary_path = out_dir + "/" + stem + ".json";
  dfa::write_trace_csv(result, trace_path);
  dfa::write_summary_json(result, summary_path);
  std::cout << "trace:   " << trace_path << "\n";
  std::cout << "summary: " << summary_path << "\n";
  std::printf("final learner loss %.6f over %zu steps; max f/C-1 = %.3e\n",
              result.summary.final_learner_cum, result.rows.size(),
              result.summary.max_f_over_threshold);
  for (std::size_t i = 0; i < result.summary.epsilon_grid.size(); ++i)
    std::printf("  eps=%-8g regret %10.4f   bound %10.4f   slack %10.4f\n",
                result.summary.epsilon_grid[i], result.summary.final_reps[i],
                result.summary.final_bound[i],
                result.summary.final_bound[i] - result.summary.final_reps[i]);
  return 0;
}

int cmd_bounds(std::int64_t T, int N, const std::vector<double>& eps_list, double delta) {
  std::printf("%-14s %-10s %-14s %s\n", "bound", "eps", "value", "note");
  for (double eps : eps_list) {
    dfa::BoundInputs in;
    in.T = T;
    in.N = N;
    in.epsilon = eps;
    in.delta = delta;
    for (const auto& e : dfa::compute_bounds(in))
      std::printf("%-14s %-10g %-14.6f %s\n", e.name.c_str(), eps, e.value, e.note.c_str());
  }
  return 0;
}

int cmd_verify(const std::string& trace_path) {
  const dfa::VerifyReport report = dfa::verify_trace_file(trace_path);
  if (report.ok) {
    std::cout << "trace clean: " << trace_path << "\n";
    return 0;
  }
  std::cout << "violations in " << trace_path << ":\n";
  for (const auto& v : report.violations) std::cout << "  " << v << "\n";
  return 1;
}

// Small demonstration of the belief-search oracle: a quadrature mixture over a
// square-loss game with a random short history; the oracle must locate a
// belief whose payoff defends every outcome.
int cmd_oracle(int outcomes, double grid_step, std::uint64_t seed) {
  const int denominator = std::max(1, static_cast<int>(std::llround(1.0 / grid_step)));
  dfa::Rng rng(seed);

  std::vector<double> values(outcomes);
  for (int w = 0; w < outcomes; ++w)
    values[w] = outcomes > 1 ? static_cast<double>(w) / (outcomes - 1) : 0.5;
  const dfa::ScalarConvexGame game = dfa::square_loss_game(values);

  const int experts = 3;
  const dfa::EtaGrid grid = dfa::build_grid_mu(8);
  std::vector<double> ref(experts);
  std::vector<double> acc(experts);
  for (int n = 0; n < experts; ++n) {
    ref[n] = rng.uniform01();
    acc[n] = rng.uniform(-0.5, 0.5);
  }

  double mass = 0.0;
  for (int n = 0; n < experts; ++n)
    for (std::size_t k = 0; k < grid.size(); ++k)
      mass += std::exp(grid.log_weight[k]) / experts * std::exp(acc[n]);

  auto mixture = [&](double x, int w) {
    double v = 0.0;
    for (int n = 0; n < experts; ++n)
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double eta = grid.node[k];
        const double d = game.loss(x, values[w]) - game.loss(ref[n], values[w]);
        v += std::exp(grid.log_weight[k]) / experts *
             std::exp(acc[n] + eta * d - 0.5 * eta * eta);
      }
    return v;
  };

  dfa::BeliefRelation q = [&](std::span<const double> pi) {
    const double x = game.argmin_decision(pi);
    std::vector<double> g(outcomes);
    for (int w = 0; w < outcomes; ++w) g[w] = mixture(x, w);
    return std::vector<std::vector<double>>{g};
  };

  // Lipschitz modulus: |df/dx| <= sum of term mass * eta * 2e^eta; belief-to-
  // decision map is 1-Lipschitz in L1, grid rounding moves mass by <= #outcomes*delta
  double lip = 0.0;
  for (int n = 0; n < experts; ++n)
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double eta = grid.node[k];
      lip += std::exp(grid.log_weight[k]) / experts * std::exp(acc[n]) * eta * 2.0 *
             std::exp(eta);
    }
  const double kappa = lip * 2.0 * outcomes;

  try {
    const dfa::LevinResult res = dfa::levin_oracle(q, mass, outcomes, denominator, kappa);
    std::printf("scanned %zu beliefs at step 1/%d\n", res.grid_points_scanned, denominator);
    std::printf("defending belief: (");
    for (int w = 0; w < outcomes; ++w) std::printf("%s%.6f", w ? ", " : "", res.pi[w]);
    std::printf(")\n");
    std::printf("max payoff %.9f <= C + kappa*delta = %.9f (C = %.9f)\n", res.max_payoff,
                res.bound, mass);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "oracle failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"defensive forecasting learners with quantile regret certificates"};
  app.require_subcommand(1);

  std::string config_path, preset, out_dir = "out", trace_path;
  std::int64_t T = 10000;
  int N = 8;
  std::vector<double> eps_list = {0.1};
  double delta = 0.25 - 1e-9;
  int outcomes = 3;
  double grid_step = 1.0 / 64.0;
  std::uint64_t seed = 1;

  CLI::App* run = app.add_subcommand("run", "run an experiment and emit trace + summary");
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--preset", preset, "named preset (see `presets`)");
  run->add_option("--out", out_dir, "output directory")->capture_default_str();

  CLI::App* bounds = app.add_subcommand("bounds", "print the closed-form bound table");
  bounds->add_option("--T", T, "horizon")->capture_default_str();
  bounds->add_option("--N", N, "pool size")->capture_default_str();
  bounds->add_option("--eps", eps_list, "quantile levels")->capture_default_str();
  bounds->add_option("--delta", delta, "free parameter of the explicit bounds")
      ->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "re-check an emitted trace offline");
  verify->add_option("--trace", trace_path, "trace CSV path")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "belief-search oracle demo on a small game");
  oracle->add_option("--outcomes", outcomes, "outcome count")->capture_default_str();
  oracle->add_option("--grid", grid_step, "belief grid step")->capture_default_str();
  oracle->add_option("--seed", seed, "random seed")->capture_default_str();

  CLI::App* presets = app.add_subcommand("presets", "list shipped experiment presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, preset, out_dir);
    if (bounds->parsed()) return cmd_bounds(T, N, eps_list, delta);
    if (verify->parsed()) return cmd_verify(trace_path);
    if (oracle->parsed()) return cmd_oracle(outcomes, grid_step, seed);
    if (presets->parsed()) {
      for (const auto& p : dfa::shipped_presets())
        std::printf("%-24s %-14s T=%-6lld N=%d\n", p.name.c_str(), p.algorithm.c_str(),
                    static_cast<long long>(p.T), p.N);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
