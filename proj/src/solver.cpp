#include "dfa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dfa {

namespace {

SimplexVector warm_start_expert(const MixtureTables& t) {
  const std::size_t K = t.num_nodes;
  const std::size_t N = t.num_refs;
  // blend coefficients: log beta_k = log eta_k + block_const_k + eta_k^2/2 + log mbar_k
  std::vector<double> log_beta(K);
  bool any_positive_eta = false;
  for (std::size_t k = 0; k < K; ++k) {
    if (t.eta[k] > 0.0) any_positive_eta = true;
    const double le = t.eta[k] > 0.0 ? std::log(t.eta[k]) : -std::numeric_limits<double>::infinity();
    log_beta[k] = le + t.block_const[k] + 0.5 * t.eta[k] * t.eta[k] + std::log(t.mbar[k]);
  }
  if (!any_positive_eta) {
    // degenerate all-zero grid: every decision is equally defensive
    for (std::size_t k = 0; k < K; ++k)
      log_beta[k] = t.block_const[k] + 0.5 * t.eta[k] * t.eta[k] + std::log(t.mbar[k]);
  }
  const double norm = log_sum_exp(log_beta);
  std::vector<double> gamma(N, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    const double beta = std::exp(log_beta[k] - norm);
    if (beta == 0.0) continue;
    for (std::size_t n = 0; n < N; ++n)
      gamma[n] += beta * t.abar[k * N + n] / t.mbar[k];
  }
  return project_to_simplex(gamma);
}

SimplexVector warm_start_rule(const MixtureTables& t) {
  const std::size_t K = t.num_nodes;
  const std::size_t R = t.num_refs;
  const int N = t.num_actions;
  // weight each awake rule by its mass * eta, then look for a fixed point of
  // the blended matrix: at such gamma the blended one-step regret vanishes
  std::vector<double> u(R, 0.0);
  double usum = 0.0;
  for (std::size_t n = 0; n < R; ++n) {
    if (t.selections[n] == 0.0) continue;
    std::vector<double> xs(K);
    for (std::size_t k = 0; k < K; ++k)
      xs[k] = t.term_mass[n * K + k] + (t.eta[k] > 0.0 ? std::log(t.eta[k]) : -1e300);
    u[n] = std::exp(log_sum_exp(xs)) * t.selections[n];
    usum += u[n];
  }
  std::vector<double> gamma(N, 1.0 / N);
  if (usum <= 0.0) return SimplexVector{std::move(gamma)};  // every rule asleep
  for (auto& v : u) v /= usum;
  // power iteration on A = sum_n u_n M_n (column-stochastic)
  for (int it = 0; it < 200; ++it) {
    std::vector<double> next(N, 0.0);
    for (std::size_t n = 0; n < R; ++n) {
      if (u[n] == 0.0) continue;
      const std::vector<double> moved = t.matrices[n].apply(gamma);
      for (int j = 0; j < N; ++j) next[j] += u[n] * moved[j];
    }
    double delta = 0.0, sum = 0.0;
    for (int j = 0; j < N; ++j) sum += next[j];
    for (int j = 0; j < N; ++j) {
      next[j] /= sum;
      delta = std::max(delta, std::fabs(next[j] - gamma[j]));
    }
    gamma.swap(next);
    if (delta < 1e-14) break;
  }
  return project_to_simplex(gamma);
}

SupResult run_sup(const StepFunction& f, const SolverConfig& cfg, std::uint64_t sup_seed,
                  bool& exact_used) {
  const bool exact = !cfg.force_heuristic && f.dim() <= cfg.vertex_exact_max_n;
  exact_used = exact;
  if (exact) return cfg.parallel ? sup_vertices_parallel(f) : sup_vertices_serial(f);
  return sup_heuristic(f, cfg.heuristic_restarts, sup_seed, cfg.parallel);
}

}  // namespace

SimplexVector warm_start_decision(const MixtureTables& tables) {
  return tables.kind == RefKind::Expert ? warm_start_expert(tables) : warm_start_rule(tables);
}

SupResult sup_over_outcomes(const MixtureEvaluator& ev, const SimplexVector& gamma,
                            const SolverConfig& cfg, std::uint64_t sup_seed) {
  const MixtureTables tables = MixtureTables::build(ev);
  StepFunction f(&tables, gamma.weights);
  bool exact_used = false;
  return run_sup(f, cfg, sup_seed, exact_used);
}

SolverResult solve_defensive_step(const MixtureEvaluator& ev, double threshold_log,
                                  const SolverConfig& cfg, std::uint64_t step_seed) {
  const MixtureTables tables = MixtureTables::build(ev);

  // the threshold must be the evaluator's own mixture mass
  const double own_thr = ev.threshold_log();
  if (!(std::fabs(own_thr - threshold_log) <=
        cfg.feasibility_slack * std::max(1.0, std::fabs(threshold_log)) + 1e-9))
    throw std::invalid_argument("solve_defensive_step: threshold disagrees with evaluator mass");

  const double accept_log = threshold_log + std::log1p(cfg.feasibility_slack);

  SolverResult res;
  res.threshold_log = threshold_log;

  std::vector<double> gamma = warm_start_decision(tables).weights;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    StepFunction f(&tables, gamma);
    bool exact_used = false;
    SupResult sup = run_sup(f, cfg, step_seed + static_cast<std::uint64_t>(it) * 7919u, exact_used);
    if (sup.log_value <= accept_log) {
      res.decision = SimplexVector{std::move(gamma)};
      res.achieved_sup_log = sup.log_value;
      res.mode = exact_used ? SupMode::ExactVertices : SupMode::Heuristic;
      res.iterations = it;
      res.warm_start_accepted = (it == 0);
      if (exact_used && f.dim() <= 16) {
        const std::uint64_t count = std::uint64_t{1} << f.dim();
        res.certificate.reserve(count);
        for (std::uint64_t v = 0; v < count; ++v) res.certificate.emplace_back(v, f.log_at_vertex(v));
      } else {
        res.certificate.emplace_back(sup.vertex_mask, sup.log_value);
      }
      return res;
    }
    // Polyak step on the convex function log sup f with known attainable
    // target: distance to the feasible set decreases monotonically
    const std::vector<double> grad = f.grad_log_gamma(sup.witness);
    double gnorm2 = 0.0;
    for (double g : grad) gnorm2 += g * g;
    if (gnorm2 <= 1e-300) {
      // flat direction yet infeasible: only possible within tolerance noise
      break;
    }
    const double step = (sup.log_value - threshold_log) / gnorm2;
    std::vector<double> moved(gamma.size());
    for (std::size_t j = 0; j < gamma.size(); ++j) moved[j] = gamma[j] - step * grad[j];
    gamma = project_to_simplex(moved).weights;
  }
  throw NotFeasibleError("defensive step: no feasible decision within iteration budget");
}

}  // namespace dfa
