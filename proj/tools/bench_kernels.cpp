// Benchmark of the vertex-scan and walk kernels: the serial reference paths
// against the factorized/OpenMP ones, on synthetic evaluator states.

#include <chrono>
#include <cstdio>
#include <vector>

#include "dfa/kernels.hpp"
#include "dfa/rng.hpp"
#include "dfa/solver.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

dfa::MixtureEvaluator random_expert_state(int n, int eta_nodes, std::int64_t steps,
                                          std::uint64_t seed) {
  auto ev = dfa::MixtureEvaluator::experts(dfa::build_grid_mu(eta_nodes),
                                           std::vector<double>(n, 1.0 / n), n);
  dfa::Rng rng(seed);
  const dfa::SimplexVector uniform = dfa::uniform_simplex(n);
  std::vector<double> omega(n);
  for (std::int64_t t = 0; t < steps; ++t) {
    for (int j = 0; j < n; ++j) omega[j] = rng.uniform01();
    ev.advance(uniform.weights, omega);
  }
  return ev;
}

template <typename F>
double time_op(int iters, F&& op) {
  const auto start = Clock::now();
  for (int i = 0; i < iters; ++i) op(i);
  return seconds_since(start) / iters;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

  // exact vertex scans
  for (int n : {8, 10, 12}) {
    const auto ev = random_expert_state(n, 16, 50, 42);
    const auto tables = dfa::MixtureTables::build(ev);
    const dfa::StepFunction f(&tables, dfa::uniform_simplex(n).weights);
    const int iters = n <= 10 ? 50 : 10;
    const double t_ref = time_op(std::max(1, iters / 10), [&](int) {
      (void)dfa::sup_vertices_reference(ev, dfa::uniform_simplex(n).weights);
    });
    const double t_serial = time_op(iters, [&](int) { (void)dfa::sup_vertices_serial(f); });
    const double t_parallel = time_op(iters, [&](int) { (void)dfa::sup_vertices_parallel(f); });
    std::printf(
        "exact sup  N=%-3d  reference %9.3f ms   factorized %9.3f ms (x%5.1f)   "
        "parallel %9.3f ms (x%4.2f over serial)\n",
        n, t_ref * 1e3, t_serial * 1e3, t_ref / t_serial, t_parallel * 1e3,
        t_serial / t_parallel);
  }

  // heuristic walks on a large pool
  for (int n : {50, 100}) {
    const auto ev = random_expert_state(n, 4, 50, 43);
    const auto tables = dfa::MixtureTables::build(ev);
    const dfa::StepFunction f(&tables, dfa::uniform_simplex(n).weights);
    const int restarts = 16;
    const double t_serial =
        time_op(20, [&](int i) { (void)dfa::sup_heuristic(f, restarts, 1000 + i, false); });
    const double t_parallel =
        time_op(20, [&](int i) { (void)dfa::sup_heuristic(f, restarts, 1000 + i, true); });
    std::printf("walks      N=%-3d  serial %12.3f ms   parallel %9.3f ms (x%4.2f)\n", n,
                t_serial * 1e3, t_parallel * 1e3, t_serial / t_parallel);
  }

  // whole defensive steps
  for (int n : {8, 10}) {
    const auto ev = random_expert_state(n, 16, 100, 44);
    dfa::SolverConfig cfg;
    const double t_solve = time_op(20, [&](int i) {
      (void)dfa::solve_defensive_step(ev, ev.threshold_log(), cfg, 7u * i);
    });
    std::printf("solve      N=%-3d  %12.3f ms per step\n", n, t_solve * 1e3);
  }
  return 0;
}
