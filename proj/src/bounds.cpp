#include "dfa/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace dfa {

namespace {
void check_eps(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0,1]");
}
double ln_inv(double epsilon) { return std::log(1.0 / epsilon); }
}  // namespace

double bound13(std::int64_t T, double epsilon, double delta) {
  check_eps(epsilon);
  if (T < 16) throw std::invalid_argument("bound13: T must be >= 16");
  if (!(delta > 0.0 && delta < 0.25)) throw std::invalid_argument("bound13: delta must lie in (0, 1/4)");
  const double t = static_cast<double>(T);
  const double radicand =
      t * ln_inv(epsilon) + 0.5 * t * std::log(1.0 / delta) + 2.0 * t * std::log(std::log(t));
  return 2.0 / std::sqrt(2.0 - delta) * std::sqrt(radicand) +
         std::max(4.0, 400.0 * ln_inv(epsilon));
}

double bound14(std::int64_t T, double epsilon, double kappa) {
  check_eps(epsilon);
  if (T < 16) throw std::invalid_argument("bound14: T must be >= 16");
  const double t = static_cast<double>(T);
  const double radicand =
      2.0 * t * ln_inv(epsilon) + 5.0 * t * std::log(std::log(t)) + kappa * ln_inv(epsilon);
  return (1.0 + 1.0 / std::log(t)) * std::sqrt(radicand);
}

double bound17(std::int64_t T, double epsilon) {
  check_eps(epsilon);
  if (T < 1) throw std::invalid_argument("bound17: T must be >= 1");
  const double t = static_cast<double>(T);
  return 2.0 * std::sqrt(t * ln_inv(epsilon)) + 7.0 * std::sqrt(t);
}

double bound19(std::int64_t T, int N) {
  if (T < 1) throw std::invalid_argument("bound19: T must be >= 1");
  if (N < 2) throw std::invalid_argument("bound19: N must be >= 2");
  const double t = static_cast<double>(T);
  const double ln_n = std::log(static_cast<double>(N));
  return std::sqrt(2.0 * t * ln_n) + std::sqrt(ln_n / 8.0);
}

double bound20(std::int64_t T, double epsilon, int N, double delta) {
  check_eps(epsilon);
  if (T < 1) throw std::invalid_argument("bound20: T must be >= 1");
  if (N < 2) throw std::invalid_argument("bound20: N must be >= 2");
  if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("bound20: delta must lie in (0, 1/2]");
  const double t = static_cast<double>(T);
  const double ln_n = std::log(static_cast<double>(N));
  const double inner = 3.0 * (1.0 + 50.0 * delta) * t +
                       (16.0 * ln_n * ln_n / delta) * (10.2 / (delta * delta) + ln_n);
  return std::sqrt((1.0 + ln_inv(epsilon)) * inner);
}

double mixture_regret_term(std::int64_t T, double divergence) {
  if (T < 1) throw std::invalid_argument("mixture_regret_term: T must be >= 1");
  if (divergence < 0.0) throw std::invalid_argument("mixture_regret_term: divergence must be >= 0");
  const double t = static_cast<double>(T);
  return 2.0 * std::sqrt(t * divergence) + 7.0 * std::sqrt(t);
}

std::vector<BoundTableEntry> compute_bounds(const BoundInputs& in, double kappa14) {
  std::vector<BoundTableEntry> out;
  if (in.T >= 1 && in.epsilon > 0.0)
    out.push_back({"bound17", bound17(in.T, in.epsilon), "anytime quantile"});
  if (in.T >= 1 && in.N >= 2) out.push_back({"bound19", bound19(in.T, in.N), "fixed pool, uniform in T"});
  if (in.T >= 16 && in.epsilon > 0.0 && in.delta > 0.0 && in.delta < 0.25)
    out.push_back({"bound13", bound13(in.T, in.epsilon, in.delta), "quantile, explicit constants"});
  if (in.T >= 16 && in.epsilon > 0.0)
    out.push_back({"bound14", bound14(in.T, in.epsilon, kappa14),
                   "asymptotic proxy (hidden additive term set to kappa)"});
  if (in.T >= 1 && in.epsilon > 0.0 && in.N >= 2 && in.delta > 0.0 && in.delta <= 0.5)
    out.push_back({"bound20", bound20(in.T, in.epsilon, in.N, in.delta), "comparison bound"});
  if (in.T >= 1 && in.epsilon > 0.0)
    out.push_back({"mixture_term", mixture_regret_term(in.T, std::log(1.0 / in.epsilon)),
                   "weighted-mixture term at divergence ln(1/eps)"});
  return out;
}

}  // namespace dfa
