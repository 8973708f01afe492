#include "dfa/bisection.hpp"

#include <algorithm>
#include <cmath>

namespace dfa {

double twoloss_p(double x) {
  if (x < 0.5) return x;
  if (x <= 1.5) return 0.5;
  return x - 1.0;
}

double twoloss_ptilde(double x) { return std::min(1.0, std::max(x - 0.5, 0.0)); }

BisectionResult bisection_binary(const std::function<double(double, int)>& g, double tol_x,
                                 double lipschitz) {
  const double g00 = g(0.0, 0);
  const double g21 = g(2.0, 1);
  const double endpoint_tol = 1e-9;
  if (g00 > endpoint_tol)
    throw EndpointViolationError("bisection_binary: g(0,0) > 0, evaluator bug");
  if (g21 > endpoint_tol)
    throw EndpointViolationError("bisection_binary: g(2,1) > 0, evaluator bug");

  const double tol_f = lipschitz * tol_x + 1e-12;

  BisectionResult r;
  const double g01 = g(0.0, 1);
  if (g01 <= 0.0) {
    r.x0 = 0.0;
    r.g_at_0 = g00;
    r.g_at_1 = g01;
    r.tol_f = tol_f;
    return r;
  }
  const double g20 = g(2.0, 0);
  if (g20 <= 0.0) {
    r.x0 = 2.0;
    r.g_at_0 = g20;
    r.g_at_1 = g21;
    r.tol_f = tol_f;
    return r;
  }

  // phi(0) = g(0,1) - g(0,0) > 0 and phi(2) = g(2,1) - g(2,0) < 0
  auto phi = [&](double x) { return g(x, 1) - g(x, 0); };
  double lo = 0.0, hi = 2.0;
  int iters = 0;
  while (hi - lo > tol_x) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    ++iters;
    if (iters > 200) break;
  }
  const double x0 = 0.5 * (lo + hi);
  r.x0 = x0;
  r.g_at_0 = g(x0, 0);
  r.g_at_1 = g(x0, 1);
  r.tol_f = tol_f;
  r.iterations = iters;
  return r;
}

}  // namespace dfa
