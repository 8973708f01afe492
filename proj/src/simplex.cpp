#include "dfa/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dfa {

SimplexVector uniform_simplex(std::size_t n) {
  return SimplexVector{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

std::string simplex_violation(std::span<const double> w, double tol) {
  if (w.empty()) return "empty weight vector";
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i])) return "weight " + std::to_string(i) + " is not finite";
    if (w[i] < -tol || w[i] > 1.0 + tol)
      return "weight " + std::to_string(i) + " = " + std::to_string(w[i]) + " outside [0,1]";
    sum += w[i];
  }
  if (std::fabs(sum - 1.0) > tol * std::max<double>(1.0, static_cast<double>(w.size())))
    return "weights sum to " + std::to_string(sum);
  return {};
}

bool is_simplex(std::span<const double> w, double tol) { return simplex_violation(w, tol).empty(); }

SimplexVector make_simplex(std::vector<double> w) {
  if (auto msg = simplex_violation(w); !msg.empty()) throw std::invalid_argument("not a simplex vector: " + msg);
  return SimplexVector{std::move(w)};
}

SimplexVector project_to_simplex(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("project_to_simplex: empty input");
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<double>());
  // largest k with u_k - (sum_{i<=k} u_i - 1)/k > 0
  double cum = 0.0, tau = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cum += u[i];
    const double cand = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - cand > 0.0) {
      tau = cand;
      k = i + 1;
    }
  }
  (void)k;
  std::vector<double> x(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::max(0.0, v[i] - tau);
    sum += x[i];
  }
  // kill the last-ulp drift so downstream validation at 1e-12 never trips
  if (sum > 0.0)
    for (double& xi : x) xi /= sum;
  else
    x.assign(n, 1.0 / static_cast<double>(n));
  return SimplexVector{std::move(x)};
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace dfa
