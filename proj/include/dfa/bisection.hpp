#pragma once

#include <functional>
#include <stdexcept>

namespace dfa {

// Piecewise-linear parameterization of the admissible prediction pairs: as x
// runs over [0,2], (p(x), ptilde(x)) traces the whole constraint set with
// p(0) = ptilde(0) = 0 and p(2) = ptilde(2) = 1.
double twoloss_p(double x);
double twoloss_ptilde(double x);

struct BisectionResult {
  double x0 = 0.0;
  double g_at_0 = 0.0;  // g(x0, 0)
  double g_at_1 = 0.0;  // g(x0, 1)
  double tol_f = 0.0;   // derived function tolerance both values satisfy
  int iterations = 0;
};

class EndpointViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finds x0 in [0,2] with g(x0, 0) <= tol_f and g(x0, 1) <= tol_f, where tol_f
// is derived from the supplied Lipschitz bound of g in x and the interval
// tolerance tol_x. Requires the endpoint guarantees g(0,0) <= 0 and
// g(2,1) <= 0; when g(0,1) <= 0 or g(2,0) <= 0, the corresponding endpoint is
// returned outright. Otherwise bisects phi(x) = g(x,1) - g(x,0), which brackets
// a sign change on [0,2].
BisectionResult bisection_binary(const std::function<double(double x, int omega)>& g,
                                 double tol_x, double lipschitz);

}  // namespace dfa
