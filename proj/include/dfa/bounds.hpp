#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dfa {

struct BoundInputs {
  std::int64_t T = 0;
  int N = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  int K = 0;  // rule count, used in place of 1/epsilon for rule bounds
};

// Closed-form regret bounds. Names follow the external trace schema (the
// bound17 column) and the CLI table; each is a standalone calculator with its
// own domain checks.
double bound13(std::int64_t T, double epsilon, double delta);  // T >= 16, delta in (0, 1/4)
double bound14(std::int64_t T, double epsilon, double kappa = 0.0);  // asymptotic proxy, T >= 16
double bound17(std::int64_t T, double epsilon);
double bound19(std::int64_t T, int N);
double bound20(std::int64_t T, double epsilon, int N, double delta);  // delta in (0, 1/2]
// weighted-mixture regret term: 2 sqrt(T * divergence) + 7 sqrt(T)
double mixture_regret_term(std::int64_t T, double divergence);

struct BoundTableEntry {
  std::string name;
  double value;
  std::string note;
};

// Every bound evaluable from the inputs, in a fixed order for printing.
std::vector<BoundTableEntry> compute_bounds(const BoundInputs& in, double kappa14 = 0.0);

}  // namespace dfa
