#pragma once

#include <span>
#include <string>
#include <vector>

namespace dfa {

// Probability vector over a finite action set. Weights are non-negative and
// sum to 1 within kSimplexTol.
struct SimplexVector {
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }
};

inline constexpr double kSimplexTol = 1e-12;

SimplexVector uniform_simplex(std::size_t n);

// Empty string when valid, otherwise a description of the first violated
// constraint.
std::string simplex_violation(std::span<const double> w, double tol = kSimplexTol);

bool is_simplex(std::span<const double> w, double tol = kSimplexTol);

// Throws std::invalid_argument when w is not a valid probability vector.
SimplexVector make_simplex(std::vector<double> w);

// Euclidean projection onto the probability simplex.
SimplexVector project_to_simplex(std::span<const double> v);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace dfa
