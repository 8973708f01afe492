#include "dfa/rules.hpp"

#include <cmath>
#include <stdexcept>

#include "dfa/game.hpp"

namespace dfa {

std::vector<double> StochMatrix::apply(std::span<const double> gamma) const {
  if (static_cast<int>(gamma.size()) != n) throw std::invalid_argument("StochMatrix::apply: dimension mismatch");
  std::vector<double> out(gamma.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += entry(i, j) * gamma[j];
    out[i] = s;
  }
  return out;
}

StochMatrix StochMatrix::identity(int n) {
  StochMatrix m{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
  for (int i = 0; i < n; ++i) m.entry(i, i) = 1.0;
  return m;
}

StochMatrix StochMatrix::swap(int n, int i, int j) {
  StochMatrix m = identity(n);
  m.entry(i, i) = 0.0;
  m.entry(j, j) = 0.0;
  m.entry(i, j) = 1.0;
  m.entry(j, i) = 1.0;
  return m;
}

StochMatrix StochMatrix::constant_action(int n, int i) {
  StochMatrix m{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
  for (int j = 0; j < n; ++j) m.entry(i, j) = 1.0;
  return m;
}

std::optional<std::string> rule_violation(const StochMatrix& m, double selection) {
  if (m.n <= 0 || m.a.size() != static_cast<std::size_t>(m.n) * m.n) return "matrix shape invalid";
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (!(m.entry(i, j) >= 0.0)) return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") negative";
  for (int j = 0; j < m.n; ++j) {
    double col = 0.0;
    for (int i = 0; i < m.n; ++i) col += m.entry(i, j);
    if (std::fabs(col - 1.0) > 1e-12)
      return "column " + std::to_string(j) + " sums to " + std::to_string(col);
  }
  if (!(selection >= 0.0 && selection <= 1.0)) return "selection value outside [0,1]";
  return std::nullopt;
}

void validate_rule(const StochMatrix& m, double selection) {
  if (auto msg = rule_violation(m, selection)) throw std::invalid_argument("invalid rule: " + *msg);
}

double rule_regret_step(const SimplexVector& gamma, std::span<const double> omega,
                        const StochMatrix& m, double selection) {
  validate_rule(m, selection);
  const double own = dtol_loss(gamma, omega);
  const std::vector<double> moved = m.apply(gamma.weights);
  return selection * (own - dot(moved, omega));
}

ModificationRule ModificationRule::fixed(StochMatrix m) {
  return fixed_with_selection(std::move(m), [](std::int64_t) { return 1.0; });
}

ModificationRule ModificationRule::fixed_with_selection(StochMatrix m,
                                                        std::function<double(std::int64_t)> sel) {
  ModificationRule r;
  r.matrix_provider = [m = std::move(m)](std::int64_t) { return m; };
  r.selection_provider = std::move(sel);
  return r;
}

std::function<double(std::int64_t)> ModificationRule::alternating(int phase) {
  return [phase](std::int64_t t) { return ((t + phase) % 2 == 0) ? 1.0 : 0.0; };
}

std::function<double(std::int64_t)> ModificationRule::join_at(std::int64_t join_step) {
  return [join_step](std::int64_t t) { return t >= join_step ? 1.0 : 0.0; };
}

RuleLedger make_rule_ledger(std::size_t num_rules) {
  RuleLedger ledger;
  ledger.rule_regret.assign(num_rules, 0.0);
  ledger.awake_time.assign(num_rules, 0.0);
  ledger.awake_time_sq.assign(num_rules, 0.0);
  return ledger;
}

}  // namespace dfa
