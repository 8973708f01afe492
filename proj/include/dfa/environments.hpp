#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dfa/rng.hpp"
#include "dfa/simplex.hpp"

namespace dfa {

struct EnvironmentSpec {
  enum class Kind { IidBernoulli, AdversarialLeader, Duplicated, ManyGood, LateArrival };

  Kind kind = Kind::IidBernoulli;
  std::vector<double> means;  // IidBernoulli, LateArrival
  int num_actions = 0;        // AdversarialLeader
  int copies = 1;             // Duplicated
  std::shared_ptr<EnvironmentSpec> base;  // Duplicated
  double fraction_good = 0.25;  // ManyGood
  double gap = 0.2;             // ManyGood
  int pool_size = 0;            // ManyGood
  std::vector<std::int64_t> join_steps;  // LateArrival, one per expert

  static EnvironmentSpec iid_bernoulli(std::vector<double> means);
  static EnvironmentSpec adversarial_leader(int num_actions);
  static EnvironmentSpec duplicated(EnvironmentSpec base, int copies);
  static EnvironmentSpec many_good(int pool_size, double fraction_good, double gap);
  static EnvironmentSpec late_arrival(std::vector<double> means,
                                      std::vector<std::int64_t> join_steps);
};

// Per-step loss generator. The adversarial kind reads the decision announced
// for the step before emitting the outcome, which the move order of the
// protocol permits.
class Environment {
 public:
  Environment(EnvironmentSpec spec, std::uint64_t seed);

  int num_experts() const { return num_experts_; }
  const EnvironmentSpec& spec() const { return spec_; }
  const std::vector<std::int64_t>& join_steps() const { return join_steps_; }

  std::vector<double> losses(std::int64_t t, const SimplexVector& decision);

 private:
  EnvironmentSpec spec_;
  int num_experts_ = 0;
  Rng rng_;
  std::unique_ptr<Environment> base_;
  std::vector<double> means_;  // resolved Bernoulli means where applicable
  std::vector<std::int64_t> join_steps_;
};

Environment make_environment(EnvironmentSpec spec, std::uint64_t seed);

}  // namespace dfa
