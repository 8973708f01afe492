#include "dfa/environments.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dfa {

EnvironmentSpec EnvironmentSpec::iid_bernoulli(std::vector<double> means) {
  EnvironmentSpec s;
  s.kind = Kind::IidBernoulli;
  s.means = std::move(means);
  return s;
}

EnvironmentSpec EnvironmentSpec::adversarial_leader(int num_actions) {
  EnvironmentSpec s;
  s.kind = Kind::AdversarialLeader;
  s.num_actions = num_actions;
  return s;
}

EnvironmentSpec EnvironmentSpec::duplicated(EnvironmentSpec base, int copies) {
  EnvironmentSpec s;
  s.kind = Kind::Duplicated;
  s.base = std::make_shared<EnvironmentSpec>(std::move(base));
  s.copies = copies;
  return s;
}

EnvironmentSpec EnvironmentSpec::many_good(int pool_size, double fraction_good, double gap) {
  EnvironmentSpec s;
  s.kind = Kind::ManyGood;
  s.pool_size = pool_size;
  s.fraction_good = fraction_good;
  s.gap = gap;
  return s;
}

EnvironmentSpec EnvironmentSpec::late_arrival(std::vector<double> means,
                                              std::vector<std::int64_t> join_steps) {
  EnvironmentSpec s;
  s.kind = Kind::LateArrival;
  s.means = std::move(means);
  s.join_steps = std::move(join_steps);
  return s;
}

Environment::Environment(EnvironmentSpec spec, std::uint64_t seed)
    : spec_(std::move(spec)), rng_(Rng::stream(seed, 0x7a5)) {
  switch (spec_.kind) {
    case EnvironmentSpec::Kind::IidBernoulli:
      if (spec_.means.empty()) throw std::invalid_argument("iid_bernoulli: means required");
      means_ = spec_.means;
      num_experts_ = static_cast<int>(means_.size());
      break;
    case EnvironmentSpec::Kind::AdversarialLeader:
      if (spec_.num_actions < 1) throw std::invalid_argument("adversarial_leader: action count required");
      num_experts_ = spec_.num_actions;
      break;
    case EnvironmentSpec::Kind::Duplicated:
      if (!spec_.base || spec_.copies < 1) throw std::invalid_argument("duplicated: base and copies required");
      base_ = std::make_unique<Environment>(*spec_.base, seed);
      num_experts_ = base_->num_experts() * spec_.copies;
      break;
    case EnvironmentSpec::Kind::ManyGood: {
      if (spec_.pool_size < 1) throw std::invalid_argument("many_good: pool size required");
      if (!(spec_.gap > 0.0 && spec_.gap <= 0.5)) throw std::invalid_argument("many_good: gap in (0, 0.5]");
      const int good = std::max(1, static_cast<int>(spec_.fraction_good * spec_.pool_size));
      means_.assign(spec_.pool_size, std::min(1.0, 0.5 + spec_.gap));
      for (int n = 0; n < good; ++n) means_[n] = std::max(0.0, 0.5 - spec_.gap);
      num_experts_ = spec_.pool_size;
      break;
    }
    case EnvironmentSpec::Kind::LateArrival:
      if (spec_.means.empty() || spec_.join_steps.size() != spec_.means.size())
        throw std::invalid_argument("late_arrival: means and one join step per expert required");
      means_ = spec_.means;
      join_steps_ = spec_.join_steps;
      num_experts_ = static_cast<int>(means_.size());
      break;
  }
  for (double m : means_)
    if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("environment: mean outside [0,1]");
}

std::vector<double> Environment::losses(std::int64_t t, const SimplexVector& decision) {
  switch (spec_.kind) {
    case EnvironmentSpec::Kind::IidBernoulli:
    case EnvironmentSpec::Kind::ManyGood:
    case EnvironmentSpec::Kind::LateArrival: {
      std::vector<double> out(means_.size());
      for (std::size_t n = 0; n < means_.size(); ++n) out[n] = rng_.bernoulli(means_[n]) ? 1.0 : 0.0;
      return out;
    }
    case EnvironmentSpec::Kind::AdversarialLeader: {
      // loss 1 on the heaviest half of the decision, ties resolved by index
      if (static_cast<int>(decision.size()) != num_experts_)
        throw std::invalid_argument("adversarial_leader: decision dimension mismatch");
      const int n = num_experts_;
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return decision[a] > decision[b]; });
      std::vector<double> out(n, 0.0);
      const int hit = (n + 1) / 2;
      for (int i = 0; i < hit; ++i) out[order[i]] = 1.0;
      return out;
    }
    case EnvironmentSpec::Kind::Duplicated: {
      // the base adversary sees the group-aggregated decision
      const int base_n = base_->num_experts();
      std::vector<double> agg(base_n, 0.0);
      for (int j = 0; j < base_n; ++j)
        for (int c = 0; c < spec_.copies; ++c) agg[j] += decision[j * spec_.copies + c];
      const std::vector<double> base_losses = base_->losses(t, SimplexVector{std::move(agg)});
      std::vector<double> out(static_cast<std::size_t>(base_n) * spec_.copies);
      for (int j = 0; j < base_n; ++j)
        for (int c = 0; c < spec_.copies; ++c) out[j * spec_.copies + c] = base_losses[j];
      return out;
    }
  }
  throw std::logic_error("environment: unknown kind");
}

Environment make_environment(EnvironmentSpec spec, std::uint64_t seed) {
  return Environment(std::move(spec), seed);
}

}  // namespace dfa
