#include "bmab/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bmab/csv.hpp"
#include "bmab/distribution.hpp"

namespace bmab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Strict > keeps the lowest index on ties, including +inf against +inf.
template <class IndexFn>
std::size_t argmax(std::size_t n, IndexFn&& index) {
  std::size_t best = 0;
  double best_value = index(std::size_t{0});
  for (std::size_t i = 1; i < n; ++i) {
    const double v = index(i);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  return best;
}

std::optional<std::size_t> first_unpulled(const EmpiricalState& state) {
  for (std::size_t i = 0; i < state.size(); ++i)
    if (state.arms[i].pulls == 0) return i;
  return std::nullopt;
}

double empirical_ratio(const EmpiricalArm& arm) {
  if (arm.pulls == 0 || arm.cost_sum <= 0.0) return kInf;
  return arm.mean_reward() / arm.mean_cost();
}

bool is_binary(double x) { return x == 0.0 || x == 1.0; }

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::bernoulli ? "bernoulli" : "general"; }

Mode parse_mode(const std::string& name) {
  if (name == "bernoulli") return Mode::bernoulli;
  if (name == "general") return Mode::general;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

// ---------------------------------------------------------------------------

std::size_t bts_select(const BtsState& state, RngStream& rng) {
  const std::size_t k = state.counters.size();
  std::size_t best = 0;
  double best_value = -kInf;
  for (std::size_t i = 0; i < k; ++i) {
    const BtsArmCounters& c = state.counters[i];
    const double theta_r = sample_beta(static_cast<double>(c.reward_successes) + 1.0,
                                       static_cast<double>(c.reward_failures) + 1.0, rng);
    const double theta_c = sample_beta(static_cast<double>(c.cost_successes) + 1.0,
                                       static_cast<double>(c.cost_failures) + 1.0, rng);
    const double ratio = theta_c > 0.0 ? theta_r / theta_c : kInf;
    if (ratio > best_value) {
      best = i;
      best_value = ratio;
    }
  }
  return best;
}

void bts_update(BtsState& state, std::size_t arm, double reward, double cost, Mode mode,
                RngStream& rng) {
  if (arm >= state.counters.size()) throw std::out_of_range("bts_update: arm index out of range");
  int r = 0;
  int c = 0;
  if (mode == Mode::bernoulli) {
    if (!is_binary(reward) || !is_binary(cost))
      throw std::invalid_argument("bts_update: bernoulli mode needs 0/1 observations");
    r = static_cast<int>(reward);
    c = static_cast<int>(cost);
  } else {
    r = bernoulli_trial(reward, rng);
    c = bernoulli_trial(cost, rng);
  }
  BtsArmCounters& counters = state.counters[arm];
  (r ? counters.reward_successes : counters.reward_failures) += 1;
  (c ? counters.cost_successes : counters.cost_failures) += 1;
}

// ---------------------------------------------------------------------------

void EmpiricalState::record(std::size_t arm, double reward, double cost) {
  EmpiricalArm& a = arms.at(arm);
  a.pulls += 1;
  a.reward_sum += reward;
  a.cost_sum += cost;
  total += 1;
}

std::size_t epsilon_first_select(const EmpiricalState& state, double spent, double budget,
                                 double epsilon) {
  if (spent < epsilon * budget) return static_cast<std::size_t>(state.total_pulls() % state.size());
  return argmax(state.size(), [&](std::size_t i) { return empirical_ratio(state.arms[i]); });
}

double pdbwk_nu(double budget, std::size_t arms) {
  return 0.25 * std::log(budget * static_cast<double>(arms));
}

double pdbwk_radius(double x, double n, double nu) { return std::sqrt(nu * x / n) + nu / n; }

std::size_t pdbwk_select(const EmpiricalState& state, double nu) {
  if (auto arm = first_unpulled(state)) return *arm;
  return argmax(state.size(), [&](std::size_t i) {
    const EmpiricalArm& a = state.arms[i];
    const double n = static_cast<double>(a.pulls);
    const double r = a.mean_reward();
    const double c = a.mean_cost();
    const double numerator = std::min(r + pdbwk_radius(r, n, nu), 1.0);
    const double denominator = std::max(c - pdbwk_radius(c, n, nu), 0.0);
    return denominator > 0.0 ? numerator / denominator : kInf;
  });
}

double ucbbv1_index(const EmpiricalArm& arm, double elapsed, double lambda) {
  const double e = elapsed > 1.0 ? std::sqrt(std::log(elapsed) / static_cast<double>(arm.pulls)) : 0.0;
  const double denominator = lambda - e;
  if (denominator <= 0.0) return kInf;
  return empirical_ratio(arm) + (1.0 + 1.0 / lambda) * e / denominator;
}

std::size_t ucbbv1_select(const EmpiricalState& state, std::uint64_t round, double lambda) {
  if (auto arm = first_unpulled(state)) return *arm;
  const double elapsed = static_cast<double>(round) - 1.0;
  return argmax(state.size(), [&](std::size_t i) { return ucbbv1_index(state.arms[i], elapsed, lambda); });
}

double kube_variant_index(const EmpiricalArm& arm, double round) {
  if (arm.cost_sum <= 0.0) return kInf;
  const double bonus = std::sqrt(2.0 * std::log(round) / static_cast<double>(arm.pulls));
  return (arm.mean_reward() + bonus) / arm.mean_cost();
}

std::size_t kube_variant_select(const EmpiricalState& state, std::uint64_t round) {
  if (auto arm = first_unpulled(state)) return *arm;
  const double t = static_cast<double>(round);
  return argmax(state.size(), [&](std::size_t i) { return kube_variant_index(state.arms[i], t); });
}

// ---------------------------------------------------------------------------

std::string PolicyKind::label() const {
  switch (type) {
    case PolicyType::bts: return "bts";
    case PolicyType::epsilon_first: return "epsilon_first(" + format_number(epsilon) + ")";
    case PolicyType::pd_bwk: return "pd_bwk";
    case PolicyType::ucb_bv1:
      return lambda ? "ucb_bv1(" + format_number(*lambda) + ")" : std::string("ucb_bv1");
    case PolicyType::kube_variant: return "kube_variant";
  }
  return "unknown";
}

void validate(const PolicyKind& kind, const BanditInstance& instance) {
  if (kind.type == PolicyType::epsilon_first && !(kind.epsilon > 0.0 && kind.epsilon < 1.0))
    throw std::invalid_argument("epsilon_first: epsilon must lie in (0, 1)");
  if (kind.type == PolicyType::ucb_bv1 && kind.lambda) {
    if (!(*kind.lambda > 0.0)) throw std::invalid_argument("ucb_bv1: lambda must be positive");
    if (*kind.lambda > instance.min_cost_mean())
      throw std::invalid_argument("ucb_bv1: lambda exceeds the minimum mean cost");
  }
}

namespace {

class BtsPolicy final : public Policy {
 public:
  BtsPolicy(std::size_t arms, Mode mode) : state_(arms), mode_(mode) {}

  std::size_t select(std::uint64_t, double, RngStream& rng) override { return bts_select(state_, rng); }
  void update(std::size_t arm, double reward, double cost, RngStream& rng) override {
    bts_update(state_, arm, reward, cost, mode_, rng);
  }

 private:
  BtsState state_;
  Mode mode_;
};

class EmpiricalPolicy : public Policy {
 public:
  explicit EmpiricalPolicy(std::size_t arms) : state_(arms) {}
  void update(std::size_t arm, double reward, double cost, RngStream&) override {
    state_.record(arm, reward, cost);
  }

 protected:
  EmpiricalState state_;
};

class EpsilonFirstPolicy final : public EmpiricalPolicy {
 public:
  EpsilonFirstPolicy(std::size_t arms, double budget, double epsilon)
      : EmpiricalPolicy(arms), budget_(budget), epsilon_(epsilon) {}
  std::size_t select(std::uint64_t, double spent, RngStream&) override {
    return epsilon_first_select(state_, spent, budget_, epsilon_);
  }

 private:
  double budget_;
  double epsilon_;
};

class PdBwkPolicy final : public EmpiricalPolicy {
 public:
  PdBwkPolicy(std::size_t arms, double budget) : EmpiricalPolicy(arms), nu_(pdbwk_nu(budget, arms)) {}
  std::size_t select(std::uint64_t, double, RngStream&) override { return pdbwk_select(state_, nu_); }

 private:
  double nu_;
};

class UcbBv1Policy final : public EmpiricalPolicy {
 public:
  UcbBv1Policy(std::size_t arms, double lambda) : EmpiricalPolicy(arms), lambda_(lambda) {}
  std::size_t select(std::uint64_t round, double, RngStream&) override {
    return ucbbv1_select(state_, round, lambda_);
  }

 private:
  double lambda_;
};

class KubeVariantPolicy final : public EmpiricalPolicy {
 public:
  using EmpiricalPolicy::EmpiricalPolicy;
  std::size_t select(std::uint64_t round, double, RngStream&) override {
    return kube_variant_select(state_, round);
  }
};

}  // namespace

std::unique_ptr<Policy> make_policy(const PolicyKind& kind, const BanditInstance& instance,
                                    double budget, Mode mode) {
  validate(kind, instance);
  const std::size_t k = instance.size();
  switch (kind.type) {
    case PolicyType::bts: return std::make_unique<BtsPolicy>(k, mode);
    case PolicyType::epsilon_first: return std::make_unique<EpsilonFirstPolicy>(k, budget, kind.epsilon);
    case PolicyType::pd_bwk: return std::make_unique<PdBwkPolicy>(k, budget);
    case PolicyType::ucb_bv1:
      return std::make_unique<UcbBv1Policy>(k, kind.lambda.value_or(instance.min_cost_mean()));
    case PolicyType::kube_variant: return std::make_unique<KubeVariantPolicy>(k);
  }
  throw std::invalid_argument("make_policy: unknown policy type");
}

}  // namespace bmab
