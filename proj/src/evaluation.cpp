#include "bmab/evaluation.hpp"

#include <cmath>
#include <string>

namespace bmab {

std::uint64_t round_cap(const BanditInstance& instance, std::uint64_t budget) {
  return static_cast<std::uint64_t>(
      std::ceil(100.0 * static_cast<double>(budget) / instance.min_cost_mean()));
}

namespace {

void check_mode(const BanditInstance& instance, Mode mode) {
  if (mode == Mode::bernoulli && !instance.all_bernoulli())
    throw std::invalid_argument("bernoulli mode needs Bernoulli reward and cost distributions");
}

// Shared by fresh and checkpointed runs so both apply the stopping rule with
// the same floating-point expressions.
std::vector<Trajectory> simulate(const BanditInstance& instance, const PolicyKind& kind,
                                 std::span<const std::uint64_t> checkpoints, Mode mode,
                                 RngStream& rng) {
  check_mode(instance, mode);
  if (checkpoints.empty()) throw std::invalid_argument("simulate: no budget given");
  for (std::size_t j = 0; j < checkpoints.size(); ++j) {
    if (checkpoints[j] == 0) throw std::invalid_argument("simulate: budgets must be positive");
    if (j > 0 && checkpoints[j] <= checkpoints[j - 1])
      throw std::invalid_argument("simulate: checkpoints must be strictly increasing");
  }

  const std::uint64_t budget = checkpoints.back();
  auto policy = make_policy(kind, instance, static_cast<double>(budget), mode);
  const std::uint64_t cap = round_cap(instance, budget);

  std::vector<Trajectory> out;
  out.reserve(checkpoints.size());
  std::vector<std::uint64_t> pulls(instance.size(), 0);
  double spent = 0.0;
  double collected = 0.0;
  std::uint64_t round = 0;
  std::size_t next = 0;

  while (next < checkpoints.size()) {
    if (round >= cap)
      throw RunawayError("run exceeded the round cap of " + std::to_string(cap) + " rounds");
    ++round;
    const std::size_t arm = policy->select(round, spent, rng);
    const PullOutcome obs = pull(instance, arm, rng);
    pulls[arm] += 1;
    const double after = spent + obs.cost;

    while (next < checkpoints.size() && !(after < static_cast<double>(checkpoints[next]))) {
      const double b = static_cast<double>(checkpoints[next]);
      Trajectory t;
      t.budget = checkpoints[next];
      t.stopping_time = round;
      t.pulls = pulls;
      t.total_cost = after;
      // The final pull's reward is forfeited if its cost exceeded what was left.
      t.total_reward = after > b ? collected : collected + obs.reward;
      out.push_back(std::move(t));
      ++next;
    }

    collected += obs.reward;
    spent = after;
    if (next < checkpoints.size()) policy->update(arm, obs.reward, obs.cost, rng);
  }
  return out;
}

}  // namespace

Trajectory run_trajectory(const BanditInstance& instance, const PolicyKind& policy,
                          std::uint64_t budget, Mode mode, RngStream& rng) {
  const std::uint64_t checkpoints[] = {budget};
  return std::move(simulate(instance, policy, checkpoints, mode, rng).front());
}

std::vector<Trajectory> run_checkpointed(const BanditInstance& instance, const PolicyKind& policy,
                                         std::span<const std::uint64_t> checkpoints, Mode mode,
                                         RngStream& rng) {
  return simulate(instance, policy, checkpoints, mode, rng);
}

OptimalValue optimal_value(const BanditInstance& instance, std::uint64_t budget, Mode mode) {
  const double b = static_cast<double>(budget);
  if (mode == Mode::bernoulli) return {instance.optimal_ratio() * b, false};
  return {instance.optimal_ratio() * (b + 1.0), true};
}

RegretReport pseudo_regret(const BanditInstance& instance, const Trajectory& trajectory,
                           std::uint64_t budget, Mode mode) {
  if (trajectory.pulls.size() != instance.size())
    throw std::invalid_argument("pseudo_regret: trajectory does not match the instance");
  const OptimalValue opt = optimal_value(instance, budget, mode);
  RegretReport report;
  report.regret = opt.value - trajectory.total_reward;
  report.upper_bound = opt.upper_bound;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (i == instance.optimal_arm()) continue;
    report.gap_weighted_pulls +=
        instance.cost_mean(i) * instance.gap(i) * static_cast<double>(trajectory.pulls[i]);
  }
  return report;
}

}  // namespace bmab
