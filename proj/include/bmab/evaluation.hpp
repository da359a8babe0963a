#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bmab/instance.hpp"
#include "bmab/policies.hpp"
#include "bmab/rng.hpp"

namespace bmab {

/// One run, or one budget checkpoint of a run.
struct Trajectory {
  std::uint64_t budget = 0;
  std::uint64_t stopping_time = 0;
  std::vector<std::uint64_t> pulls;
  double total_reward = 0.0;
  /// Includes the cost of a final pull that overshot the budget (< budget + 1).
  double total_cost = 0.0;
};

/// Raised when a run exceeds 100 * budget / min mean cost rounds.
class RunawayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t round_cap(const BanditInstance& instance, std::uint64_t budget);

/// Plays `policy` until the budget is exhausted.
///
/// Each round: select (the policy's own draws), pull (reward word, then cost
/// word), pay the cost, then update the policy (Bernoulli-trial words in
/// general-mode BTS). A pull whose cost exceeds the remaining budget ends the
/// game and its reward is not collected.
Trajectory run_trajectory(const BanditInstance& instance, const PolicyKind& policy,
                          std::uint64_t budget, Mode mode, RngStream& rng);

/// One run at the largest checkpoint that records, for every checkpoint b,
/// exactly the Trajectory a fresh run at budget b on the same stream would
/// produce. Only meaningful for anytime policies; `checkpoints` must be
/// positive and strictly increasing.
std::vector<Trajectory> run_checkpointed(const BanditInstance& instance, const PolicyKind& policy,
                                         std::span<const std::uint64_t> checkpoints, Mode mode,
                                         RngStream& rng);

struct OptimalValue {
  double value = 0.0;
  /// True in general mode, where only an upper bound on the optimum is known.
  bool upper_bound = false;
};

/// ratio* x B for Bernoulli bandits (exact), ratio* x (B + 1) otherwise.
OptimalValue optimal_value(const BanditInstance& instance, std::uint64_t budget, Mode mode);

struct RegretReport {
  double regret = 0.0;
  /// Sum over non-optimal arms of mean cost x ratio gap x pulls.
  double gap_weighted_pulls = 0.0;
  bool upper_bound = false;
};

RegretReport pseudo_regret(const BanditInstance& instance, const Trajectory& trajectory,
                           std::uint64_t budget, Mode mode);

}  // namespace bmab
