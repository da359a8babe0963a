#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bmab/distribution.hpp"
#include "bmab/rng.hpp"

namespace bmab {

/// Reward and cost laws of one arm. Both means must be strictly positive.
struct ArmModel {
  Distribution reward;
  Distribution cost;

  bool is_bernoulli() const noexcept {
    return reward.kind() == DistributionKind::bernoulli &&
           cost.kind() == DistributionKind::bernoulli;
  }
};

/// K >= 2 arms plus derived quantities. Arms keep their given order; the
/// optimal arm is whichever maximises mean reward / mean cost, lowest index
/// on ties, and is not moved to the front.
class BanditInstance {
 public:
  explicit BanditInstance(std::vector<ArmModel> arms);

  std::size_t size() const noexcept { return arms_.size(); }
  const ArmModel& arm(std::size_t i) const { return arms_.at(i); }
  std::span<const ArmModel> arms() const noexcept { return arms_; }

  double reward_mean(std::size_t i) const { return arms_.at(i).reward.mean(); }
  double cost_mean(std::size_t i) const { return arms_.at(i).cost.mean(); }
  double ratio(std::size_t i) const { return ratios_.at(i); }

  std::size_t optimal_arm() const noexcept { return optimal_; }
  double optimal_ratio() const noexcept { return ratios_[optimal_]; }

  /// Ratio gap to the optimal arm; zero for the optimal arm itself.
  double gap(std::size_t i) const { return gaps_.at(i); }
  std::span<const double> gaps() const noexcept { return gaps_; }

  double min_cost_mean() const noexcept { return min_cost_mean_; }
  bool all_bernoulli() const noexcept;

 private:
  std::vector<ArmModel> arms_;
  std::vector<double> ratios_;
  std::vector<double> gaps_;
  std::size_t optimal_ = 0;
  double min_cost_mean_ = 0.0;
};

struct PullOutcome {
  double reward = 0.0;
  double cost = 0.0;
};

/// Draws the reward, then the cost, of arm `arm` (0-based).
/// Throws std::out_of_range for a bad index.
PullOutcome pull(const BanditInstance& instance, std::size_t arm, RngStream& rng);

enum class InstanceFamily { bernoulli, multinomial };

std::string to_string(InstanceFamily family);
InstanceFamily parse_instance_family(const std::string& name);

/// Seeded random instance for benchmark experiments.
///
/// bernoulli: reward and cost success probabilities uniform on [0.1, 0.9].
/// multinomial: support {0, 1/3, 2/3, 1} with flat-Dirichlet weights, drawn
/// independently for reward and cost.
/// Draw order is arm by arm, reward parameters before cost parameters.
BanditInstance generate_instance(std::uint64_t seed, std::size_t arms, InstanceFamily family);

}  // namespace bmab
