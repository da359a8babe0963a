#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bmab/instance.hpp"
#include "bmab/rng.hpp"

namespace bmab {

/// How observed rewards and costs feed the Beta posteriors.
/// bernoulli: observations must already be 0/1.
/// general: each observation in [0, 1] is first turned into a Bernoulli trial.
enum class Mode { bernoulli, general };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& name);

// ---------------------------------------------------------------------------
// Budgeted Thompson Sampling

struct BtsArmCounters {
  std::uint64_t reward_successes = 0;
  std::uint64_t reward_failures = 0;
  std::uint64_t cost_successes = 0;
  std::uint64_t cost_failures = 0;

  std::uint64_t pulls() const noexcept { return reward_successes + reward_failures; }
};

/// Per-arm success/failure counters; every counter starts at zero.
struct BtsState {
  explicit BtsState(std::size_t arms) : counters(arms) {}
  std::vector<BtsArmCounters> counters;
};

/// Draws theta_r ~ Beta(S_r + 1, F_r + 1) then theta_c ~ Beta(S_c + 1, F_c + 1)
/// for each arm in index order (2K stream words), and returns the arm with the
/// largest theta_r / theta_c, lowest index on ties.
std::size_t bts_select(const BtsState& state, RngStream& rng);

/// Folds one observation of `arm` into the counters. In general mode two
/// Bernoulli trials are drawn, reward first (2 stream words); bernoulli mode
/// draws nothing and throws std::invalid_argument on a non-binary value.
void bts_update(BtsState& state, std::size_t arm, double reward, double cost, Mode mode,
                RngStream& rng);

// ---------------------------------------------------------------------------
// Empirical-mean baselines

struct EmpiricalArm {
  std::uint64_t pulls = 0;
  double reward_sum = 0.0;
  double cost_sum = 0.0;

  double mean_reward() const noexcept { return reward_sum / static_cast<double>(pulls); }
  double mean_cost() const noexcept { return cost_sum / static_cast<double>(pulls); }
};

struct EmpiricalState {
  explicit EmpiricalState(std::size_t arms) : arms(arms) {}

  void record(std::size_t arm, double reward, double cost);
  std::uint64_t total_pulls() const noexcept { return total; }
  std::size_t size() const noexcept { return arms.size(); }

  std::vector<EmpiricalArm> arms;
  std::uint64_t total = 0;
};

/// Round-robin exploration while spent < epsilon * budget, then the best
/// empirical reward/cost ratio. A zero (or unobserved) cost mean counts as +inf.
std::size_t epsilon_first_select(const EmpiricalState& state, double spent, double budget,
                                 double epsilon);

/// 0.25 * ln(budget * arms).
double pdbwk_nu(double budget, std::size_t arms);

/// sqrt(nu * x / n) + nu / n.
double pdbwk_radius(double x, double n, double nu);

/// Optimistic reward over pessimistic cost, clamped to [., 1] / [0, .].
/// Unpulled arms are taken first, in index order.
std::size_t pdbwk_select(const EmpiricalState& state, double nu);

/// r/c + (1 + 1/lambda) * e / (lambda - e), e = sqrt(ln(elapsed) / n), where
/// elapsed = round - 1. A non-positive denominator gives +inf.
double ucbbv1_index(const EmpiricalArm& arm, double elapsed, double lambda);
std::size_t ucbbv1_select(const EmpiricalState& state, std::uint64_t round, double lambda);

/// (r + sqrt(2 ln(round) / n)) / c; a zero cost mean gives +inf.
double kube_variant_index(const EmpiricalArm& arm, double round);
std::size_t kube_variant_select(const EmpiricalState& state, std::uint64_t round);

// ---------------------------------------------------------------------------
// Uniform policy interface

enum class PolicyType { bts, epsilon_first, pd_bwk, ucb_bv1, kube_variant };

struct PolicyKind {
  PolicyType type = PolicyType::bts;
  double epsilon = 0.1;
  /// UCB-BV1 cost lower bound; unset means "use the instance's minimum mean cost".
  std::optional<double> lambda;

  static PolicyKind bts() { return {PolicyType::bts, 0.1, std::nullopt}; }
  static PolicyKind epsilon_first(double eps) { return {PolicyType::epsilon_first, eps, std::nullopt}; }
  static PolicyKind pd_bwk() { return {PolicyType::pd_bwk, 0.1, std::nullopt}; }
  static PolicyKind ucb_bv1(std::optional<double> lambda = std::nullopt) {
    return {PolicyType::ucb_bv1, 0.1, lambda};
  }
  static PolicyKind kube_variant() { return {PolicyType::kube_variant, 0.1, std::nullopt}; }

  /// Whether selection is independent of the total budget.
  bool anytime() const noexcept { return type == PolicyType::bts || type == PolicyType::ucb_bv1; }

  /// Stable label used in CSV output, e.g. "epsilon_first(0.1)".
  std::string label() const;
};

/// Throws std::invalid_argument if the parameters are out of range for `instance`.
void validate(const PolicyKind& kind, const BanditInstance& instance);

class Policy {
 public:
  virtual ~Policy() = default;

  /// `round` is 1-based; `spent` is the cost paid before this round.
  virtual std::size_t select(std::uint64_t round, double spent, RngStream& rng) = 0;
  virtual void update(std::size_t arm, double reward, double cost, RngStream& rng) = 0;
};

/// `budget` is only read by the budget-aware policies (epsilon-first, PD-BwK).
std::unique_ptr<Policy> make_policy(const PolicyKind& kind, const BanditInstance& instance,
                                    double budget, Mode mode);

}  // namespace bmab
