#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmab/instance.hpp"

namespace bmab {

/// Order of the non-logarithmic per-arm term in the BTS regret bound.
/// Only the order is known, never an absolute value.
enum class TailRegime {
  /// mean cost of the optimal arm + epsilon gap >= 1: O(1 / eps^4)
  quartic,
  /// otherwise: O(1 / (eps^6 (1 - mean cost - eps)))
  sextic,
};

std::string describe(TailRegime regime);

struct ArmGaps {
  std::size_t arm = 0;
  /// Ratio gap to the optimal arm.
  double ratio_gap = 0.0;
  /// Slack around this arm's ratio: gamma * mu_c_i * gap / (ratio* + 1).
  double delta_gap = 0.0;
  /// Slack around the optimal arm's ratio: (1 - gamma) * mu_c_opt * gap / (ratio_i + 1).
  double epsilon_gap = 0.0;
  /// 2 ln B / delta_gap^2.
  double pull_threshold = 0.0;
  TailRegime regime = TailRegime::quartic;
  /// The argument of the O(.) for `regime`, evaluated at epsilon_gap.
  double regime_order = 0.0;
};

struct GapReport {
  double gamma = 0.0;
  std::uint64_t budget = 0;
  std::size_t optimal_arm = 0;
  /// One entry per strictly suboptimal arm, in index order.
  std::vector<ArmGaps> arms;
  /// Arms other than the optimal one whose ratio ties it (zero gap).
  std::vector<std::size_t> tied_arms;
};

/// Throws std::invalid_argument unless 0 < gamma < 1 and budget >= 1.
GapReport gaps(const BanditInstance& instance, double gamma, std::uint64_t budget);

/// Raised when the identity's left-hand denominator is not positive.
class DegenerateDenominator : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// |(mu_r_i + delta)/(mu_c_i - delta) - (mu_r_opt - eps)/(mu_c_opt + eps)|.
/// Throws std::invalid_argument if `arm` is not strictly suboptimal.
double ratio_gap_identity_residual(const BanditInstance& instance, std::size_t arm, double gamma);

struct LnBCoefficient {
  double value = 0.0;
  /// Non-optimal arms left out because their gap is zero (the bound is vacuous for them).
  std::vector<std::size_t> excluded_arms;
};

/// Coefficient of ln B in the BTS bound:
/// sum_i 2 / (gamma^2 mu_c_i gap_i) * (ratio* + 1)^2.
LnBCoefficient bts_lnB_constant(const BanditInstance& instance, double gamma);

/// Coefficient of ln B in the UCB-BV1 bound, with m = min mean cost and
/// q_i = (2 + 2/m + gap_i) / (gap_i m):
/// ratio* sum_i q_i^2 + sum_{i: mu_r_i < mu_r_opt} (mu_r_opt - mu_r_i) q_i.
LnBCoefficient ucbbv1_lnB_constant(const BanditInstance& instance);

/// CDF of Beta(alpha, beta) at y for integer shapes, through the binomial
/// tail P[Binomial(alpha + beta - 1, y) >= alpha]. The tail with less mass is
/// summed in log space, smallest terms first.
double beta_binomial_cdf(std::uint64_t alpha, std::uint64_t beta, double y);

}  // namespace bmab
