#include "bmab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace bmab {

namespace {

void check_gamma_open(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
}

double delta_gap(const BanditInstance& inst, std::size_t i, double gamma) {
  return gamma * inst.cost_mean(i) * inst.gap(i) / (inst.optimal_ratio() + 1.0);
}

double epsilon_gap(const BanditInstance& inst, std::size_t i, double gamma) {
  const std::size_t opt = inst.optimal_arm();
  return (1.0 - gamma) * inst.cost_mean(opt) * inst.gap(i) / (inst.ratio(i) + 1.0);
}

// Splits the non-optimal arms into strictly suboptimal and tied ones.
void partition_arms(const BanditInstance& inst, std::vector<std::size_t>& suboptimal,
                    std::vector<std::size_t>& tied) {
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (i == inst.optimal_arm()) continue;
    (inst.gap(i) > 0.0 ? suboptimal : tied).push_back(i);
  }
}

// log(sum(exp(terms))) accumulated smallest first; `terms` are ordered from
// the far end of the tail towards the mode, so they are increasing.
double log_sum_increasing(const std::vector<double>& terms) {
  const double top = terms.back();
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

}  // namespace

std::string describe(TailRegime regime) {
  return regime == TailRegime::quartic ? "O(1/eps^4)" : "O(1/(eps^6 (1 - mu1c - eps)))";
}

GapReport gaps(const BanditInstance& instance, double gamma, std::uint64_t budget) {
  check_gamma_open(gamma);
  if (budget == 0) throw std::invalid_argument("gaps: budget must be positive");
  GapReport report;
  report.gamma = gamma;
  report.budget = budget;
  report.optimal_arm = instance.optimal_arm();

  std::vector<std::size_t> suboptimal;
  partition_arms(instance, suboptimal, report.tied_arms);

  const double log_budget = std::log(static_cast<double>(budget));
  const double opt_cost = instance.cost_mean(instance.optimal_arm());
  for (std::size_t i : suboptimal) {
    ArmGaps g;
    g.arm = i;
    g.ratio_gap = instance.gap(i);
    g.delta_gap = delta_gap(instance, i, gamma);
    g.epsilon_gap = epsilon_gap(instance, i, gamma);
    g.pull_threshold = 2.0 * log_budget / (g.delta_gap * g.delta_gap);
    const double eps = g.epsilon_gap;
    if (opt_cost + eps >= 1.0) {
      g.regime = TailRegime::quartic;
      g.regime_order = 1.0 / std::pow(eps, 4);
    } else {
      g.regime = TailRegime::sextic;
      g.regime_order = 1.0 / (std::pow(eps, 6) * (1.0 - opt_cost - eps));
    }
    report.arms.push_back(g);
  }
  return report;
}

double ratio_gap_identity_residual(const BanditInstance& instance, std::size_t arm, double gamma) {
  check_gamma_open(gamma);
  if (arm >= instance.size()) throw std::out_of_range("ratio_gap_identity_residual: bad arm index");
  if (!(instance.gap(arm) > 0.0))
    throw std::invalid_argument("ratio_gap_identity_residual: arm is not strictly suboptimal");
  const std::size_t opt = instance.optimal_arm();
  const double delta = delta_gap(instance, arm, gamma);
  const double eps = epsilon_gap(instance, arm, gamma);
  const double lhs_den = instance.cost_mean(arm) - delta;
  const double rhs_den = instance.cost_mean(opt) + eps;
  if (!(lhs_den > 0.0) || !(rhs_den > 0.0))
    throw DegenerateDenominator("ratio_gap_identity_residual: non-positive denominator");
  const double lhs = (instance.reward_mean(arm) + delta) / lhs_den;
  const double rhs = (instance.reward_mean(opt) - eps) / rhs_den;
  return std::abs(lhs - rhs);
}

LnBCoefficient bts_lnB_constant(const BanditInstance& instance, double gamma) {
  // gamma = 1 is allowed here: the coefficient is a plain rational function of gamma.
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
  LnBCoefficient out;
  std::vector<std::size_t> suboptimal;
  partition_arms(instance, suboptimal, out.excluded_arms);
  const double lead = instance.optimal_ratio() + 1.0;
  for (std::size_t i : suboptimal)
    out.value += 2.0 / (gamma * gamma * instance.cost_mean(i) * instance.gap(i)) * lead * lead;
  return out;
}

LnBCoefficient ucbbv1_lnB_constant(const BanditInstance& instance) {
  LnBCoefficient out;
  std::vector<std::size_t> suboptimal;
  partition_arms(instance, suboptimal, out.excluded_arms);
  const double m = instance.min_cost_mean();
  const double opt_reward = instance.reward_mean(instance.optimal_arm());
  double squared = 0.0;
  double linear = 0.0;
  for (std::size_t i : suboptimal) {
    const double q = (2.0 + 2.0 / m + instance.gap(i)) / (instance.gap(i) * m);
    squared += q * q;
    if (instance.reward_mean(i) < opt_reward) linear += (opt_reward - instance.reward_mean(i)) * q;
  }
  out.value = instance.optimal_ratio() * squared + linear;
  return out;
}

double beta_binomial_cdf(std::uint64_t alpha, std::uint64_t beta, double y) {
  if (alpha == 0 || beta == 0) throw std::invalid_argument("beta_binomial_cdf: shapes must be >= 1");
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("beta_binomial_cdf: y must lie in [0, 1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;

  const std::uint64_t n = alpha + beta - 1;
  const double nd = static_cast<double>(n);
  const double log_y = std::log(y);
  const double log_1my = std::log1p(-y);
  // log of pmf(k-1)/pmf(k) = log(k / (n - k + 1)) + log(1-y) - log(y)
  std::vector<double> terms;

  if (static_cast<double>(alpha) >= nd * y) {
    // Upper tail k = alpha..n holds the smaller mass; walk down from k = n.
    terms.reserve(n - alpha + 1);
    double log_pmf = nd * log_y;
    for (std::uint64_t k = n;; --k) {
      terms.push_back(log_pmf);
      if (k == alpha) break;
      log_pmf += std::log(static_cast<double>(k) / static_cast<double>(n - k + 1)) + log_1my - log_y;
    }
    return std::min(1.0, std::exp(log_sum_increasing(terms)));
  }

  // Lower tail k = 0..alpha-1 holds the smaller mass; walk up from k = 0.
  terms.reserve(alpha);
  double log_pmf = nd * log_1my;
  for (std::uint64_t k = 0;; ++k) {
    terms.push_back(log_pmf);
    if (k + 1 == alpha) break;
    // pmf(k+1)/pmf(k) = (n - k) / (k + 1) * y / (1 - y)
    log_pmf += std::log(static_cast<double>(n - k) / static_cast<double>(k + 1)) + log_y - log_1my;
  }
  return std::max(0.0, 1.0 - std::exp(log_sum_increasing(terms)));
}

}  // namespace bmab
