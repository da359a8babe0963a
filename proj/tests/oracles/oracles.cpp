#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bmab/evaluation.hpp"
#include "bmab/rng.hpp"

namespace bmab::oracle {

OracleEstimate summarize(const std::vector<double>& xs) {
  OracleEstimate est;
  est.samples = xs.size();
  if (xs.empty()) return est;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  est.value = mean;
  if (xs.size() > 1) {
    const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    est.standard_error = sd / std::sqrt(static_cast<double>(xs.size()));
  }
  return est;
}

OracleEstimate mc_policy_value(const BanditInstance& instance, std::size_t fixed_arm,
                               std::uint64_t budget, Mode mode, std::uint64_t episodes,
                               std::uint64_t seed) {
  if (episodes < 10000) throw std::invalid_argument("mc_policy_value: need at least 10^4 episodes");
  if (fixed_arm >= instance.size()) throw std::out_of_range("mc_policy_value: bad arm");
  if (mode == Mode::bernoulli && !instance.arm(fixed_arm).is_bernoulli())
    throw std::invalid_argument("mc_policy_value: bernoulli mode needs a Bernoulli arm");

  RngStream rng(seed);
  const double b = static_cast<double>(budget);
  std::vector<double> totals;
  totals.reserve(episodes);
  for (std::uint64_t e = 0; e < episodes; ++e) {
    double remaining = b;
    double total = 0.0;
    while (remaining > 0.0) {
      const PullOutcome o = pull(instance, fixed_arm, rng);
      if (o.cost > remaining) break;
      total += o.reward;
      remaining -= o.cost;
    }
    totals.push_back(total);
  }
  return summarize(totals);
}

std::vector<double> optimal_value_recursion(const BanditInstance& instance, std::uint64_t budget) {
  if (!instance.all_bernoulli())
    throw std::invalid_argument("optimal_value_recursion: Bernoulli instances only");
  std::vector<double> value(budget + 1, 0.0);
  for (std::uint64_t b = 1; b <= budget; ++b) {
    double best = 0.0;
    for (std::size_t i = 0; i < instance.size(); ++i) {
      const double r = instance.reward_mean(i);
      const double c = instance.cost_mean(i);
      // R = (1-c)(1-r) R + (1-c) r (1 + R) + c (1-r) R' + c r (1 + R'), solved for R.
      const double self = (1.0 - c) * (1.0 - r) + (1.0 - c) * r;
      const double rest = (1.0 - c) * r + c * (1.0 - r) * value[b - 1] + c * r * (1.0 + value[b - 1]);
      best = std::max(best, rest / (1.0 - self));
    }
    value[b] = best;
  }
  return value;
}

double SmallBanditSummary::combined_se() const {
  return std::sqrt(se_regret * se_regret + se_diagnostic * se_diagnostic);
}

double SmallBanditSummary::discrepancy() const {
  const double diff = std::abs(mean_regret - mean_diagnostic);
  const double se = combined_se();
  if (se == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
  return diff / se;
}

SmallBanditSummary exhaustive_small_bandit_regret(const BanditInstance& instance,
                                                  const PolicyKind& policy, std::uint64_t budget,
                                                  std::uint64_t seeds, std::uint64_t base_seed) {
  if (instance.size() != 2) throw std::invalid_argument("small-bandit oracle: exactly two arms");
  if (budget > 5 || budget == 0) throw std::invalid_argument("small-bandit oracle: budget in 1..5");
  if (!instance.all_bernoulli()) throw std::invalid_argument("small-bandit oracle: Bernoulli arms only");

  // Both quantities recomputed from first principles, not via pseudo_regret.
  const double r0 = instance.reward_mean(0), c0 = instance.cost_mean(0);
  const double r1 = instance.reward_mean(1), c1 = instance.cost_mean(1);
  const double best = std::max(r0 / c0, r1 / c1);
  const double weight0 = c0 * (best - r0 / c0);
  const double weight1 = c1 * (best - r1 / c1);

  std::vector<double> regrets, diagnostics;
  regrets.reserve(seeds);
  diagnostics.reserve(seeds);
  for (std::uint64_t s = 0; s < seeds; ++s) {
    RngStream rng(mix64(base_seed + s * 0x9E3779B97F4A7C15ULL + 1));
    const Trajectory t = run_trajectory(instance, policy, budget, Mode::bernoulli, rng);
    regrets.push_back(best * static_cast<double>(budget) - t.total_reward);
    diagnostics.push_back(weight0 * static_cast<double>(t.pulls[0]) +
                          weight1 * static_cast<double>(t.pulls[1]));
  }
  const OracleEstimate reg = summarize(regrets);
  const OracleEstimate diag = summarize(diagnostics);
  return {reg.value, reg.standard_error, diag.value, diag.standard_error, seeds};
}

double beta_cdf_quadrature(double alpha, double beta, double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const double log_norm = std::lgamma(alpha + beta) - std::lgamma(alpha) - std::lgamma(beta);
  auto density = [&](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return std::exp(log_norm + (alpha - 1.0) * std::log(x) + (beta - 1.0) * std::log1p(-x));
  };
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 0.0, y, 15, 1e-13, &error);
  if (error > 1e-10) throw std::runtime_error("beta_cdf_quadrature: error estimate above 1e-10");
  return value;
}

}  // namespace bmab::oracle
