#include "bmab/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace bmab {

BanditInstance::BanditInstance(std::vector<ArmModel> arms) : arms_(std::move(arms)) {
  if (arms_.size() < 2) throw std::invalid_argument("BanditInstance: need at least two arms");
  ratios_.reserve(arms_.size());
  min_cost_mean_ = arms_.front().cost.mean();
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    const double mr = arms_[i].reward.mean();
    const double mc = arms_[i].cost.mean();
    if (!(mr > 0.0) || !(mc > 0.0))
      throw std::invalid_argument("BanditInstance: arm " + std::to_string(i + 1) +
                                  " needs positive mean reward and mean cost");
    ratios_.push_back(mr / mc);
    min_cost_mean_ = std::min(min_cost_mean_, mc);
    if (ratios_[i] > ratios_[optimal_]) optimal_ = i;
  }
  gaps_.reserve(arms_.size());
  for (double r : ratios_) gaps_.push_back(ratios_[optimal_] - r);
}

bool BanditInstance::all_bernoulli() const noexcept {
  return std::all_of(arms_.begin(), arms_.end(), [](const ArmModel& a) { return a.is_bernoulli(); });
}

PullOutcome pull(const BanditInstance& instance, std::size_t arm, RngStream& rng) {
  if (arm >= instance.size()) throw std::out_of_range("pull: arm index out of range");
  const ArmModel& model = instance.arm(arm);
  PullOutcome out;
  out.reward = model.reward.sample(rng);
  out.cost = model.cost.sample(rng);
  return out;
}

std::string to_string(InstanceFamily family) {
  return family == InstanceFamily::bernoulli ? "bernoulli" : "multinomial";
}

InstanceFamily parse_instance_family(const std::string& name) {
  if (name == "bernoulli") return InstanceFamily::bernoulli;
  if (name == "multinomial") return InstanceFamily::multinomial;
  throw std::invalid_argument("unknown instance family '" + name + "'");
}

namespace {

Distribution random_multinomial(RngStream& rng) {
  std::vector<double> support{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  std::vector<double> weights(support.size());
  double total = 0.0;
  for (double& w : weights) {
    // Unit exponentials normalised to a flat Dirichlet; 1 - u keeps the log finite.
    w = -std::log(1.0 - rng.next_unit());
    total += w;
  }
  for (double& w : weights) w /= total;
  return Distribution::multinomial(std::move(support), std::move(weights));
}

}  // namespace

BanditInstance generate_instance(std::uint64_t seed, std::size_t arms, InstanceFamily family) {
  if (arms < 2) throw std::invalid_argument("generate_instance: need at least two arms");
  RngStream rng(seed);
  std::vector<ArmModel> models;
  models.reserve(arms);
  for (std::size_t i = 0; i < arms; ++i) {
    if (family == InstanceFamily::bernoulli) {
      const double pr = 0.1 + 0.8 * rng.next_unit();
      const double pc = 0.1 + 0.8 * rng.next_unit();
      models.push_back({Distribution::bernoulli(pr), Distribution::bernoulli(pc)});
    } else {
      Distribution reward = random_multinomial(rng);
      Distribution cost = random_multinomial(rng);
      models.push_back({std::move(reward), std::move(cost)});
    }
  }
  return BanditInstance(std::move(models));
}

}  // namespace bmab
