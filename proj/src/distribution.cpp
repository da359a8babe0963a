#include "bmab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace bmab {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

std::string to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::bernoulli: return "bernoulli";
    case DistributionKind::multinomial: return "multinomial";
    case DistributionKind::fixed: return "fixed";
  }
  return "unknown";
}

Distribution::Distribution(DistributionKind kind, std::vector<double> support,
                           std::vector<double> probs)
    : kind_(kind), support_(std::move(support)), probs_(std::move(probs)) {
  cumulative_.reserve(probs_.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    mean_ += support_[k] * probs_[k];
    acc += probs_[k];
    cumulative_.push_back(acc);
  }
}

Distribution Distribution::bernoulli(double p) {
  if (!in_unit_interval(p)) throw std::invalid_argument("bernoulli: p must lie in [0, 1]");
  Distribution d(DistributionKind::bernoulli, {0.0, 1.0}, {1.0 - p, p});
  d.parameter_ = p;
  d.mean_ = p;
  return d;
}

Distribution Distribution::multinomial(std::vector<double> support, std::vector<double> probs) {
  if (support.empty()) throw std::invalid_argument("multinomial: support is empty");
  if (support.size() != probs.size())
    throw std::invalid_argument("multinomial: support and probs differ in length");
  double total = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (!in_unit_interval(support[k]))
      throw std::invalid_argument("multinomial: support values must lie in [0, 1]");
    if (!(probs[k] >= 0.0)) throw std::invalid_argument("multinomial: negative probability");
    total += probs[k];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("multinomial: probabilities must sum to 1 within 1e-12");
  Distribution d(DistributionKind::multinomial, std::move(support), std::move(probs));
  d.parameter_ = d.mean_;
  return d;
}

Distribution Distribution::fixed(double value) {
  if (!in_unit_interval(value)) throw std::invalid_argument("fixed: value must lie in [0, 1]");
  Distribution d(DistributionKind::fixed, {value}, {1.0});
  d.parameter_ = value;
  d.mean_ = value;
  return d;
}

double Distribution::variance() const noexcept {
  double second = 0.0;
  for (std::size_t k = 0; k < support_.size(); ++k) second += support_[k] * support_[k] * probs_[k];
  return std::max(0.0, second - mean_ * mean_);
}

double Distribution::sample(RngStream& rng) const {
  const double u = rng.next_unit();
  switch (kind_) {
    case DistributionKind::fixed:
      return parameter_;
    case DistributionKind::bernoulli:
      return u < parameter_ ? 1.0 : 0.0;
    case DistributionKind::multinomial:
      // The last category absorbs the rounding slack in the cumulative sums.
      for (std::size_t k = 0; k + 1 < cumulative_.size(); ++k)
        if (u < cumulative_[k]) return support_[k];
      return support_.back();
  }
  return parameter_;
}

int bernoulli_trial(double x, RngStream& rng) {
  if (!in_unit_interval(x)) throw std::invalid_argument("bernoulli_trial: x must lie in [0, 1]");
  return rng.next_unit() < x ? 1 : 0;
}

}  // namespace bmab
