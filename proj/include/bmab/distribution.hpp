#pragma once

#include <span>
#include <string>
#include <vector>

#include "bmab/rng.hpp"

namespace bmab {

enum class DistributionKind { bernoulli, multinomial, fixed };

std::string to_string(DistributionKind kind);

/// A finite-support distribution on [0, 1] with a closed-form mean.
///
/// Immutable once constructed. Instances are built through the named
/// factories, which validate their parameters and throw
/// std::invalid_argument on violation.
class Distribution {
 public:
  static Distribution bernoulli(double p);
  static Distribution multinomial(std::vector<double> support, std::vector<double> probs);
  static Distribution fixed(double value);

  DistributionKind kind() const noexcept { return kind_; }

  /// Success probability for bernoulli, the point for fixed, the mean otherwise.
  double parameter() const noexcept { return parameter_; }

  std::span<const double> support() const noexcept { return support_; }
  std::span<const double> probs() const noexcept { return probs_; }

  double mean() const noexcept { return mean_; }
  double variance() const noexcept;

  /// One i.i.d. draw. Consumes exactly one word of `rng` for every kind,
  /// including fixed, so that stream positions do not depend on the kind.
  double sample(RngStream& rng) const;

 private:
  Distribution(DistributionKind kind, std::vector<double> support, std::vector<double> probs);

  DistributionKind kind_;
  double parameter_ = 0.0;
  double mean_ = 0.0;
  std::vector<double> support_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

inline double exact_mean(const Distribution& d) noexcept { return d.mean(); }

/// Returns 1 with probability exactly `x`. Consumes one word.
/// Throws std::invalid_argument if x is outside [0, 1].
int bernoulli_trial(double x, RngStream& rng);

}  // namespace bmab
