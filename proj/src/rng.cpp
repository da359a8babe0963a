#include "bmab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bmab {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t SplitMix64::next() noexcept {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

double SplitMix64::next_open_unit() noexcept {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

namespace {

// Box-Muller, cosine branch only; the sine branch is discarded so that the
// sampler keeps no hidden state between calls.
double standard_normal(SplitMix64& sub) {
  const double u1 = sub.next_open_unit();
  const double u2 = sub.next_open_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

double sample_gamma(double shape, SplitMix64& sub) {
  if (!(shape >= 1.0)) throw std::invalid_argument("sample_gamma: shape must be >= 1");
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = standard_normal(sub);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = sub.next_open_unit();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_beta(double alpha, double beta, RngStream& rng) {
  SplitMix64 sub(rng.next_word());
  const double x = sample_gamma(alpha, sub);
  const double y = sample_gamma(beta, sub);
  return x / (x + y);
}

}  // namespace bmab
