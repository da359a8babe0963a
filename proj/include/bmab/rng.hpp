#pragma once

#include <cstdint>
#include <random>

namespace bmab {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Small counter-based generator used for sub-streams. Each call to next()
/// advances the state by the golden-ratio increment and returns mix64 of it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  std::uint64_t next() noexcept;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double next_open_unit() noexcept;

 private:
  std::uint64_t state_;
};

/// Deterministic pseudo-random stream owned by a single run.
///
/// The stream is a std::mt19937_64 seeded with one 64-bit value; the engine's
/// output sequence is fixed by the C++ standard, so a seed reproduces the same
/// words on every conforming platform. No std::*_distribution is used anywhere
/// in the library because their algorithms are implementation-defined.
///
/// Every sampling primitive in this library consumes exactly one 64-bit word
/// from the stream; rejection samplers run on a SplitMix64 sub-stream seeded
/// from that word.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_word() { return engine_(); }

  /// Uniform on [0, 1): the top 53 bits of one word.
  double next_unit() { return static_cast<double>(next_word() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Exact Beta(alpha, beta) draw for alpha, beta >= 1, as X / (X + Y) with
/// X ~ Gamma(alpha), Y ~ Gamma(beta) (Marsaglia-Tsang). Consumes one word.
double sample_beta(double alpha, double beta, RngStream& rng);

/// Gamma(shape, 1) for shape >= 1 on a sub-stream.
double sample_gamma(double shape, SplitMix64& sub);

}  // namespace bmab
