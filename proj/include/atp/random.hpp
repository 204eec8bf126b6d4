#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace atp {

/// Seedable generator with a fixed, platform-independent output sequence.
///
/// The engine is std::mt19937_64, whose sequence the C++ standard pins
/// down. Conversions to reals and bounded integers are done here rather
/// than with <random> distributions, whose algorithms vary between
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_closed() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). Requires bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of stream `stream` under `master`:
///   mix64(master ^ mix64(stream + 0x9E3779B97F4A7C15)).
/// Streams are independent of how many siblings exist, so adding simulated
/// children never changes earlier children's seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace atp
