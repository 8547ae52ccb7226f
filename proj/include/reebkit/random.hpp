#pragma once

#include <cstdint>
#include <limits>

namespace reebkit {

/// SplitMix64 engine. Small state, so a fresh stream per sample index is cheap;
/// this is what keeps sampled integrals independent of evaluation order.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Independent stream for (master seed, index).
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
    return SplitMix64(mix() ^ index);
  }

 private:
  std::uint64_t state_;
};

}  // namespace reebkit
