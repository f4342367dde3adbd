#pragma once

#include <cmath>
#include <cstdint>

namespace wavexp {

/// Counter-based stream: replicate r under a given seed always yields the
/// same values, independent of how many workers are running or in what order
/// replicates complete. Generator: splitmix64 over a mixed (seed, stream)
/// state, with Box-Muller for normals.
class NormalStream {
 public:
  NormalStream(uint64_t seed, uint64_t stream)
      : state_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream))) {}

  uint64_t next_raw() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in (0, 1): never returns 0 (Box-Muller takes a log).
  double next_uniform() {
    return (static_cast<double>(next_raw() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  static constexpr const char* identifier() {
    return "splitmix64-boxmuller-v1";
  }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wavexp
