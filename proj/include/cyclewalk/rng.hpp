// rng.hpp - portable seeded random numbers.
//
// std::mt19937_64 has a fully specified output sequence, but the standard
// distributions do not, so the conversions to doubles and bounded integers
// are done here to keep generated graphs identical across toolchains.
#pragma once

#include <cstdint>
#include <random>

namespace cyclewalk {

inline constexpr const char* kRngName = "mt19937_64";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cyclewalk
