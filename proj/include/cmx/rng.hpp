// rng.hpp
// Deterministic random draws for corpus splitting and synthetic data.
// mt19937_64 has a standard-mandated sequence and the draws below avoid
// distribution classes, so results are identical across platforms.

#ifndef CMX_RNG_HPP_
#define CMX_RNG_HPP_

#include <cstdint>
#include <random>

namespace cmx {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased integer in [0, n).
  std::size_t below(std::size_t n) {
    const std::uint64_t limit =
        UINT64_MAX - UINT64_MAX % static_cast<std::uint64_t>(n);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cmx

#endif  // CMX_RNG_HPP_
