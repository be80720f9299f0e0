#ifndef WARPCURV_RNG_HPP
#define WARPCURV_RNG_HPP

#include <cstdint>
#include <random>

namespace warpcurv {

/// Seeded random stream with a fixed uint64 -> double conversion, so that
/// sampled values are identical across standard library implementations
/// (std::uniform_real_distribution is not portable bit-for-bit).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) { return gen_() % n; }

private:
  std::mt19937_64 gen_;
};

} // namespace warpcurv

#endif
