#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "errors.hpp"

namespace mlpce {

// Deterministic random source. mt19937_64 has a standard-fixed output
// sequence; the bounded mappings are implemented here because the standard
// <random> distributions are not portable across library implementations.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Inclusive range, rejection sampling to stay unbiased.
  std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw ValidationError("uniform_u64: empty range");
    std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return next_u64();
    span += 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return lo + x % span;
  }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    uniform_u64(0, static_cast<std::uint64_t>(hi - lo)));
  }

  double uniform_real(double lo, double hi) {
    const double u =
        static_cast<double>(next_u64() >> 11) * 0x1.0p-53;  // [0,1)
    return lo + u * (hi - lo);
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    if (v.empty()) throw ValidationError("pick: empty vector");
    return v[uniform_u64(0, v.size() - 1)];
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace mlpce
