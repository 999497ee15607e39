#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace heaps {

/// Seedable generator with platform-independent output. The engine is
/// std::mt19937_64, whose sequence is fixed by the C++ standard; the
/// std:: distributions are not, so all derived variates are computed here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform01_open_low() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). `bound` must be >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Fisher-Yates shuffle.
  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace heaps
