#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace ilpbench {

/// Seeded generator with platform-independent sampling.
///
/// std::mt19937_64 has a fully specified output sequence, but the standard
/// distributions do not, so bounded draws and shuffles are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream derived from `seed` and a stage label.
  static Rng derive(std::uint64_t seed, std::string_view stage, std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  template <typename Container>
  auto& pick(Container& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finaliser, used to derive sub-seeds.
std::uint64_t mix_seed(std::uint64_t value);

}  // namespace ilpbench
