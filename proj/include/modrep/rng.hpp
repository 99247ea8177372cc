#pragma once

#include <cstdint>

namespace modrep {

/// SplitMix64 stream. Fully specified, so identical seeds reproduce identical
/// candidate streams on every platform; this is what makes reports replayable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound). bound = 0 is treated as the full range.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return next();
    return next() % bound;
  }

 private:
  std::uint64_t state_;
};

/// Deterministically derive a child seed, e.g. for recursion branches.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  Rng r(seed ^ (0x632be59bd9b4e019ULL + salt * 0x100000001b3ULL));
  return r.next();
}

}  // namespace modrep
