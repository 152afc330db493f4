#pragma once

#include <cstdint>

namespace scenbound {

// SplitMix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Counter-based per-trial stream: draw j of trial t is a hash of
// (seed, t, j). Streams carry no shared state, so trials reproduce
// bit-identically in any execution order and on any thread count.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t trial)
        : key_(mix64(seed + 0x9E3779B97F4A7C15ULL) ^ mix64(trial + 0xD1B54A32D192ED03ULL)) {}

    std::uint64_t next_u64() { return mix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

    // Uniform in [0, 1), 53 significant bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace scenbound
