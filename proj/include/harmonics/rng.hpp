#pragma once

#include <cstdint>

namespace harmonics {

// SplitMix64 (Steele/Lea/Flood). Chosen because the whole algorithm fits in a
// dozen lines, so runs are reproducible across platforms and implementations
// from the documented constants alone.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, 2^53): exactly representable and convenient for
    /// exact inverse-CDF comparisons against rational thresholds.
    std::uint64_t next_u53() { return next() >> 11; }
};

/// Independent substream for task `id` under master `seed`.
/// state0 = mix(seed xor (id+1)*golden), with mix = the SplitMix64 step.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t id) {
    SplitMix64 seeder{seed ^ ((id + 1) * 0x9E3779B97F4A7C15ull)};
    return SplitMix64{seeder.next()};
}

}  // namespace harmonics
