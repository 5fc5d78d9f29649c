#pragma once

#include <cstdint>

namespace tsad {

/// SplitMix64: state advances by the 64-bit additive constant
/// 0x9E3779B97F4A7C15 and each output is finalized with two xor-shift
/// multiplies (0xBF58476D1CE4E5B9, 0x94D049BB133111EB). Every port of this
/// code base must reproduce the same stream bit-for-bit, which is why the
/// platform RNGs are not used anywhere seeds matter.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0. Rejection sampling, so unbiased.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = ~0ull - ~0ull % n;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    /// Fair coin: +1.0 or -1.0.
    double sign() { return (next() & 1ull) ? 1.0 : -1.0; }

private:
    std::uint64_t state_;
};

}  // namespace tsad
