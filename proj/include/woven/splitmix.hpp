#pragma once

#include <cstdint>

// SplitMix64: the 64-bit mixing generator with the standard constants.  It is
// tiny, fast, and -- unlike std::mt19937 / std::uniform_real_distribution --
// bit-reproducible across compilers and languages, which is what we need for
// seeded random duals and counterexample searches whose outputs are frozen in
// tests and reports.

namespace woven {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1), 53 bits of mantissa, exact halving semantics on all
    // IEEE-754 platforms.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform on [-scale, scale].
    double symmetric(double scale) {
        return scale * (2.0 * uniform01() - 1.0);
    }

private:
    std::uint64_t state_;
};

}  // namespace woven
