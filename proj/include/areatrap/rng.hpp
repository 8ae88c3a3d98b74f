#pragma once

#include <cstdint>

namespace areatrap {

// SplitMix64 (Vigna, 2015; public-domain reference constants). Chosen as the
// project-wide generator because its output is a pure function of 64-bit
// integer state, so streams are bitwise reproducible across platforms.
// Reference first outputs from seed 0:
//   0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F
// (pinned in tests/test_sampler.cpp).
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += kGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0,1): (k + 1/2) * 2^-53 for k in [0, 2^53).
    // Never returns an exact 0 or 1, so scaled coordinates stay strictly
    // inside the box.
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) *
               (1.0 / 9007199254740992.0);
    }

    // Uniform on [0,1): k * 2^-53.
    double next01() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

private:
    std::uint64_t state_;
};

// Per-trial seed derivation: the (word+1)-th SplitMix64 output of a stream
// seeded at `seed`. Chaining derive_seed over (master, n_index, alpha_index,
// replicate) gives each trial an independent stream without perturbing
// neighbours when a grid axis is extended.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t word) {
    std::uint64_t z = seed + (word + 1) * SplitMix64::kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Poisson(mean) deviate, reproducible across platforms for a given stream.
// Inversion by sequential search for mean <= 1000 (split additively into
// chunks below 500 so exp(-mean) stays in normal double range); Hormann's
// PTRS transformed-rejection above. Boundary pinned in tests.
std::uint64_t poisson_draw(SplitMix64& rng, double mean);

} // namespace areatrap
