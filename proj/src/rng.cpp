#include "areatrap/rng.hpp"

#include "areatrap/errors.hpp"

#include <cmath>
#include <vector>

namespace areatrap {
namespace {

// log(k!) without libm lgamma: cumulative table below 1024, Stirling series
// above. Fixed summation order keeps the table identical on every platform.
double log_factorial(std::uint64_t k) {
    static const std::vector<double> table = [] {
        std::vector<double> t(1024);
        t[0] = 0.0;
        for (std::size_t i = 1; i < t.size(); ++i)
            t[i] = t[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    if (k < table.size()) return table[k];
    const double x = static_cast<double>(k);
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    return x * std::log(x) - x + 0.5 * std::log(2.0 * 3.14159265358979323846 * x) +
           inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0)));
}

// Sequential-search inversion; valid while exp(-mean) is a normal double.
std::uint64_t poisson_inversion(SplitMix64& rng, double mean) {
    const double u = rng.next01();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u > cdf) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
        if (p <= 0.0) break; // u in the far tail; cdf saturated
    }
    return k;
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables", algorithm PTRS. Valid for mean >= 10.
std::uint64_t poisson_ptrs(SplitMix64& rng, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.next01() - 0.5;
        const double v = rng.next01();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const std::uint64_t k = static_cast<std::uint64_t>(kf);
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = kf * loglam - mean - log_factorial(k);
        if (lhs <= rhs) return k;
    }
}

} // namespace

std::uint64_t poisson_draw(SplitMix64& rng, double mean) {
    if (!(mean >= 0.0)) fail(ErrorCode::invalid_parameter, "poisson mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean <= 1000.0) {
        // Additive split keeps exp(-chunk) in normal range for the whole
        // inversion regime (exp(-500) ~ 7e-218).
        if (mean > 500.0) {
            const double half = mean * 0.5;
            return poisson_inversion(rng, half) + poisson_draw(rng, mean - half);
        }
        return poisson_inversion(rng, mean);
    }
    return poisson_ptrs(rng, mean);
}

} // namespace areatrap
