#pragma once

#include "areatrap/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace areatrap::sampler {

using geometry::Point;

// Master seed plus trial index; the per-trial stream seed is
// derive_seed(master_seed, trial_index) (SplitMix64 avalanche, see rng.hpp).
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;

    std::uint64_t stream_seed() const;
};

// The random environment: points sorted by (x, then y), all strictly inside
// [0,n]^2 when sampled (boundary points are tolerated on load only).
struct PointCloud {
    double n = 0.0;
    std::uint64_t seed = 0; // stream seed that generated the cloud
    std::vector<Point> points;

    std::size_t count() const { return points.size(); }
};

// Count ~ Poisson(n^2), positions i.i.d. uniform on (0,n)^2. A pure function
// of (n, seed): identical inputs give bitwise-identical clouds.
PointCloud sample_poisson_square(double n, const SeedSpec& seed);

// Cloud file, UTF-8 text:
//   # areatrap-cloud v1
//   # n=<decimal> seed=<u64> count=<int>
//   x,y
//   <x>,<y>            (shortest round-trip decimals, one row per point)
void save_cloud(const PointCloud& cloud, const std::string& path);
PointCloud load_cloud(const std::string& path);

std::string cloud_to_string(const PointCloud& cloud);
PointCloud cloud_from_string(const std::string& text, const std::string& origin);

} // namespace areatrap::sampler
