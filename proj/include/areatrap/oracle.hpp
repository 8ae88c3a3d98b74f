#pragma once

#include "areatrap/geometry.hpp"
#include "areatrap/sampler.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace areatrap::oracle {

using geometry::IncreasingPath;
using geometry::Point;
using sampler::PointCloud;

constexpr std::int64_t kDefaultCap = 12;
constexpr std::int64_t kHardCap = 20;

// Exhaustive max-chain size over all subsets of the rectangle's points.
std::int64_t brute_lpp(const PointCloud& cloud, const Point& u, const Point& v,
                       std::int64_t cap = kDefaultCap);

// Exhaustive max chain among points on/above the chord u-v.
std::int64_t brute_above_chord(const PointCloud& cloud, const Point& u, const Point& v,
                               std::int64_t cap = kDefaultCap);

// Exhaustive max chain among points inside the convex region.
std::int64_t brute_in_region(const PointCloud& cloud, const Point& u, const Point& v,
                             const std::vector<Point>& region, std::int64_t cap = kDefaultCap);

struct BruteConstrained {
    bool feasible = false;
    std::int64_t length = 0;       // max length over feasible chains
    double least_area = 0.0;       // min trapped area among max-length feasible chains
    double greatest_area = 0.0;    // max trapped area among max-length feasible chains
    IncreasingPath least_area_path;    // the paper-exact constrained geodesic at toy scale
    IncreasingPath greatest_area_path;
    double max_trappable_area = 0.0;   // over all chains, reported even when infeasible
};

// Enumerates every chain (including the empty path), keeps those trapping at
// least (1/2+alpha) n^2, and returns the extremal maximizers.
BruteConstrained brute_constrained(const PointCloud& cloud, double alpha,
                                   std::int64_t cap = kDefaultCap);

// Number of nonempty chains in the cloud (enumeration sanity: an antichain
// of k points has k, a chain of k points has 2^k - 1).
std::uint64_t count_chains(const PointCloud& cloud, std::int64_t cap = kDefaultCap);

} // namespace areatrap::oracle
