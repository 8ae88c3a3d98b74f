#pragma once

#include "areatrap/geometry.hpp"
#include "areatrap/sampler.hpp"

#include <cstdint>
#include <vector>

namespace areatrap::lpp {

using geometry::IncreasingPath;
using geometry::Point;
using geometry::Polyline;
using sampler::PointCloud;

struct GeodesicResult {
    std::int64_t length = 0;
    IncreasingPath path; // first vertex u, last vertex v
    Point u, v;
};

// Last passage time L(u,v): the maximum number of cloud points on a directed
// path from u to v. Longest-nondecreasing-subsequence on the rectangle's
// points in (x, then y) order, with a binary-indexed prefix-max over y-ranks.
// O(N log N). Points coinciding with u or v are not counted.
std::int64_t lpp_length(const PointCloud& cloud, const Point& u, const Point& v);

// The canonical maximizer: during backtracking from v, among optimal
// predecessors take the one with the largest y, then the largest x.
GeodesicResult topmost_geodesic(const PointCloud& cloud, const Point& u, const Point& v);

// Max vertical deviation of path vertices from the chord through (u,v).
double transversal_fluctuation(const IncreasingPath& path, const Point& u, const Point& v);

// L over paths restricted to the closed half-plane on/above the chord u-v.
// The half-plane is convex, so restricting the point set is exact.
GeodesicResult lpp_above_chord(const PointCloud& cloud, const Point& u, const Point& v);

// L(u,v;U) for a convex polygon U containing u and v.
GeodesicResult lpp_in_convex_region(const PointCloud& cloud, const Point& u, const Point& v,
                                    const Polyline& region);

// true iff the polygon (vertex list, either orientation) is convex.
bool is_convex_polygon(const std::vector<Point>& polygon);

// Closed-region membership test for a convex polygon.
bool convex_polygon_contains(const std::vector<Point>& polygon, const Point& p);

} // namespace areatrap::lpp
