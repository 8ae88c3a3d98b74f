#pragma once

#include "areatrap/geometry.hpp"
#include "areatrap/rng.hpp"
#include "areatrap/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace testutil {

using areatrap::SplitMix64;
using areatrap::geometry::IncreasingPath;
using areatrap::geometry::Point;
using areatrap::geometry::Polyline;

// Random increasing path from (0,0) to (n,n) with `count` interior vertices.
inline IncreasingPath random_path(double n, int count, SplitMix64& rng) {
    std::vector<double> xs(count), ys(count);
    for (double& v : xs) v = n * rng.next_open01();
    for (double& v : ys) v = n * rng.next_open01();
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    IncreasingPath path;
    path.n = n;
    path.vertices.push_back({0.0, 0.0});
    for (int i = 0; i < count; ++i) path.vertices.push_back({xs[i], ys[i]});
    path.vertices.push_back({n, n});
    return path;
}

// Uniform cloud with an exact point count (oracle fixtures, not Poisson).
inline areatrap::sampler::PointCloud uniform_cloud(double n, int count, SplitMix64& rng) {
    areatrap::sampler::PointCloud cloud;
    cloud.n = n;
    for (int i = 0; i < count; ++i)
        cloud.points.push_back({n * rng.next_open01(), n * rng.next_open01()});
    std::sort(cloud.points.begin(), cloud.points.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return cloud;
}

// Independent shoelace on the closed polygon (path + drop to the x-axis).
inline double shoelace_trapped_area(const std::vector<Point>& vertices) {
    double twice = 0.0;
    auto add = [&](const Point& a, const Point& b) { twice += a.x * b.y - b.x * a.y; };
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) add(vertices[i], vertices[i + 1]);
    const Point corner{vertices.back().x, 0.0};
    add(vertices.back(), corner);
    add(corner, vertices.front());
    return std::abs(twice) * 0.5;
}

// O(N^3) upper hull: a point survives iff no segment between two other
// points passes strictly above it. Independent of the monotone-chain code.
inline Polyline brute_upper_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    Polyline hull;
    for (const Point& p : pts) {
        bool covered = false;
        for (const Point& a : pts) {
            for (const Point& b : pts) {
                if (a.x >= b.x || p.x < a.x || p.x > b.x) continue;
                const double t = (p.x - a.x) / (b.x - a.x);
                const double line_y = a.y + t * (b.y - a.y);
                if (line_y > p.y + 1e-12 * (1.0 + std::abs(line_y))) covered = true;
            }
        }
        if (!covered) hull.push_back(p);
    }
    // drop collinear interior points so facets are maximal
    Polyline out;
    for (const Point& p : hull) {
        while (out.size() >= 2) {
            const Point& a = out[out.size() - 2];
            const Point& b = out.back();
            const double t1 = (b.x - a.x) * (p.y - a.y);
            const double t2 = (b.y - a.y) * (p.x - a.x);
            if (std::abs(t1 - t2) <= 1e-9 * std::max(std::abs(t1), std::abs(t2)))
                out.pop_back();
            else
                break;
        }
        out.push_back(p);
    }
    return out;
}

// Exact distance from a point to a segment, reimplemented for cross-checks.
inline double ref_point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(a.x + t * dx - p.x, a.y + t * dy - p.y);
}

inline double ref_point_polyline_distance(const Point& p, const Polyline& poly) {
    double best = 1e300;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i)
        best = std::min(best, ref_point_segment_distance(p, poly[i], poly[i + 1]));
    return best;
}

} // namespace testutil
