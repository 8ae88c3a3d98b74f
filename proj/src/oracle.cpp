#include "areatrap/oracle.hpp"

#include "areatrap/errors.hpp"

#include <algorithm>
#include <cmath>

namespace areatrap::oracle {

namespace {

void check_cap(std::size_t count, std::int64_t cap) {
    const std::int64_t limit = std::min(cap, kHardCap);
    if (static_cast<std::int64_t>(count) > limit)
        fail(ErrorCode::size_cap_exceeded,
             "oracle cap is " + std::to_string(limit) + " points, instance has " +
                 std::to_string(count));
}

// Deliberately separate from geometry::trapped_area: the oracle carries its
// own shoelace so a bug in the shared primitive cannot hide.
double shoelace_area(const std::vector<Point>& path_vertices) {
    double twice = 0.0;
    auto add = [&](const Point& a, const Point& b) { twice += a.x * b.y - b.x * a.y; };
    for (std::size_t i = 0; i + 1 < path_vertices.size(); ++i)
        add(path_vertices[i], path_vertices[i + 1]);
    const Point& last = path_vertices.back();
    const Point corner{last.x, 0.0};
    add(last, corner);
    add(corner, path_vertices.front());
    return std::abs(twice) * 0.5;
}

// Subset is a chain iff (in (x, then y) sorted order) its y's never decrease.
bool subset_is_chain(const std::vector<Point>& pts, std::uint32_t mask) {
    double prev_y = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!(mask & (1u << i))) continue;
        if (pts[i].y < prev_y) return false;
        prev_y = pts[i].y;
    }
    return true;
}

std::vector<Point> subset_points(const std::vector<Point>& pts, std::uint32_t mask) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (mask & (1u << i)) out.push_back(pts[i]);
    return out;
}

std::int64_t brute_filtered(std::vector<Point> pts, std::int64_t cap) {
    check_cap(pts.size(), cap);
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    std::int64_t best = 0;
    const std::uint32_t total = 1u << pts.size();
    for (std::uint32_t mask = 1; mask < total; ++mask)
        if (subset_is_chain(pts, mask))
            best = std::max<std::int64_t>(best, __builtin_popcount(mask));
    return best;
}

std::vector<Point> rectangle(const PointCloud& cloud, const Point& u, const Point& v) {
    std::vector<Point> pts;
    for (const Point& p : cloud.points)
        if (p.x >= u.x && p.x <= v.x && p.y >= u.y && p.y <= v.y &&
            !(p.x == u.x && p.y == u.y) && !(p.x == v.x && p.y == v.y))
            pts.push_back(p);
    return pts;
}

} // namespace

std::int64_t brute_lpp(const PointCloud& cloud, const Point& u, const Point& v,
                       std::int64_t cap) {
    if (!geometry::before_or_equal(u, v))
        fail(ErrorCode::invalid_order, "endpoints must satisfy u <= v coordinatewise");
    return brute_filtered(rectangle(cloud, u, v), cap);
}

std::int64_t brute_above_chord(const PointCloud& cloud, const Point& u, const Point& v,
                               std::int64_t cap) {
    if (!geometry::before_or_equal(u, v))
        fail(ErrorCode::invalid_order, "endpoints must satisfy u <= v coordinatewise");
    if (u.x == v.x) fail(ErrorCode::degenerate_chord, "chord must be non-vertical");
    std::vector<Point> pts = rectangle(cloud, u, v);
    const double slope = (v.y - u.y) / (v.x - u.x);
    std::erase_if(pts, [&](const Point& p) { return p.y < u.y + slope * (p.x - u.x); });
    return brute_filtered(std::move(pts), cap);
}

std::int64_t brute_in_region(const PointCloud& cloud, const Point& u, const Point& v,
                             const std::vector<Point>& region, std::int64_t cap) {
    if (!geometry::before_or_equal(u, v))
        fail(ErrorCode::invalid_order, "endpoints must satisfy u <= v coordinatewise");
    std::vector<Point> pts = rectangle(cloud, u, v);
    // independent membership test: p is inside iff it is never strictly
    // outside any edge's halfplane (checked against both orientations)
    auto inside = [&](const Point& p) {
        int sign = 0;
        for (std::size_t i = 0; i < region.size(); ++i) {
            const Point& a = region[i];
            const Point& b = region[(i + 1) % region.size()];
            const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            if (cross == 0.0) continue;
            const int s = cross > 0.0 ? 1 : -1;
            if (sign == 0) sign = s;
            else if (s != sign) return false;
        }
        return true;
    };
    std::erase_if(pts, [&](const Point& p) { return !inside(p); });
    return brute_filtered(std::move(pts), cap);
}

BruteConstrained brute_constrained(const PointCloud& cloud, double alpha, std::int64_t cap) {
    if (!(alpha > 0.0) || !(alpha < 0.5))
        fail(ErrorCode::invalid_parameter, "alpha must lie in (0, 1/2)");
    check_cap(cloud.points.size(), cap);
    const double n = cloud.n;
    const double threshold = (0.5 + alpha) * n * n;

    BruteConstrained out;
    out.length = -1;
    std::vector<Point> pts = cloud.points; // already (x, then y) sorted

    const std::uint32_t total = 1u << pts.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (!subset_is_chain(pts, mask)) continue;
        std::vector<Point> vertices;
        vertices.push_back({0.0, 0.0});
        for (const Point& p : subset_points(pts, mask)) vertices.push_back(p);
        vertices.push_back({n, n});
        const double area = shoelace_area(vertices);
        out.max_trappable_area = std::max(out.max_trappable_area, area);
        if (area < threshold) continue;
        const std::int64_t len = __builtin_popcount(mask);
        IncreasingPath path{n, vertices};
        if (len > out.length) {
            out.length = len;
            out.least_area = out.greatest_area = area;
            out.least_area_path = out.greatest_area_path = path;
        } else if (len == out.length) {
            if (area < out.least_area) {
                out.least_area = area;
                out.least_area_path = std::move(path);
            } else if (area > out.greatest_area) {
                out.greatest_area = area;
                out.greatest_area_path = std::move(path);
            }
        }
    }
    out.feasible = out.length >= 0;
    if (!out.feasible) out.length = 0;
    return out;
}

std::uint64_t count_chains(const PointCloud& cloud, std::int64_t cap) {
    check_cap(cloud.points.size(), cap);
    std::vector<Point> pts = cloud.points;
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    std::uint64_t chains = 0;
    const std::uint32_t total = 1u << pts.size();
    for (std::uint32_t mask = 1; mask < total; ++mask)
        if (subset_is_chain(pts, mask)) ++chains;
    return chains;
}

} // namespace areatrap::oracle
