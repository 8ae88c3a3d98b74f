#include "areatrap/lpp.hpp"

#include "areatrap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace areatrap::lpp {

namespace {

bool in_rectangle(const Point& p, const Point& u, const Point& v) {
    return u.x <= p.x && p.x <= v.x && u.y <= p.y && p.y <= v.y;
}

bool same_point(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
}

void check_order(const Point& u, const Point& v) {
    if (!geometry::before_or_equal(u, v))
        fail(ErrorCode::invalid_order, "endpoints must satisfy u <= v coordinatewise");
}

// Prefix-max Fenwick tree over y-ranks.
class MaxBit {
public:
    explicit MaxBit(std::size_t size) : tree_(size + 1, 0) {}

    void update(std::size_t rank, std::int64_t value) {
        for (std::size_t i = rank + 1; i < tree_.size(); i += i & (~i + 1))
            tree_[i] = std::max(tree_[i], value);
    }

    std::int64_t prefix_max(std::size_t rank) const {
        std::int64_t best = 0;
        for (std::size_t i = rank + 1; i > 0; i -= i & (~i + 1))
            best = std::max(best, tree_[i]);
        return best;
    }

private:
    std::vector<std::int64_t> tree_;
};

// Longest chain lengths ending at each point; points must be sorted by
// (x, then y). len[i] = 1 + max{len[j] : j < i, y_j <= y_i}.
std::vector<std::int64_t> chain_lengths(const std::vector<Point>& pts) {
    std::vector<double> ys(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) ys[i] = pts[i].y;
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    MaxBit bit(ys.size());
    std::vector<std::int64_t> len(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::size_t rank = static_cast<std::size_t>(
            std::lower_bound(ys.begin(), ys.end(), pts[i].y) - ys.begin());
        len[i] = 1 + bit.prefix_max(rank);
        bit.update(rank, len[i]);
    }
    return len;
}

std::vector<Point> rectangle_points(const PointCloud& cloud, const Point& u, const Point& v) {
    std::vector<Point> pts;
    // cloud is sorted by (x, then y); the x-window is a contiguous run
    auto lo = std::lower_bound(cloud.points.begin(), cloud.points.end(), u.x,
                               [](const Point& p, double x) { return p.x < x; });
    for (auto it = lo; it != cloud.points.end() && it->x <= v.x; ++it)
        if (it->y >= u.y && it->y <= v.y && !same_point(*it, u) && !same_point(*it, v))
            pts.push_back(*it);
    return pts;
}

GeodesicResult solve_on_points(std::vector<Point> pts, const Point& u, const Point& v,
                               double box_side) {
    // pts must already be restricted to [u,v] and sorted by (x, then y)
    const std::vector<std::int64_t> len = chain_lengths(pts);
    std::int64_t total = 0;
    for (std::int64_t l : len) total = std::max(total, l);

    // Bucket by chain length, then walk down greedily: the topmost rule picks
    // the largest y (then largest x) among predecessors that still admit a
    // full-length completion.
    std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(total) + 1);
    for (std::size_t i = 0; i < pts.size(); ++i)
        buckets[static_cast<std::size_t>(len[i])].push_back(i);

    GeodesicResult result;
    result.u = u;
    result.v = v;
    result.length = total;
    std::vector<Point> chosen;
    Point bound = v;
    for (std::int64_t l = total; l >= 1; --l) {
        const auto& bucket = buckets[static_cast<std::size_t>(l)];
        bool found = false;
        Point best{};
        for (std::size_t idx : bucket) {
            const Point& p = pts[idx];
            if (!geometry::before_or_equal(p, bound)) continue;
            if (!found || p.y > best.y || (p.y == best.y && p.x > best.x)) {
                best = p;
                found = true;
            }
        }
        // len[i] = l guarantees a predecessor chain, so this cannot fail
        if (!found) fail(ErrorCode::internal, "geodesic backtrack lost its chain");
        chosen.push_back(best);
        bound = best;
    }
    std::reverse(chosen.begin(), chosen.end());

    result.path.n = box_side;
    result.path.vertices.reserve(chosen.size() + 2);
    result.path.vertices.push_back(u);
    for (const Point& p : chosen) result.path.vertices.push_back(p);
    result.path.vertices.push_back(v);
    return result;
}

} // namespace

std::int64_t lpp_length(const PointCloud& cloud, const Point& u, const Point& v) {
    check_order(u, v);
    std::vector<Point> pts = rectangle_points(cloud, u, v);
    std::int64_t best = 0;
    for (std::int64_t l : chain_lengths(pts)) best = std::max(best, l);
    return best;
}

GeodesicResult topmost_geodesic(const PointCloud& cloud, const Point& u, const Point& v) {
    check_order(u, v);
    return solve_on_points(rectangle_points(cloud, u, v), u, v, cloud.n);
}

double transversal_fluctuation(const IncreasingPath& path, const Point& u, const Point& v) {
    if (u.x == v.x)
        fail(ErrorCode::degenerate_chord, "transversal fluctuation needs a non-vertical chord");
    const double slope = (v.y - u.y) / (v.x - u.x);
    double worst = 0.0;
    for (const Point& p : path.vertices) {
        const double chord_y = u.y + slope * (p.x - u.x);
        worst = std::max(worst, std::abs(chord_y - p.y));
    }
    return worst;
}

GeodesicResult lpp_above_chord(const PointCloud& cloud, const Point& u, const Point& v) {
    check_order(u, v);
    if (u.x == v.x)
        fail(ErrorCode::degenerate_chord, "above-chord restriction needs a non-vertical chord");
    const double slope = (v.y - u.y) / (v.x - u.x);
    std::vector<Point> pts = rectangle_points(cloud, u, v);
    std::erase_if(pts, [&](const Point& p) {
        return p.y < u.y + slope * (p.x - u.x);
    });
    return solve_on_points(std::move(pts), u, v, cloud.n);
}

bool is_convex_polygon(const std::vector<Point>& polygon) {
    if (polygon.size() < 3) return false;
    int sign = 0;
    const std::size_t m = polygon.size();
    for (std::size_t i = 0; i < m; ++i) {
        const int o = geometry::orientation(polygon[i], polygon[(i + 1) % m], polygon[(i + 2) % m]);
        if (o == 0) continue;
        if (sign == 0)
            sign = o;
        else if (o != sign)
            return false;
    }
    return sign != 0;
}

bool convex_polygon_contains(const std::vector<Point>& polygon, const Point& p) {
    int sign = 0;
    const std::size_t m = polygon.size();
    for (std::size_t i = 0; i < m; ++i) {
        const int o = geometry::orientation(polygon[i], polygon[(i + 1) % m], p);
        if (o == 0) continue;
        if (sign == 0)
            sign = o;
        else if (o != sign)
            return false;
    }
    return true;
}

GeodesicResult lpp_in_convex_region(const PointCloud& cloud, const Point& u, const Point& v,
                                    const Polyline& region) {
    check_order(u, v);
    if (!is_convex_polygon(region))
        fail(ErrorCode::invalid_region, "region must be a convex polygon");
    if (!convex_polygon_contains(region, u) || !convex_polygon_contains(region, v))
        fail(ErrorCode::invalid_endpoint, "endpoints must lie inside the region");
    std::vector<Point> pts = rectangle_points(cloud, u, v);
    std::erase_if(pts, [&](const Point& p) { return !convex_polygon_contains(region, p); });
    return solve_on_points(std::move(pts), u, v, cloud.n);
}

} // namespace areatrap::lpp
