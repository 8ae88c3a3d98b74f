#include "areatrap/geometry.hpp"

#include "areatrap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace areatrap::geometry {

void validate_path(const IncreasingPath& path, bool full) {
    if (path.vertices.size() < 2)
        fail(ErrorCode::invalid_input, "path needs at least the two endpoints");
    if (!(path.n > 0.0) || !std::isfinite(path.n))
        fail(ErrorCode::invalid_input, "path box side must be positive and finite");
    const auto& v = path.vertices;
    for (const Point& p : v)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            fail(ErrorCode::invalid_input, "path vertex is not finite");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i].x < v[i - 1].x || v[i].y < v[i - 1].y)
            fail(ErrorCode::invalid_input, "path vertices must be coordinatewise nondecreasing");
    if (full) {
        if (v.front().x != 0.0 || v.front().y != 0.0)
            fail(ErrorCode::invalid_input, "path must start at (0,0)");
        if (v.back().x != path.n || v.back().y != path.n)
            fail(ErrorCode::invalid_input, "path must end at (n,n)");
    }
}

double trapped_area(const IncreasingPath& path) {
    const auto& v = path.vertices;
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        area += (v[i + 1].x - v[i].x) * (v[i].y + v[i + 1].y) * 0.5;
    return area;
}

int orientation(const Point& a, const Point& b, const Point& c) {
    const double t1 = (b.x - a.x) * (c.y - a.y);
    const double t2 = (b.y - a.y) * (c.x - a.x);
    const double cross = t1 - t2;
    const double scale = std::max(std::abs(t1), std::abs(t2));
    if (std::abs(cross) <= 1e-12 * scale) return 0;
    return cross > 0.0 ? 1 : -1;
}

Polyline least_concave_majorant(const IncreasingPath& path) {
    std::vector<Point> pts = path.vertices;
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    Polyline hull;
    hull.reserve(pts.size());
    for (const Point& p : pts) {
        // Upper chain: keep strict right turns only; collinear middle points
        // are popped so facets come out maximal.
        while (hull.size() >= 2 && orientation(hull[hull.size() - 2], hull.back(), p) >= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

namespace {

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0)
        t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    const double ex = a.x + t * dx - p.x;
    const double ey = a.y + t * dy - p.y;
    return std::hypot(ex, ey);
}

// Index of a segment whose x-range brackets x (polylines here are x-monotone).
std::size_t bracketing_segment(const Polyline& poly, double x) {
    std::size_t lo = 0, hi = poly.size() - 1; // invariant: segment in [lo, hi)
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (poly[mid].x <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace

double point_polyline_distance(const Point& p, const Polyline& poly) {
    if (poly.size() < 2)
        fail(ErrorCode::invalid_input, "polyline needs at least 2 points");
    // Start at the segment under p.x and widen while a segment's x-gap could
    // still beat the best distance. Near-linear for the x-monotone polylines
    // used throughout.
    const std::size_t start = bracketing_segment(poly, p.x);
    double best = point_segment_distance(p, poly[start], poly[start + 1]);
    for (std::size_t i = start; i-- > 0;) {
        if (p.x - poly[i + 1].x > best) break;
        best = std::min(best, point_segment_distance(p, poly[i], poly[i + 1]));
    }
    for (std::size_t i = start + 1; i + 1 < poly.size(); ++i) {
        if (poly[i].x - p.x > best) break;
        best = std::min(best, point_segment_distance(p, poly[i], poly[i + 1]));
    }
    return best;
}

double polyline_y_at(const Polyline& poly, double x) {
    if (poly.size() < 2)
        fail(ErrorCode::invalid_input, "polyline needs at least 2 points");
    if (x <= poly.front().x) return poly.front().y;
    if (x >= poly.back().x) return poly.back().y;
    const std::size_t i = bracketing_segment(poly, x);
    const Point& a = poly[i];
    const Point& b = poly[i + 1];
    if (b.x == a.x) return std::max(a.y, b.y);
    const double t = (x - a.x) / (b.x - a.x);
    return a.y + t * (b.y - a.y);
}

std::vector<double> vertex_roughness(const IncreasingPath& path, const Polyline& majorant) {
    std::vector<double> out;
    if (path.vertices.size() <= 2) return out;
    out.reserve(path.vertices.size() - 2);
    for (std::size_t i = 1; i + 1 < path.vertices.size(); ++i)
        out.push_back(point_polyline_distance(path.vertices[i], majorant));
    return out;
}

namespace {

std::vector<Point> sample_polyline(const Polyline& poly, double ds) {
    std::vector<Point> samples;
    samples.push_back(poly.front());
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[i + 1];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        const std::size_t pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / ds)));
        for (std::size_t k = 1; k <= pieces; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(pieces);
            samples.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return samples;
}

double directed_hausdorff(const Polyline& from, const Polyline& to, double ds) {
    double worst = 0.0;
    for (const Point& p : sample_polyline(from, ds))
        worst = std::max(worst, point_polyline_distance(p, to));
    return worst;
}

} // namespace

double hausdorff_distance(const Polyline& a, const Polyline& b, double ds) {
    if (!(ds > 0.0)) fail(ErrorCode::invalid_parameter, "hausdorff sampling step must be > 0");
    if (a.size() < 2 || b.size() < 2)
        fail(ErrorCode::invalid_input, "polyline needs at least 2 points");
    return std::max(directed_hausdorff(a, b, ds), directed_hausdorff(b, a, ds));
}

AnchorAngles anchor_angles(const Point& p, double n) {
    const double vx = p.x - n;
    const double vy = p.y;
    if (vx == 0.0 && vy == 0.0)
        fail(ErrorCode::degenerate_anchor, "anchor angles undefined at (n,0)");
    AnchorAngles a;
    a.theta_v = std::atan2(std::abs(vx), std::abs(vy));
    a.theta_h = std::atan2(std::abs(vy), std::abs(vx));
    return a;
}

} // namespace areatrap::geometry
