#pragma once

#include <cstddef>
#include <vector>

namespace areatrap::geometry {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline bool before_or_equal(const Point& a, const Point& b) {
    return a.x <= b.x && a.y <= b.y;
}

// Coordinatewise-nondecreasing vertex chain. The first and last vertices are
// the path endpoints; everything in between is an environment point.
struct IncreasingPath {
    double n = 0.0;
    std::vector<Point> vertices;

    // Interior vertex count, the path length |gamma|.
    std::size_t length() const {
        return vertices.size() >= 2 ? vertices.size() - 2 : 0;
    }
};

// At least 2 points, x nondecreasing.
using Polyline = std::vector<Point>;

// Throws on malformed input (fewer than 2 vertices, NaN/Inf, a decreasing
// step). `full` additionally requires endpoints (0,0) and (n,n).
void validate_path(const IncreasingPath& path, bool full = true);

// Area of the closed polygon bounded by the path, the x-axis and the
// vertical segment at x = n: sum of trapezoids (x_{i+1}-x_i)(y_i+y_{i+1})/2.
double trapped_area(const IncreasingPath& path);

// Least concave majorant of the path: the upper convex hull of its vertex
// set, built with the monotone-chain method on (x, then y) order. Collinear
// hull points are dropped, so every output segment is a maximal facet.
Polyline least_concave_majorant(const IncreasingPath& path);

// Euclidean distance from each interior path vertex to the majorant.
// The distance-to-hull function is convex along each path segment, so the
// per-vertex values carry the segment maxima (checked against dense segment
// sampling in tests).
std::vector<double> vertex_roughness(const IncreasingPath& path, const Polyline& majorant);

// Exact distance from one point to a polyline (min over segments).
double point_polyline_distance(const Point& p, const Polyline& poly);

// Vertical evaluation of an x-monotone polyline; clamps outside the x-range.
double polyline_y_at(const Polyline& poly, double x);

// Symmetric Hausdorff distance, sampled at arc-length spacing <= ds against
// exact point-to-polyline distances. Result is within ds of the true value;
// acceptance tolerances are far coarser than the default step.
double hausdorff_distance(const Polyline& a, const Polyline& b, double ds);

// Acute angles at the anchor O = (n,0): angle of (p - O) against the
// vertical line through O and against the horizontal line through O.
// theta_v + theta_h = pi/2.
struct AnchorAngles {
    double theta_v = 0.0;
    double theta_h = 0.0;
};
AnchorAngles anchor_angles(const Point& p, double n);

// Orientation of the triple (a,b,c) with a relative tolerance of 1e-12:
// +1 left turn, -1 right turn, 0 collinear. Poisson clouds have no exact
// degeneracies almost surely; the tolerance handles constructed fixtures.
int orientation(const Point& a, const Point& b, const Point& c);

} // namespace areatrap::geometry
