#pragma once

#include "areatrap/constrained.hpp"
#include "areatrap/geometry.hpp"
#include "areatrap/sampler.hpp"

#include <cstdint>
#include <vector>

namespace areatrap::roughness {

using geometry::IncreasingPath;
using geometry::Point;
using geometry::Polyline;
using sampler::PointCloud;

// One maximal segment of the least concave majorant, a before b in
// increasing x. With O = (n,0), theta_lower is the acute angle that O->a
// makes with the vertical line through O and theta_upper the acute angle
// that O->b makes with the horizontal. The facet is delta-interior iff
// min(theta_lower, theta_upper) >= delta, which excludes facets pinned to
// either corner of the box: near (0,0) the upper angle collapses onto the
// horizontal, near (n,n) the lower angle collapses onto the vertical.
struct Facet {
    Point a, b;
    double euclid_length = 0.0;
    double angle_to_x = 0.0; // in [0, pi/2]
    double theta_lower = 0.0;
    double theta_upper = 0.0;
    bool interior = false;
};

struct RoughnessReport {
    std::vector<Facet> facets;
    double mfl_all = 0.0;
    double mfl_interior = 0.0;
    double mlr_all = 0.0;
    double mlr_interior = 0.0;
    double delta = 0.0;
    bool has_interior = false;
    Point interior_begin, interior_end; // extremities A0, B0 of the interior union
};

// Facet decomposition of the least concave majorant plus MFL/MLR statistics.
// mlr_interior is the max vertex roughness over the sub-path between the
// extremities of the delta-interior facet union (inclusive); distances are
// always measured to the full majorant.
RoughnessReport analyze(const IncreasingPath& path, double delta);

// true iff every delta-interior facet makes an angle with the x-axis inside
// (omega, pi/2 - omega). Vacuously true without interior facets.
bool facet_angle_check(const RoughnessReport& report, double omega);

struct GoodCheck {
    bool good = false;
    bool vacuous = false; // no interior facets; good by convention
};

// alpha is (n, epsilon, delta)-good iff mfl_interior <= n^(3/4+epsilon).
GoodCheck is_good_alpha(const RoughnessReport& report, double n, double epsilon);

struct ScanRow {
    double alpha = 0.0;
    bool solved = false;
    bool good = false;
    bool vacuous = false;
    std::int64_t length = 0;
    double mfl_interior = 0.0;
    double mlr_interior = 0.0;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    bool any_good = false;
};

// Solves the constrained problem at each grid alpha on one cloud and grades
// is_good_alpha. Solutions from larger alpha are feasible at smaller alpha,
// so lengths are back-propagated to keep the scan nonincreasing even when
// the Lagrangian mode leaves a gap. Per-alpha infeasibility is recorded,
// never fatal.
ScanResult scan_good_alphas(const PointCloud& cloud, double alpha_lo, double alpha_hi,
                            int grid_count, double epsilon, double delta,
                            const constrained::SolveOptions& opts = {});

} // namespace areatrap::roughness
