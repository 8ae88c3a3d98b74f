#include "areatrap/roughness.hpp"

#include "areatrap/errors.hpp"

#include <algorithm>
#include <cmath>

namespace areatrap::roughness {

RoughnessReport analyze(const IncreasingPath& path, double delta) {
    if (!(delta >= 0.0) || !(delta < 3.14159265358979323846 / 4.0))
        fail(ErrorCode::invalid_parameter, "delta must lie in [0, pi/4)");
    geometry::validate_path(path);

    const double n = path.n;
    RoughnessReport report;
    report.delta = delta;

    const Polyline hull = geometry::least_concave_majorant(path);
    report.facets.reserve(hull.size() - 1);
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        Facet f;
        f.a = hull[i];
        f.b = hull[i + 1];
        f.euclid_length = std::hypot(f.b.x - f.a.x, f.b.y - f.a.y);
        f.angle_to_x = std::atan2(f.b.y - f.a.y, f.b.x - f.a.x);
        f.theta_lower = geometry::anchor_angles(f.a, n).theta_v;
        f.theta_upper = geometry::anchor_angles(f.b, n).theta_h;
        f.interior = std::min(f.theta_lower, f.theta_upper) >= delta;
        report.facets.push_back(f);
    }

    std::size_t first_interior = report.facets.size(), last_interior = 0;
    for (std::size_t i = 0; i < report.facets.size(); ++i) {
        const Facet& f = report.facets[i];
        report.mfl_all = std::max(report.mfl_all, f.euclid_length);
        if (f.interior) {
            report.mfl_interior = std::max(report.mfl_interior, f.euclid_length);
            first_interior = std::min(first_interior, i);
            last_interior = i;
        }
    }
    report.has_interior = first_interior < report.facets.size();
    if (report.has_interior) {
        report.interior_begin = report.facets[first_interior].a;
        report.interior_end = report.facets[last_interior].b;
    }

    for (std::size_t i = 1; i + 1 < path.vertices.size(); ++i) {
        const Point& v = path.vertices[i];
        const double dist = geometry::point_polyline_distance(v, hull);
        report.mlr_all = std::max(report.mlr_all, dist);
        if (report.has_interior && v.x >= report.interior_begin.x &&
            v.x <= report.interior_end.x)
            report.mlr_interior = std::max(report.mlr_interior, dist);
    }
    return report;
}

bool facet_angle_check(const RoughnessReport& report, double omega) {
    for (const Facet& f : report.facets)
        if (f.interior &&
            !(f.angle_to_x > omega && f.angle_to_x < 3.14159265358979323846 / 2.0 - omega))
            return false;
    return true;
}

GoodCheck is_good_alpha(const RoughnessReport& report, double n, double epsilon) {
    if (!(epsilon > 0.0)) fail(ErrorCode::invalid_parameter, "epsilon must be > 0");
    GoodCheck check;
    check.vacuous = !report.has_interior;
    check.good = report.mfl_interior <= std::pow(n, 0.75 + epsilon);
    return check;
}

ScanResult scan_good_alphas(const PointCloud& cloud, double alpha_lo, double alpha_hi,
                            int grid_count, double epsilon, double delta,
                            const constrained::SolveOptions& opts) {
    if (!(alpha_lo > 0.0) || !(alpha_hi < 0.5) || !(alpha_lo < alpha_hi))
        fail(ErrorCode::invalid_parameter, "need 0 < alpha_lo < alpha_hi < 1/2");
    if (grid_count < 1) fail(ErrorCode::invalid_parameter, "grid_count must be >= 1");

    std::vector<double> alphas;
    for (int i = 0; i < grid_count; ++i)
        alphas.push_back(grid_count == 1
                             ? alpha_lo
                             : alpha_lo + (alpha_hi - alpha_lo) * i / (grid_count - 1));

    struct Solved {
        bool ok = false;
        constrained::ConstrainedSolution sol;
    };
    std::vector<Solved> solved(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        try {
            solved[i].sol = constrained::solve_constrained(cloud, alphas[i], opts);
            solved[i].ok = true;
        } catch (const InfeasibleError&) {
            solved[i].ok = false;
        }
    }

    // A solution at alpha_j is feasible for every alpha_i < alpha_j; carry the
    // best forward so lengths are nonincreasing along the scan by construction.
    for (std::size_t i = alphas.size(); i-- > 1;) {
        if (!solved[i].ok) continue;
        Solved& lower = solved[i - 1];
        if (!lower.ok || solved[i].sol.length > lower.sol.length) {
            const auto keep_alpha = alphas[i - 1];
            if (!lower.ok) lower.sol = solved[i].sol;
            else if (solved[i].sol.length > lower.sol.length) lower.sol = solved[i].sol;
            lower.sol.alpha = keep_alpha;
            lower.sol.threshold = (0.5 + keep_alpha) * cloud.n * cloud.n;
            lower.ok = true;
        }
    }

    ScanResult result;
    result.rows.reserve(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        ScanRow row;
        row.alpha = alphas[i];
        row.solved = solved[i].ok;
        if (row.solved) {
            const RoughnessReport report = analyze(solved[i].sol.path, delta);
            const GoodCheck check = is_good_alpha(report, cloud.n, epsilon);
            row.good = check.good;
            row.vacuous = check.vacuous;
            row.length = solved[i].sol.length;
            row.mfl_interior = report.mfl_interior;
            row.mlr_interior = report.mlr_interior;
            result.any_good = result.any_good || row.good;
        }
        result.rows.push_back(row);
    }
    return result;
}

} // namespace areatrap::roughness
