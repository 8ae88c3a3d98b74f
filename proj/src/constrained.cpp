#include "areatrap/constrained.hpp"

#include "areatrap/errors.hpp"
#include "areatrap/textio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace areatrap::constrained {

using geometry::Point;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double trapezoid(double xa, double ya, double xb, double yb) {
    return (xb - xa) * (ya + yb) * 0.5;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 0.5))
        fail(ErrorCode::invalid_parameter, "alpha must lie in (0, 1/2)");
}

// Shared DP scaffold over the cloud points in (x, then y) order with a
// virtual source (0,0) at index 0 and the sink (n,n) handled separately.
struct DpArrays {
    std::vector<double> x, y;
    std::size_t size = 0; // = N + 1

    explicit DpArrays(const PointCloud& cloud) {
        size = cloud.points.size() + 1;
        x.resize(size);
        y.resize(size);
        x[0] = 0.0;
        y[0] = 0.0;
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
            x[i + 1] = cloud.points[i].x;
            y[i + 1] = cloud.points[i].y;
        }
    }
};

IncreasingPath rebuild_path(const DpArrays& d, const std::vector<std::int32_t>& parent,
                            std::int32_t last, double n) {
    std::vector<Point> rev;
    for (std::int32_t i = last; i > 0; i = parent[static_cast<std::size_t>(i)])
        rev.push_back({d.x[static_cast<std::size_t>(i)], d.y[static_cast<std::size_t>(i)]});
    IncreasingPath path;
    path.n = n;
    path.vertices.push_back({0.0, 0.0});
    path.vertices.insert(path.vertices.end(), rev.rbegin(), rev.rend());
    path.vertices.push_back({n, n});
    return path;
}

} // namespace

const char* method_name(SolveMethod m) {
    switch (m) {
        case SolveMethod::lagrangian: return "lagrangian";
        case SolveMethod::exact: return "exact";
        case SolveMethod::auto_select: return "auto";
    }
    return "?";
}

SolveMethod method_from_name(const std::string& name) {
    if (name == "lagrangian") return SolveMethod::lagrangian;
    if (name == "exact") return SolveMethod::exact;
    if (name == "auto") return SolveMethod::auto_select;
    fail(ErrorCode::invalid_parameter, "unknown solve method '" + name + "'");
}

LagrangianOutcome lagrangian_best(const PointCloud& cloud, double lambda) {
    if (!(lambda >= 0.0))
        fail(ErrorCode::invalid_parameter, "lambda must be >= 0");
    const double n = cloud.n;
    const DpArrays d(cloud);
    const std::size_t m = d.size;

    // f = score of the best path ending at i (i counted), a = its area.
    std::vector<double> f(m, kNegInf), a(m, kNegInf);
    std::vector<std::int32_t> parent(m, -1);
    f[0] = 0.0;
    a[0] = 0.0;

    for (std::size_t i = 1; i < m; ++i) {
        const double xi = d.x[i], yi = d.y[i];
        double best_score = kNegInf, best_area = kNegInf;
        std::int32_t best_j = -1;
        for (std::size_t j = 0; j < i; ++j) {
            if (d.y[j] > yi) continue;
            const double inc = trapezoid(d.x[j], d.y[j], xi, yi);
            const double cand = f[j] + 1.0 + lambda * inc;
            if (cand < best_score) continue;
            const double cand_area = a[j] + inc;
            if (cand > best_score || cand_area > best_area ||
                (cand_area == best_area &&
                 (d.y[j] > d.y[static_cast<std::size_t>(best_j)] ||
                  (d.y[j] == d.y[static_cast<std::size_t>(best_j)] &&
                   d.x[j] > d.x[static_cast<std::size_t>(best_j)])))) {
                best_score = cand;
                best_area = cand_area;
                best_j = static_cast<std::int32_t>(j);
            }
        }
        f[i] = best_score;
        a[i] = best_area;
        parent[i] = best_j;
    }

    // Sink step: no point is collected at (n,n).
    double best_score = kNegInf, best_area = kNegInf;
    std::int32_t best_j = -1;
    for (std::size_t j = 0; j < m; ++j) {
        if (d.y[j] > n) continue;
        const double inc = trapezoid(d.x[j], d.y[j], n, n);
        const double cand = f[j] + lambda * inc;
        if (cand < best_score) continue;
        const double cand_area = a[j] + inc;
        if (cand > best_score || cand_area > best_area ||
            (cand_area == best_area &&
             (d.y[j] > d.y[static_cast<std::size_t>(best_j)] ||
              (d.y[j] == d.y[static_cast<std::size_t>(best_j)] &&
               d.x[j] > d.x[static_cast<std::size_t>(best_j)])))) {
            best_score = cand;
            best_area = cand_area;
            best_j = static_cast<std::int32_t>(j);
        }
    }

    LagrangianOutcome out;
    out.lambda = lambda;
    out.path = rebuild_path(d, parent, best_j, n);
    out.length = static_cast<std::int64_t>(out.path.length());
    out.area = geometry::trapped_area(out.path);
    out.score = static_cast<double>(out.length) + lambda * out.area;
    if (std::abs(out.score - best_score) > 1e-9 * (1.0 + std::abs(out.score)))
        fail(ErrorCode::internal, "lagrangian DP score drifted from its path");
    return out;
}

double max_trappable_area(const PointCloud& cloud) {
    const double n = cloud.n;
    const DpArrays d(cloud);
    const std::size_t m = d.size;

    std::vector<double> area(m, kNegInf);
    std::vector<std::int64_t> count(m, 0);
    area[0] = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        const double xi = d.x[i], yi = d.y[i];
        double best = kNegInf;
        std::int64_t best_count = -1;
        for (std::size_t j = 0; j < i; ++j) {
            if (d.y[j] > yi) continue;
            const double cand = area[j] + trapezoid(d.x[j], d.y[j], xi, yi);
            const std::int64_t cand_count = count[j] + 1;
            if (cand > best || (cand == best && cand_count > best_count)) {
                best = cand;
                best_count = cand_count;
            }
        }
        area[i] = best;
        count[i] = best_count;
    }
    double best = kNegInf;
    for (std::size_t j = 0; j < m; ++j)
        best = std::max(best, area[j] + trapezoid(d.x[j], d.y[j], n, n));
    return best;
}

namespace {

// Max-area path realizing max_trappable_area, seed for greedy_augment.
IncreasingPath max_area_path(const PointCloud& cloud) {
    const double n = cloud.n;
    const DpArrays d(cloud);
    const std::size_t m = d.size;
    std::vector<double> area(m, kNegInf);
    std::vector<std::int64_t> count(m, 0);
    std::vector<std::int32_t> parent(m, -1);
    area[0] = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        const double xi = d.x[i], yi = d.y[i];
        for (std::size_t j = 0; j < i; ++j) {
            if (d.y[j] > yi) continue;
            const double cand = area[j] + trapezoid(d.x[j], d.y[j], xi, yi);
            const std::int64_t cand_count = count[j] + 1;
            if (cand > area[i] || (cand == area[i] && cand_count > count[i])) {
                area[i] = cand;
                count[i] = cand_count;
                parent[i] = static_cast<std::int32_t>(j);
            }
        }
    }
    double best = kNegInf;
    std::int32_t best_j = -1;
    std::int64_t best_count = -1;
    for (std::size_t j = 0; j < m; ++j) {
        const double cand = area[j] + trapezoid(d.x[j], d.y[j], n, n);
        if (cand > best || (cand == best && count[j] > best_count)) {
            best = cand;
            best_j = static_cast<std::int32_t>(j);
            best_count = count[j];
        }
    }
    return rebuild_path(d, parent, best_j, n);
}

} // namespace

IncreasingPath greedy_augment(const PointCloud& cloud, IncreasingPath path, double threshold) {
    double area = geometry::trapped_area(path);
    if (area < threshold) return path;

    std::vector<char> used(cloud.points.size(), 0);
    for (const Point& v : path.vertices)
        for (std::size_t k = 0; k < cloud.points.size(); ++k)
            if (!used[k] && cloud.points[k].x == v.x && cloud.points[k].y == v.y) used[k] = 1;

    for (;;) {
        std::size_t best_k = cloud.points.size();
        std::size_t best_pos = 0;
        double best_delta = kNegInf;
        for (std::size_t k = 0; k < cloud.points.size(); ++k) {
            if (used[k]) continue;
            const Point& p = cloud.points[k];
            // unique slot by x; the y window decides insertability
            auto it = std::upper_bound(path.vertices.begin(), path.vertices.end(), p.x,
                                       [](double x, const Point& q) { return x < q.x; });
            if (it == path.vertices.begin() || it == path.vertices.end()) continue;
            const Point& b = *it;
            const Point& a = *(it - 1);
            if (!(a.y <= p.y && p.y <= b.y)) continue;
            const double delta = trapezoid(a.x, a.y, p.x, p.y) + trapezoid(p.x, p.y, b.x, b.y) -
                                 trapezoid(a.x, a.y, b.x, b.y);
            if (area + delta < threshold) continue;
            if (delta > best_delta) {
                best_delta = delta;
                best_k = k;
                best_pos = static_cast<std::size_t>(it - path.vertices.begin());
            }
        }
        if (best_k == cloud.points.size()) break;
        path.vertices.insert(path.vertices.begin() + static_cast<std::ptrdiff_t>(best_pos),
                             cloud.points[best_k]);
        used[best_k] = 1;
        area += best_delta;
    }
    return path;
}

ConstrainedSolution exact_length_area_dp(const PointCloud& cloud, double alpha,
                                         std::int64_t size_cap) {
    check_alpha(alpha);
    const auto point_count = static_cast<std::int64_t>(cloud.points.size());
    if (point_count > size_cap)
        fail(ErrorCode::size_cap_exceeded,
             "exact DP cap is " + std::to_string(size_cap) + " points, cloud has " +
                 std::to_string(point_count));

    const double n = cloud.n;
    const double threshold = (0.5 + alpha) * n * n;
    const DpArrays d(cloud);
    const std::size_t m = d.size;

    // reach[i]: longest chain ending at i; feasible lengths at i are 1..reach[i].
    std::vector<std::int64_t> reach(m, 0);
    for (std::size_t i = 1; i < m; ++i) {
        std::int64_t r = 1;
        for (std::size_t j = 1; j < i; ++j)
            if (d.y[j] <= d.y[i]) r = std::max(r, reach[j] + 1);
        reach[i] = r;
    }
    std::int64_t lmax = 0;
    for (std::size_t i = 1; i < m; ++i) lmax = std::max(lmax, reach[i]);

    const std::size_t stride = static_cast<std::size_t>(lmax) + 1;
    std::vector<double> g(m * stride, kNegInf); // g[i*stride + len]
    std::vector<std::int32_t> par(m * stride, -1);
    g[0 * stride + 0] = 0.0;

    for (std::size_t i = 1; i < m; ++i) {
        const double xi = d.x[i], yi = d.y[i];
        double* gi = &g[i * stride];
        std::int32_t* pi = &par[i * stride];
        // from the source
        gi[1] = trapezoid(0.0, 0.0, xi, yi);
        pi[1] = 0;
        for (std::size_t j = 1; j < i; ++j) {
            if (d.y[j] > yi) continue;
            const double inc = trapezoid(d.x[j], d.y[j], xi, yi);
            const double* gj = &g[j * stride];
            const std::int64_t top = reach[j];
            for (std::int64_t len = 1; len <= top; ++len) {
                const double cand = gj[len] + inc;
                if (cand > gi[len + 1]) {
                    gi[len + 1] = cand;
                    pi[len + 1] = static_cast<std::int32_t>(j);
                }
            }
        }
    }

    // close at the sink
    std::vector<double> sink(static_cast<std::size_t>(lmax) + 1, kNegInf);
    std::vector<std::int32_t> sink_par(static_cast<std::size_t>(lmax) + 1, -1);
    sink[0] = n * n * 0.5;
    sink_par[0] = 0;
    for (std::size_t j = 1; j < m; ++j) {
        const double inc = trapezoid(d.x[j], d.y[j], n, n);
        const double* gj = &g[j * stride];
        for (std::int64_t len = 1; len <= reach[j]; ++len) {
            const double cand = gj[len] + inc;
            if (cand > sink[static_cast<std::size_t>(len)]) {
                sink[static_cast<std::size_t>(len)] = cand;
                sink_par[static_cast<std::size_t>(len)] = static_cast<std::int32_t>(j);
            }
        }
    }

    std::int64_t best_len = -1;
    for (std::int64_t len = lmax; len >= 0; --len) {
        if (sink[static_cast<std::size_t>(len)] >= threshold) {
            best_len = len;
            break;
        }
    }
    if (best_len < 0) {
        double frontier = kNegInf;
        for (double v : sink) frontier = std::max(frontier, v);
        throw InfeasibleError("no increasing path traps the requested area", frontier);
    }

    ConstrainedSolution sol;
    sol.alpha = alpha;
    sol.threshold = threshold;
    sol.method = SolveMethod::exact;
    sol.length = best_len;
    sol.upper_bound = static_cast<double>(best_len);
    sol.gap = 0;

    // walk parents from the sink at the chosen length
    std::vector<Point> rev;
    std::int32_t node = sink_par[static_cast<std::size_t>(best_len)];
    std::int64_t len = best_len;
    while (node > 0) {
        rev.push_back({d.x[static_cast<std::size_t>(node)], d.y[static_cast<std::size_t>(node)]});
        node = par[static_cast<std::size_t>(node) * stride + static_cast<std::size_t>(len)];
        --len;
    }
    sol.path.n = n;
    sol.path.vertices.push_back({0.0, 0.0});
    sol.path.vertices.insert(sol.path.vertices.end(), rev.rbegin(), rev.rend());
    sol.path.vertices.push_back({n, n});
    sol.achieved_area = geometry::trapped_area(sol.path);
    return sol;
}

namespace {

struct Candidate {
    std::int64_t length = -1;
    double area = 0.0;
    IncreasingPath path;
};

void offer(Candidate& best, std::int64_t length, double area, const IncreasingPath& path) {
    if (length > best.length || (length == best.length && area < best.area)) {
        best.length = length;
        best.area = area;
        best.path = path;
    }
}

ConstrainedSolution solve_lagrangian(const PointCloud& cloud, double alpha,
                                     const SolveOptions& opts) {
    const double n = cloud.n;
    const double threshold = (0.5 + alpha) * n * n;
    const double lambda_tol = opts.lambda_tol > 0.0 ? opts.lambda_tol : 1e-6 / n;
    const double lambda_max = opts.lambda_max > 0.0 ? opts.lambda_max : 4.0 / n;

    ConstrainedSolution sol;
    sol.alpha = alpha;
    sol.threshold = threshold;
    sol.method = SolveMethod::lagrangian;

    Candidate best;
    double dual_bound = std::numeric_limits<double>::infinity();
    auto probe = [&](double lambda) {
        LagrangianOutcome out = lagrangian_best(cloud, lambda);
        sol.dual_samples.emplace_back(lambda, out.score);
        dual_bound = std::min(dual_bound, out.score - lambda * threshold);
        const bool feasible = out.area >= threshold;
        if (feasible) offer(best, out.length, out.area, out.path);
        // weak duality must hold for every feasible candidate at every sample
        if (best.length >= 0 &&
            static_cast<double>(best.length) > dual_bound + 1e-6 * (1.0 + std::abs(dual_bound)))
            fail(ErrorCode::internal, "weak duality violated by a bisection iterate");
        return feasible;
    };

    if (!probe(0.0)) {
        if (!probe(lambda_max)) {
            // no feasible optimizer on the bracket: repair
            const double frontier = max_trappable_area(cloud);
            if (frontier < threshold)
                throw InfeasibleError("no increasing path traps the requested area", frontier);
            if (static_cast<std::int64_t>(cloud.points.size()) <= opts.exact_cap)
                return exact_length_area_dp(cloud, alpha, opts.exact_cap);
            IncreasingPath repaired = greedy_augment(cloud, max_area_path(cloud), threshold);
            offer(best, static_cast<std::int64_t>(repaired.length()),
                  geometry::trapped_area(repaired), repaired);
        } else {
            double lo = 0.0, hi = lambda_max;
            for (int it = 0; it < opts.max_bisect && hi - lo > lambda_tol; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (probe(mid))
                    hi = mid;
                else
                    lo = mid;
            }
        }
    }

    sol.length = best.length;
    sol.path = best.path;
    sol.achieved_area = best.area;
    sol.upper_bound = dual_bound;
    sol.gap = std::max<std::int64_t>(
        0, static_cast<std::int64_t>(std::floor(dual_bound + 1e-9)) - best.length);
    return sol;
}

} // namespace

ConstrainedSolution solve_constrained(const PointCloud& cloud, double alpha,
                                      const SolveOptions& opts) {
    check_alpha(alpha);
    SolveMethod mode = opts.mode;
    if (mode == SolveMethod::auto_select)
        mode = static_cast<std::int64_t>(cloud.points.size()) <= opts.exact_cap
                   ? SolveMethod::exact
                   : SolveMethod::lagrangian;
    if (mode == SolveMethod::exact) return exact_length_area_dp(cloud, alpha, opts.exact_cap);
    return solve_lagrangian(cloud, alpha, opts);
}

void save_solution(const ConstrainedSolution& sol, double n, const std::string& path) {
    std::string out;
    out += "# areatrap-path v1\n";
    out += "# n=" + textio::format_double(n) + " alpha=" + textio::format_double(sol.alpha) +
           " length=" + textio::format_i64(sol.length) +
           " area=" + textio::format_double(sol.achieved_area) +
           " gap=" + textio::format_i64(sol.gap) + " method=" + method_name(sol.method) + "\n";
    out += "x,y\n";
    for (const Point& p : sol.path.vertices)
        out += textio::format_double(p.x) + "," + textio::format_double(p.y) + "\n";
    textio::write_file(path, out);
}

} // namespace areatrap::constrained
