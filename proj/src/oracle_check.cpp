#include "areatrap/harness.hpp"

#include "areatrap/errors.hpp"
#include "areatrap/lpp.hpp"
#include "areatrap/oracle.hpp"
#include "areatrap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace areatrap::harness {

namespace {

using geometry::Point;

sampler::PointCloud uniform_cloud(SplitMix64& rng, double n, std::int64_t max_points) {
    sampler::PointCloud cloud;
    cloud.n = n;
    const std::int64_t count =
        static_cast<std::int64_t>(rng.next_u64() % static_cast<std::uint64_t>(max_points + 1));
    for (std::int64_t i = 0; i < count; ++i)
        cloud.points.push_back({n * rng.next_open01(), n * rng.next_open01()});
    std::sort(cloud.points.begin(), cloud.points.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return cloud;
}

} // namespace

std::int64_t oracle_check(std::int64_t trials, std::int64_t max_points, std::uint64_t seed) {
    if (trials < 1) fail(ErrorCode::invalid_parameter, "trials must be >= 1");
    if (max_points < 1 || max_points > oracle::kHardCap)
        fail(ErrorCode::invalid_parameter,
             "max_points must lie in [1, " + std::to_string(oracle::kHardCap) + "]");

    const double n = 4.0;
    const Point origin{0.0, 0.0}, corner{n, n};
    std::int64_t mismatches = 0;
    auto report = [&](std::uint64_t trial_seed, const std::string& what) {
        ++mismatches;
        std::cerr << "oracle mismatch (seed " << trial_seed << "): " << what << "\n";
    };

    for (std::int64_t t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        SplitMix64 rng(trial_seed);
        const sampler::PointCloud cloud = uniform_cloud(rng, n, max_points);

        // plain LPP
        const std::int64_t fast = lpp::lpp_length(cloud, origin, corner);
        const std::int64_t brute = oracle::brute_lpp(cloud, origin, corner, max_points);
        if (fast != brute) report(trial_seed, "lpp_length");

        // above a random chord through a sub-rectangle
        const Point u{n * 0.1 * rng.next_open01(), n * 0.1 * rng.next_open01()};
        const Point v{n * (0.5 + 0.5 * rng.next_open01()), n * (0.5 + 0.5 * rng.next_open01())};
        if (lpp::lpp_above_chord(cloud, u, v).length !=
            oracle::brute_above_chord(cloud, u, v, max_points))
            report(trial_seed, "lpp_above_chord");

        // inside a random parallelogram around the diagonal
        const double below = n * (0.2 + rng.next_open01());
        const double above = n * (0.2 + rng.next_open01());
        const double pad = 0.5;
        const std::vector<Point> region{{-pad, -pad - below},
                                        {n + pad, n + pad - below},
                                        {n + pad, n + pad + above},
                                        {-pad, -pad + above}};
        if (lpp::lpp_in_convex_region(cloud, origin, corner, region).length !=
            oracle::brute_in_region(cloud, origin, corner, region, max_points))
            report(trial_seed, "lpp_in_convex_region");

        // constrained solver, exact and Lagrangian, across an alpha grid
        for (double alpha : {0.05, 0.15, 0.25, 0.35}) {
            const oracle::BruteConstrained truth =
                oracle::brute_constrained(cloud, alpha, max_points);
            constrained::SolveOptions exact_opts;
            exact_opts.mode = constrained::SolveMethod::exact;
            try {
                const auto sol = constrained::solve_constrained(cloud, alpha, exact_opts);
                if (!truth.feasible || sol.length != truth.length)
                    report(trial_seed, "exact constrained length at alpha=" + std::to_string(alpha));
            } catch (const InfeasibleError& e) {
                if (truth.feasible)
                    report(trial_seed, "exact infeasible but oracle found a path, alpha=" +
                                           std::to_string(alpha));
                else if (std::abs(e.max_trappable_area() - truth.max_trappable_area) >
                         1e-9 * (1.0 + truth.max_trappable_area))
                    report(trial_seed, "max trappable area mismatch");
            }
            constrained::SolveOptions lag_opts;
            lag_opts.mode = constrained::SolveMethod::lagrangian;
            try {
                const auto sol = constrained::solve_constrained(cloud, alpha, lag_opts);
                if (!truth.feasible) {
                    report(trial_seed, "lagrangian solved an infeasible instance");
                } else if (sol.length > truth.length || sol.length + sol.gap < truth.length) {
                    report(trial_seed, "lagrangian outside [brute-gap, brute] at alpha=" +
                                           std::to_string(alpha));
                }
            } catch (const InfeasibleError&) {
                if (truth.feasible) report(trial_seed, "lagrangian infeasible report was wrong");
            }
        }
    }
    return mismatches;
}

} // namespace areatrap::harness
