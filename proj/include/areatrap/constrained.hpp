#pragma once

#include "areatrap/geometry.hpp"
#include "areatrap/sampler.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace areatrap::constrained {

using geometry::IncreasingPath;
using sampler::PointCloud;

enum class SolveMethod { lagrangian, exact, auto_select };

const char* method_name(SolveMethod m);
SolveMethod method_from_name(const std::string& name);

// Optimum of |gamma| + lambda * A(gamma) over increasing paths (0,0)->(n,n).
// Score ties resolve toward larger area, then the topmost rule (larger
// predecessor y, then x), which makes fixtures deterministic.
struct LagrangianOutcome {
    double lambda = 0.0;
    double score = 0.0; // = length + lambda * area
    std::int64_t length = 0;
    double area = 0.0;
    IncreasingPath path;
};

LagrangianOutcome lagrangian_best(const PointCloud& cloud, double lambda);

struct SolveOptions {
    SolveMethod mode = SolveMethod::auto_select;
    double lambda_tol = 0.0;  // <=0: default 1e-6/n
    int max_bisect = 60;
    std::int64_t exact_cap = 4000;
    double lambda_max = 0.0;  // <=0: default 4/n
};

struct ConstrainedSolution {
    double alpha = 0.0;
    double threshold = 0.0;      // (1/2 + alpha) n^2
    std::int64_t length = 0;     // L_alpha(n)
    IncreasingPath path;
    double achieved_area = 0.0;  // >= threshold
    double upper_bound = 0.0;    // best dual bound on L_alpha
    std::int64_t gap = 0;        // floor(upper_bound) - length, >= 0
    SolveMethod method = SolveMethod::lagrangian; // method actually used

    // (lambda, score) pairs sampled by the Lagrangian bisection; each yields
    // the weak-duality bound score - lambda * threshold.
    std::vector<std::pair<double, double>> dual_samples;
};

// The area-trapping polymer solver for A(gamma) >= (1/2+alpha) n^2.
//
// "exact" runs the per-length max-area DP (size-cap-exceeded above the cap,
// gap always 0). "lagrangian" bisects lambda on [0, lambda_max] until the
// feasible/infeasible bracket is narrower than lambda_tol, keeps every
// feasible DP optimizer as a candidate and reports the best feasible length
// with the dual bound; if no sampled lambda yields a feasible optimizer it
// falls back to the exact DP when under the cap, else repairs greedily (see
// below). "auto" picks exact when N <= exact_cap.
//
// Among equal-length feasible candidates the least-area one is kept, the
// closest available proxy for the paper-exact least-area tie-break.
//
// Throws InfeasibleError (carrying max_trappable_area) when no increasing
// path can trap the threshold area.
ConstrainedSolution solve_constrained(const PointCloud& cloud, double alpha,
                                      const SolveOptions& opts = {});

// g(p, len) = maximum trapped area over paths source->p visiting exactly
// `len` points; L_alpha = max{len : g(sink, len) >= threshold}. Reconstructs
// the maximal-area maximizer among length-L_alpha paths. O(N^2 L) time.
ConstrainedSolution exact_length_area_dp(const PointCloud& cloud, double alpha,
                                         std::int64_t size_cap = 4000);

// Feasibility frontier: max of trapped_area over all increasing paths
// (lambda -> infinity semantics; ties toward longer paths).
double max_trappable_area(const PointCloud& cloud);

// Greedy feasibility repair used when the duality gap blocks the bisection
// and the instance is over the exact-DP cap: starting from the max-area
// path, repeatedly insert the unused point with the largest area increment
// that keeps the path feasible. Heuristic, reported with an honest gap.
IncreasingPath greedy_augment(const PointCloud& cloud, IncreasingPath path, double threshold);

// Path file:
//   # areatrap-path v1
//   # n=.. alpha=.. length=.. area=.. gap=.. method=..
//   x,y
//   <x>,<y>   (all vertices, endpoints included)
void save_solution(const ConstrainedSolution& sol, double n, const std::string& path);

} // namespace areatrap::constrained
