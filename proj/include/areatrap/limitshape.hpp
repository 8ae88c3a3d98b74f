#pragma once

#include "areatrap/geometry.hpp"

namespace areatrap::limitshape {

using geometry::IncreasingPath;
using geometry::Polyline;

// (alpha, c_alpha, w_alpha): the deterministic first-order profile.
// c solves (1+c)/c * (1 - ln(1+c)/c) = 1/2 + alpha and
// w = sqrt(1+c) * ln(1+c) / c.
struct LimitShape {
    double alpha = 0.0;
    double c = 0.0;
    double w = 0.0;
};

// Left-hand side of the implicit equation. Evaluated through a 6-term
// series below c = 1e-4 where the direct form cancels catastrophically;
// both branches agree to 1e-12 at the crossover (pinned in tests).
double implicit_lhs(double c);

// Unique root of implicit_lhs(c) = 1/2 + alpha, bisected on a bracket grown
// geometrically from [1e-8, 1]; residual <= 1e-10.
double solve_c(double alpha);

// sqrt(1+c) ln(1+c)/c, series-stabilized below c = 1e-4.
double w_of(double c);

LimitShape make_shape(double alpha);

// psi_alpha(x) = (1+c)x / (1+cx) on [0,1]; psi_scaled is the n-blow-up.
double psi(const LimitShape& shape, double x);
double psi_scaled(const LimitShape& shape, double n, double x);

// Samples psi_scaled with segment arc lengths <= ds.
Polyline sample_psi(const LimitShape& shape, double n, double ds);

// J(phi) = integral of sqrt(phi-dot): sum over segments of sqrt(dy*dx),
// exact for piecewise-linear input. Vertical segments (the singular part)
// contribute zero. Input must span x in [0,1] and be nondecreasing.
double j_functional(const Polyline& phi);

// Hausdorff distance between the path and psi_{alpha,n} at sampling step ds.
double deviation_from_limit(const IncreasingPath& path, const LimitShape& shape, double n,
                            double ds);

} // namespace areatrap::limitshape
