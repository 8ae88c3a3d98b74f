#include "areatrap/limitshape.hpp"

#include "areatrap/errors.hpp"

#include <algorithm>
#include <cmath>

namespace areatrap::limitshape {

double implicit_lhs(double c) {
    if (!(c > 0.0)) fail(ErrorCode::invalid_parameter, "implicit equation needs c > 0");
    if (c < 1e-4) {
        // 1/2 + sum_{k>=1} (-1)^{k+1} c^k / ((k+1)(k+2))
        return 0.5 + c * (1.0 / 6 - c * (1.0 / 12 - c * (1.0 / 20 - c * (1.0 / 30 - c * (1.0 / 42 - c / 56)))));
    }
    return (1.0 + c) / c * (1.0 - std::log1p(c) / c);
}

double solve_c(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 0.5))
        fail(ErrorCode::invalid_parameter, "alpha must lie in (0, 1/2)");
    const double target = 0.5 + alpha;

    double lo = 1e-8, hi = 1.0;
    while (implicit_lhs(hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e18) fail(ErrorCode::internal, "implicit-equation bracket ran away");
    }
    while (implicit_lhs(lo) > target) {
        hi = lo;
        lo *= 0.5;
    }

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (implicit_lhs(mid) < target)
            lo = mid;
        else
            hi = mid;
        if (std::abs(implicit_lhs(mid) - target) <= 1e-14) break;
    }
    const double c = 0.5 * (lo + hi);
    if (std::abs(implicit_lhs(c) - target) > 1e-10)
        fail(ErrorCode::internal, "implicit-equation residual above 1e-10");
    return c;
}

double w_of(double c) {
    if (!(c > 0.0)) fail(ErrorCode::invalid_parameter, "w is defined for c > 0");
    if (c < 1e-4) {
        const double c2 = c * c;
        return 1.0 - c2 / 24 + c2 * c / 24 - 0.036979166666666667 * c2 * c2 +
               0.032291666666666667 * c2 * c2 * c - 0.028301711309523810 * c2 * c2 * c2;
    }
    return std::sqrt(1.0 + c) * std::log1p(c) / c;
}

LimitShape make_shape(double alpha) {
    LimitShape s;
    s.alpha = alpha;
    s.c = solve_c(alpha);
    s.w = w_of(s.c);
    return s;
}

double psi(const LimitShape& shape, double x) {
    if (!(x >= 0.0) || !(x <= 1.0))
        fail(ErrorCode::invalid_parameter, "psi is defined on [0,1]");
    return (1.0 + shape.c) * x / (1.0 + shape.c * x);
}

double psi_scaled(const LimitShape& shape, double n, double x) {
    if (!(x >= 0.0) || !(x <= n))
        fail(ErrorCode::invalid_parameter, "scaled psi is defined on [0,n]");
    return n * psi(shape, x / n);
}

Polyline sample_psi(const LimitShape& shape, double n, double ds) {
    if (!(ds > 0.0)) fail(ErrorCode::invalid_parameter, "sampling step must be > 0");
    // max slope is psi'(0) = 1+c, so this x-step keeps arc pieces under ds
    const double max_slope = 1.0 + shape.c;
    const double dx = ds / std::sqrt(1.0 + max_slope * max_slope);
    const std::size_t pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(n / dx)));
    Polyline out;
    out.reserve(pieces + 1);
    for (std::size_t k = 0; k <= pieces; ++k) {
        const double x = n * static_cast<double>(k) / static_cast<double>(pieces);
        out.push_back({x, psi_scaled(shape, n, x)});
    }
    return out;
}

double j_functional(const Polyline& phi) {
    if (phi.size() < 2) fail(ErrorCode::invalid_input, "J needs at least 2 points");
    if (std::abs(phi.front().x) > 1e-9 || std::abs(phi.back().x - 1.0) > 1e-9)
        fail(ErrorCode::invalid_input, "J input must span x in [0,1]");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
        const double dx = phi[i + 1].x - phi[i].x;
        const double dy = phi[i + 1].y - phi[i].y;
        if (dx < -1e-12 || dy < -1e-12)
            fail(ErrorCode::invalid_input, "J input must be nondecreasing");
        total += std::sqrt(std::max(0.0, dy) * std::max(0.0, dx));
    }
    return total;
}

double deviation_from_limit(const IncreasingPath& path, const LimitShape& shape, double n,
                            double ds) {
    if (ds <= 0.0) ds = n / 1e3;
    return geometry::hausdorff_distance(path.vertices, sample_psi(shape, n, ds), ds);
}

} // namespace areatrap::limitshape
