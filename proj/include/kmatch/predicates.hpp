#pragma once

// Adaptive-precision planar orientation test.
//
// A floating-point evaluation is accepted when its magnitude exceeds a
// forward error bound; otherwise the determinant is summed exactly as a
// floating-point expansion (two-product via fma, two-sum accumulation), so
// the returned sign is always the sign of the exact real determinant of the
// double inputs.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace kmatch::predicates {

namespace detail {

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    const double bv = x - a;
    const double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& x, double& y) {
    x = a * b;
    y = std::fma(a, b, -x);
}

// Adds b into the nonoverlapping expansion e[0..len) (increasing magnitude),
// writing len + 1 components into h. h may alias e.
template <std::size_t N>
inline std::size_t grow_expansion(std::array<double, N>& e, std::size_t len, double b) {
    double q = b;
    for (std::size_t i = 0; i < len; ++i) {
        double sum = 0.0;
        double err = 0.0;
        two_sum(q, e[i], sum, err);
        e[i] = err;
        q = sum;
    }
    e[len] = q;
    return len + 1;
}

inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2.0;
inline constexpr double kOrientErrBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;

} // namespace detail

/// Exact sign of the orientation determinant of (a, b, c):
/// +1 for a counter-clockwise turn, -1 for clockwise, 0 for collinear.
inline int orientation_sign(double ax, double ay, double bx, double by, double cx, double cy) {
    const double left = (ax - cx) * (by - cy);
    const double right = (ay - cy) * (bx - cx);
    const double det = left - right;
    const double bound = detail::kOrientErrBound * (std::fabs(left) + std::fabs(right));
    if (det > bound) return 1;
    if (-det > bound) return -1;

    // det = ax*by - ax*cy - cx*by - ay*bx + ay*cx + cy*bx
    const std::array<std::array<double, 2>, 6> products{{
        {ax, by}, {-ax, cy}, {-cx, by}, {-ay, bx}, {ay, cx}, {cy, bx},
    }};
    std::array<double, 13> expansion{};
    std::size_t len = 0;
    for (const auto& p : products) {
        double hi = 0.0;
        double lo = 0.0;
        detail::two_product(p[0], p[1], hi, lo);
        len = detail::grow_expansion(expansion, len, lo);
        len = detail::grow_expansion(expansion, len, hi);
    }
    for (std::size_t i = len; i-- > 0;) {
        if (expansion[i] > 0.0) return 1;
        if (expansion[i] < 0.0) return -1;
    }
    return 0;
}

} // namespace kmatch::predicates
