#pragma once

// Multi-start descent for f(x) = max_i f_i(x) in the plane, each f_i convex
// and differentiable away from isolated points.
//
// A step moves along the negated minimum-norm element d of the convex hull
// of the gradients of the tau-active pieces (f_i >= f - tau). Each of those
// gradients is a tau-subgradient of f, so d = 0 proves f(x) <= min f + tau.
// The step length starts from the Polyak value tau / |d|^2 and is doubled or
// halved under an Armijo test. tau shrinks when d vanishes or no step helps.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "kmatch/geometry.hpp"

namespace kmatch {

struct MinimaxOptions {
    double eps_opt = 1e-7;
    /// Characteristic size of the objective values; sets the first tau.
    double scale = 1.0;
    std::size_t max_iterations = 100000;
    std::size_t stall_window = 100;
};

struct MinimaxResult {
    Point point;
    double value = std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    /// Proven bound on value - min f; infinity when none was established.
    double gap_bound = std::numeric_limits<double>::infinity();
};

/// One piece of the max: its value and gradient at the query point.
struct Piece {
    double value = 0.0;
    Point grad;
};

namespace detail {

inline double max_value(const std::vector<Piece>& pieces) {
    double f = -std::numeric_limits<double>::infinity();
    for (const Piece& p : pieces) f = std::max(f, p.value);
    return f;
}

/// Minimum-norm point of conv(g); exactly zero when the origin is inside.
inline Point min_norm_in_hull(const std::vector<Point>& g) {
    const Point o{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            for (std::size_t k = j + 1; k < g.size(); ++k) {
                if (orientation(g[i], g[j], g[k]) == 0) continue;
                const int a = orientation(g[i], g[j], o);
                const int b = orientation(g[j], g[k], o);
                const int c = orientation(g[k], g[i], o);
                if ((a >= 0 && b >= 0 && c >= 0) || (a <= 0 && b <= 0 && c <= 0)) return o;
            }
        }
    }
    Point best = g.front();
    double best2 = dot(best, best);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (dot(g[i], g[i]) < best2) best = g[i], best2 = dot(g[i], g[i]);
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const Point e = g[j] - g[i];
            const double ee = dot(e, e);
            if (ee == 0.0) continue;
            const double t = -dot(g[i], e) / ee;
            if (t <= 0.0 || t >= 1.0) continue;
            const Point p = g[i] + e * t;
            if (dot(p, p) < best2) best = p, best2 = dot(p, p);
        }
    }
    return best;
}

template <class Eval>
MinimaxResult descend_from(Eval& eval, Point start, const MinimaxOptions& opt) {
    const double resolution = opt.eps_opt * 1e-2;
    std::vector<Piece> pieces;
    std::vector<Point> active;

    auto value_at = [&](Point y) {
        eval(y, pieces);
        return max_value(pieces);
    };

    Point x = start;
    double f = value_at(x);
    MinimaxResult res{x, f, 1};
    double tau = 0.25 * opt.scale;
    double window_start = f;
    std::size_t next_window = opt.stall_window;

    while (res.iterations < opt.max_iterations) {
        eval(x, pieces);
        active.clear();
        double gmax = 0.0;
        for (const Piece& p : pieces) {
            if (p.value >= f - tau) active.push_back(p.grad);
            gmax = std::max(gmax, norm(p.grad));
        }
        const Point d = min_norm_in_hull(active);
        const double d2 = dot(d, d);
        if (d2 <= 1e-24 * std::max(1.0, gmax * gmax)) {
            res.gap_bound = std::min(res.gap_bound, tau);
            if (tau < resolution) break;
            tau *= 0.1;
            continue;
        }

        double t = tau / d2;
        double fy = value_at(x - d * t);
        ++res.iterations;
        bool moved = false;
        if (fy <= f - 0.25 * t * d2) {
            moved = true;
            for (int i = 0; i < 40 && res.iterations < opt.max_iterations; ++i) {
                const double f2 = value_at(x - d * (2.0 * t));
                ++res.iterations;
                if (!(f2 <= f - 0.5 * t * d2 && f2 < fy)) break;
                t *= 2.0;
                fy = f2;
            }
        } else {
            for (int i = 0; i < 60 && res.iterations < opt.max_iterations; ++i) {
                t *= 0.5;
                fy = value_at(x - d * t);
                ++res.iterations;
                if (fy <= f - 0.25 * t * d2) {
                    moved = true;
                    break;
                }
            }
        }

        if (moved && fy < f) {
            x = x - d * t;
            f = fy;
            res.point = x;
            res.value = f;
        } else {
            tau *= 0.1;
            if (tau < resolution * 1e-3) break;
        }
        if (res.iterations >= next_window) {
            next_window = res.iterations + opt.stall_window;
            const bool stalled = window_start - res.value < resolution;
            window_start = res.value;
            if (stalled && tau < resolution) break;
        }
    }
    return res;
}

} // namespace detail

/// Minimizes max_i f_i over the plane from every start and keeps the best
/// result. `eval(x, out)` overwrites `out` with the pieces at x. Ties keep the
/// lexicographically smaller point, so the result does not depend on start
/// order.
template <class Eval>
MinimaxResult minimize_max(Eval&& eval, std::span<const Point> starts, const MinimaxOptions& opt = {}) {
    MinimaxResult best;
    std::size_t total = 0;
    for (const Point& s : starts) {
        const MinimaxResult r = detail::descend_from(eval, s, opt);
        total += r.iterations;
        if (r.value < best.value || (r.value == best.value && r.point < best.point)) best = r;
    }
    best.iterations = total;
    return best;
}

} // namespace kmatch
