#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "kmatch/errors.hpp"
#include "kmatch/predicates.hpp"

namespace kmatch {

/// A point (or vector) in the Euclidean plane.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(Point a, Point b) = default;
    friend constexpr bool operator<(Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }
};

inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point v) { return std::hypot(v.x, v.y); }

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Builds a point, rejecting NaN and infinite coordinates.
inline Point checked_point(double x, double y) {
    const Point p{x, y};
    if (!is_finite(p)) throw InputError("point coordinates must be finite");
    return p;
}

/// Predicate and solver slack. Both values must lie in (0, 1e-3).
struct Tolerance {
    double eps_geom = 1e-9;
    double eps_opt = 1e-7;

    void validate() const {
        auto ok = [](double v) { return v > 0.0 && v < 1e-3; };
        if (!ok(eps_geom) || !ok(eps_opt)) throw DomainError("tolerances must lie in (0, 1e-3)");
    }
};

struct Segment {
    Point a;
    Point b;
};

/// Closed disk: the boundary circle belongs to the disk.
struct Disk {
    Point center;
    double radius = 0.0;
};

inline double distance(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

inline Point midpoint(Point p, Point q) { return {0.5 * (p.x + q.x), 0.5 * (p.y + q.y)}; }

/// Exact orientation sign of the triple (a, b, c).
inline int orientation(Point a, Point b, Point c) {
    return predicates::orientation_sign(a.x, a.y, b.x, b.y, c.x, c.y);
}

inline double length(const Segment& s) { return distance(s.a, s.b); }

inline void require_nondegenerate(const Segment& s, const Tolerance& tol) {
    if (!is_finite(s.a) || !is_finite(s.b)) throw InputError("segment endpoints must be finite");
    if (!(length(s) > tol.eps_geom)) throw InputError("degenerate segment");
}

/// True iff the two segments cross properly: they share exactly one point and
/// that point is interior to both. Touching at an endpoint and collinear
/// overlap are not crossings.
inline bool segments_cross(const Segment& s1, const Segment& s2, const Tolerance& tol = {}) {
    require_nondegenerate(s1, tol);
    require_nondegenerate(s2, tol);
    const int o1 = orientation(s1.a, s1.b, s2.a);
    const int o2 = orientation(s1.a, s1.b, s2.b);
    const int o3 = orientation(s2.a, s2.b, s1.a);
    const int o4 = orientation(s2.a, s2.b, s1.b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

/// Disk with the segment as diameter.
inline Disk diametral_disk(const Segment& s, const Tolerance& tol = {}) {
    require_nondegenerate(s, tol);
    return {midpoint(s.a, s.b), 0.5 * length(s)};
}

/// Closed-disk intersection test; tangent disks intersect.
inline bool disks_intersect(const Disk& d1, const Disk& d2, const Tolerance& tol = {}) {
    return distance(d1.center, d2.center) <= d1.radius + d2.radius + tol.eps_geom;
}

/// Intersection points of the two boundary circles, sorted lexicographically.
/// Tangent circles (within eps_geom) give one point; disjoint or nested
/// circles give none. Identical circles throw.
inline std::vector<Point> circle_pair_points(const Disk& d1, const Disk& d2, const Tolerance& tol = {}) {
    const double d = distance(d1.center, d2.center);
    const double r1 = d1.radius;
    const double r2 = d2.radius;
    if (d <= tol.eps_geom && std::fabs(r1 - r2) <= tol.eps_geom) {
        throw DomainError("identical circles intersect in infinitely many points");
    }
    if (d > r1 + r2 + tol.eps_geom) return {};
    if (d < std::fabs(r1 - r2) - tol.eps_geom) return {};

    const Point u = (d2.center - d1.center) / d;
    if (std::fabs(d - (r1 + r2)) <= tol.eps_geom) {
        return {d1.center + u * r1};
    }
    if (std::fabs(d - std::fabs(r1 - r2)) <= tol.eps_geom) {
        return {r1 >= r2 ? d1.center + u * r1 : d1.center - u * r1};
    }
    const double along = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    const double h = std::sqrt(std::max(0.0, r1 * r1 - along * along));
    const Point base = d1.center + u * along;
    const Point perp{-u.y, u.x};
    std::vector<Point> out{base + perp * h, base - perp * h};
    std::sort(out.begin(), out.end());
    return out;
}

/// Of the boundary intersection points of d1 and d2, the one closest to the
/// center of d3. Ties resolve to the lexicographically smaller point.
inline Point innermost_point(const Disk& d1, const Disk& d2, const Disk& d3, const Tolerance& tol = {}) {
    if (!disks_intersect(d1, d2, tol) || !disks_intersect(d2, d3, tol) || !disks_intersect(d1, d3, tol)) {
        throw DomainError("innermost_point requires pairwise intersecting disks");
    }
    const auto pts = circle_pair_points(d1, d2, tol);
    if (pts.empty()) throw DomainError("boundaries of the first two disks do not meet (nested disks)");
    if (pts.size() == 1) return pts.front();
    const double da = distance(pts[0], d3.center);
    const double db = distance(pts[1], d3.center);
    if (std::fabs(da - db) <= tol.eps_geom) return pts[0];
    return da < db ? pts[0] : pts[1];
}

/// Interior angle at vertex p of the triangle (p, q, r), in [0, pi].
inline double vertex_angle(Point p, Point q, Point r) {
    const Point u = q - p;
    const Point v = r - p;
    return std::atan2(std::fabs(cross(u, v)), dot(u, v));
}

/// Point minimizing the sum of distances to a, b, c.
///
/// A vertex whose angle is at least 2*pi/3 is the answer. Otherwise the first
/// isogonic center is taken from its barycentric closed form and polished by
/// Weiszfeld iterations.
inline Point fermat_point(Point a, Point b, Point c) {
    constexpr double kPi = std::numbers::pi;
    constexpr double kThreshold = 2.0 * kPi / 3.0 - 1e-12;
    constexpr double kPolish = 1e-10;

    const std::array<Point, 3> v{a, b, c};
    // Coincident vertices: the doubled point is optimal.
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (v[i] == v[j]) return v[i];
        }
    }
    const std::array<double, 3> angle{vertex_angle(a, b, c), vertex_angle(b, c, a), vertex_angle(c, a, b)};
    for (int i = 0; i < 3; ++i) {
        if (angle[i] >= kThreshold) return v[i];
    }

    // Barycentric weights of the isogonic center: side * csc(angle + pi/3).
    const std::array<double, 3> side{distance(b, c), distance(c, a), distance(a, b)};
    double wsum = 0.0;
    Point x{};
    for (int i = 0; i < 3; ++i) {
        const double w = side[i] / std::sin(angle[i] + kPi / 3.0);
        x = x + v[i] * w;
        wsum += w;
    }
    x = x / wsum;

    for (int iter = 0; iter < 200; ++iter) {
        Point num{};
        double den = 0.0;
        for (const Point& p : v) {
            const double d = distance(x, p);
            if (d == 0.0) return x;
            num = num + p / d;
            den += 1.0 / d;
        }
        const Point next = num / den;
        const double step = distance(next, x);
        x = next;
        if (step < kPolish) break;
    }
    return x;
}

/// f(x) = sqrt(r^2 + 1 + 2x) + sqrt(r^2 + 1 - 2x): the distance sum from a
/// point at distance r from the midpoint of a segment of length 2 to its
/// endpoints, parametrized by the point's coordinate along the segment.
inline double endpoint_bound(double x, double r) {
    if (!(r > 0.0) || !(x >= 0.0) || !(x <= r)) {
        throw DomainError("endpoint_bound requires r > 0 and 0 <= x <= r");
    }
    const double base = r * r + 1.0;
    return std::sqrt(base + 2.0 * x) + std::sqrt(std::max(0.0, base - 2.0 * x));
}

/// f(alpha) = 2 sin((4 pi - 3 alpha) / 6) / sqrt(3), for alpha in [0, pi].
inline double diameter_bound(double alpha) {
    if (!(alpha >= 0.0) || !(alpha <= std::numbers::pi)) {
        throw DomainError("diameter_bound requires 0 <= alpha <= pi");
    }
    return 2.0 * std::sin((4.0 * std::numbers::pi - 3.0 * alpha) / 6.0) / std::sqrt(3.0);
}

/// Convex hull vertices in counter-clockwise order (Andrew's monotone chain).
/// Collinear boundary points are dropped.
inline std::vector<Point> convex_hull(std::span<const Point> input) {
    std::vector<Point> pts(input.begin(), input.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && orientation(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

} // namespace kmatch
