#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "kmatch/certificates.hpp"
#include "kmatch/errors.hpp"
#include "kmatch/geometry.hpp"
#include "kmatch/matching.hpp"

namespace kmatch {

/// splitmix64 step; used to derive independent seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Small deterministic generator with portable uniform and normal draws
/// (the standard distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix_seed(seed)) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    /// Standard normal (Box-Muller, one draw per call).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

/// True when p keeps `pts` pairwise distinct and free of (near-)collinear
/// triples. `area_eps` bounds twice the triangle area that counts as collinear.
inline bool fits_general_position(const std::vector<Point>& pts, Point p, double dist_eps, double area_eps,
                                  std::size_t skip = static_cast<std::size_t>(-1)) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == skip) continue;
        if (!(distance(pts[i], p) > dist_eps)) return false;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (j == skip) continue;
            if (std::fabs(cross(pts[j] - pts[i], p - pts[i])) <= area_eps) return false;
        }
    }
    return true;
}

/// n uniform points in [0, bbox]^2 in general position, deterministic per seed.
inline PointSet gen_random(std::size_t n, std::uint64_t seed, double bbox = 1.0) {
    if (n < 2 || n % 2 != 0) throw DomainError("gen_random needs an even n >= 2");
    if (!(bbox > 0.0)) throw DomainError("bbox must be positive");
    Rng rng(seed);
    const double area_eps = 1e-9 * bbox * bbox;
    std::vector<Point> pts;
    while (pts.size() < n) {
        const Point p{rng.uniform(0.0, bbox), rng.uniform(0.0, bbox)};
        if (fits_general_position(pts, p, 1e-9 * bbox, area_eps)) pts.push_back(p);
    }
    return PointSet(std::move(pts));
}

/// n points in convex position on the unit circle with jittered angles,
/// listed counter-clockwise.
inline PointSet gen_convex(std::size_t n, std::uint64_t seed) {
    if (n < 4 || n % 2 != 0) throw DomainError("gen_convex needs an even n >= 4");
    Rng rng(seed);
    const double slot = 2.0 * std::numbers::pi / static_cast<double>(n);
    while (true) {
        std::vector<Point> pts;
        const double phase = rng.uniform(0.0, slot);
        for (std::size_t i = 0; i < n; ++i) {
            const double a = phase + slot * (static_cast<double>(i) + rng.uniform(-0.35, 0.35));
            pts.push_back({std::cos(a), std::sin(a)});
        }
        if (convex_hull(pts).size() == n) return PointSet(std::move(pts));
    }
}

struct CircleConstruction {
    PointSet points;
    /// Pairs (2i, 2i+1): the n chords of length 1.
    Matching unit_matching;
    /// Pairs (2i+1, 2i+2 mod 2n): the n chords of length eps.
    Matching eps_matching;
    double radius = 0.0;
};

/// 2n points on a circle whose consecutive gaps alternate between chord
/// lengths 1 and eps. The radius solves n * (theta_1 + theta_2) = 2 pi by
/// bisection, with chord(theta) = 2 R sin(theta / 2).
inline CircleConstruction gen_circle_alternating(std::size_t n, double eps) {
    if (n < 3) throw DomainError("gen_circle_alternating needs n >= 3 pairs");
    if (!(eps > 0.0 && eps < 0.1)) throw DomainError("gen_circle_alternating needs 0 < eps < 0.1");
    const double nn = static_cast<double>(n);
    auto excess = [&](double r) {
        return nn * (2.0 * std::asin(1.0 / (2.0 * r)) + 2.0 * std::asin(eps / (2.0 * r))) - 2.0 * std::numbers::pi;
    };
    double lo = 0.5;
    double hi = 1.0;
    while (excess(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e12) throw DomainError("no circle radius fits the alternating chords");
    }
    if (!(excess(lo) > 0.0)) throw DomainError("no circle radius fits the alternating chords");
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    const double r = 0.5 * (lo + hi);
    const double t1 = 2.0 * std::asin(1.0 / (2.0 * r));
    const double t2 = 2.0 * std::asin(eps / (2.0 * r));

    std::vector<Point> pts;
    std::vector<Edge> unit;
    std::vector<Edge> small;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = static_cast<double>(i) * (t1 + t2);
        pts.push_back({r * std::cos(a), r * std::sin(a)});
        pts.push_back({r * std::cos(a + t1), r * std::sin(a + t1)});
        unit.push_back({2 * i, 2 * i + 1});
        small.push_back(make_edge(2 * i + 1, (2 * i + 2) % (2 * n)));
    }
    return {PointSet(std::move(pts)), Matching(std::move(unit)), Matching(std::move(small)), r};
}

/// `count` disks that pairwise intersect. Each new disk gets a random center
/// in [0, 3]^2 and a random radius in [0.1, 1], grown if needed until it
/// touches every earlier disk, so tangencies are common.
inline DiskFamily gen_pairwise_intersecting_disks(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    DiskFamily df;
    for (std::size_t i = 0; i < count; ++i) {
        const Point c{rng.uniform(0.0, 3.0), rng.uniform(0.0, 3.0)};
        double r = rng.uniform(0.1, 1.0);
        for (const Disk& d : df.base) r = std::max(r, distance(c, d.center) - d.radius);
        df.base.push_back({c, r});
    }
    return df;
}

/// Three unit disks centered at (0,0), (2,0), (1, sqrt 3): pairwise tangent.
inline DiskFamily gen_tangent_disks() {
    return {{{{0.0, 0.0}, 1.0}, {{2.0, 0.0}, 1.0}, {{1.0, std::sqrt(3.0)}, 1.0}}, 1.0};
}

} // namespace kmatch
