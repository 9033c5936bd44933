#pragma once

// Geometric witnesses behind the local-versus-global length ratios.
//
// A certificate for a k-local maximum matching M is a point c together with
// the chain  w(M*) <= w(S) <= beta * w(M),  where S is the star joining c to
// every endpoint of M. The second inequality is checked edge by edge as
// |ca| + |cb| <= beta * |ab|; the first is the triangle inequality and is
// additionally compared against the exact oracle when the instance is small.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "kmatch/errors.hpp"
#include "kmatch/geometry.hpp"
#include "kmatch/matching.hpp"
#include "kmatch/minimax.hpp"

namespace kmatch {

namespace constants {
inline const double enlargement = 2.0 / std::sqrt(3.0);  // disk growth making pairwise-intersecting disks meet
inline const double fingerhut_alpha = 2.0 / std::sqrt(3.0);
inline const double beta_local2 = std::sqrt(7.0 / 3.0);
inline const double beta_local3_sqrt2 = std::sqrt(2.0);
inline const double beta_local3_fingerhut = 2.0 / std::sqrt(3.0);
} // namespace constants

struct DiskFamily {
    /// Disks at their unscaled radii.
    std::vector<Disk> base;
    double scale = 1.0;

    std::size_t size() const { return base.size(); }
    bool empty() const { return base.empty(); }
    Disk disk(std::size_t i) const { return {base[i].center, base[i].radius * scale}; }
    DiskFamily scaled(double s) const { return {base, s}; }
};

enum class WitnessKind { diametral, enlarged, fingerhut };

inline std::string to_string(WitnessKind k) {
    switch (k) {
    case WitnessKind::diametral: return "diametral";
    case WitnessKind::enlarged: return "enlarged";
    case WitnessKind::fingerhut: return "fingerhut";
    }
    return "unknown";
}

struct CenterWitness {
    Point point;
    /// Largest signed constraint violation at `point`; <= eps_opt certifies.
    double slack = 0.0;
    WitnessKind kind = WitnessKind::diametral;
};

/// Diametral disks of the matching edges, radii multiplied by `scale`.
inline DiskFamily diametral_family(const Matching& m, const PointSet& ps, double scale = 1.0,
                                   const Tolerance& tol = {}) {
    if (!(scale >= 1.0) || !std::isfinite(scale)) throw DomainError("disk scale must be finite and >= 1");
    DiskFamily df;
    df.scale = scale;
    for (const Edge& e : m) {
        if (e.u >= ps.size() || e.v >= ps.size()) throw InputError("matching index out of range");
        df.base.push_back(diametral_disk({ps[e.u], ps[e.v]}, tol));
    }
    return df;
}

/// max_i (|x - c_i| - r_i) over the scaled family.
inline double disk_excess(const DiskFamily& df, Point x) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < df.size(); ++i) {
        const Disk d = df.disk(i);
        worst = std::max(worst, distance(x, d.center) - d.radius);
    }
    return worst;
}

namespace detail {

inline Point unit_or_zero(Point v) {
    const double n = norm(v);
    return n > 0.0 ? v / n : Point{};
}

inline Point centroid(std::span<const Point> pts) {
    Point c{};
    for (const Point& p : pts) c = c + p;
    return pts.empty() ? c : c / static_cast<double>(pts.size());
}

} // namespace detail

/// Point minimizing the largest excess distance over the (scaled) disks.
/// Non-positive slack (within eps_opt) certifies a common intersection.
inline CenterWitness common_point(const DiskFamily& df, const Tolerance& tol = {}) {
    if (df.empty()) throw DomainError("common_point needs a nonempty disk family");

    std::vector<Point> starts;
    double scale = 0.0;
    for (const Disk& d : df.base) {
        starts.push_back(d.center);
        scale = std::max(scale, d.radius * df.scale);
    }
    starts.push_back(detail::centroid(starts));
    for (const Point& s : starts) scale = std::max(scale, distance(s, starts.back()));

    auto eval = [&](Point x, std::vector<Piece>& out) {
        out.clear();
        for (std::size_t i = 0; i < df.size(); ++i) {
            const Disk d = df.disk(i);
            out.push_back({distance(x, d.center) - d.radius, detail::unit_or_zero(x - d.center)});
        }
    };
    MinimaxOptions opt;
    opt.eps_opt = tol.eps_opt;
    opt.scale = std::max(scale, 1e-12);
    const MinimaxResult r = minimize_max(eval, starts, opt);
    return {r.point, r.value, df.scale == 1.0 ? WitnessKind::diametral : WitnessKind::enlarged};
}

/// max_i (|x - a_i| + |x - b_i|) / |a_i b_i|.
inline double fingerhut_objective(const Matching& m, const PointSet& ps, Point x) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Edge& e : m) {
        worst = std::max(worst, (distance(x, ps[e.u]) + distance(x, ps[e.v])) / edge_length(e, ps));
    }
    return worst;
}

/// Point minimizing the largest normalized focal-distance sum; slack is
/// measured against alpha = 2/sqrt(3).
inline CenterWitness fingerhut_center(const Matching& m, const PointSet& ps, const Tolerance& tol = {}) {
    if (m.empty()) throw DomainError("fingerhut_center needs a nonempty matching");
    std::vector<Point> starts;
    std::vector<double> len;
    double scale = 0.0;
    for (const Edge& e : m) {
        len.push_back(edge_length(e, ps));
        if (!(len.back() > tol.eps_geom)) throw InputError("degenerate matching edge");
        starts.push_back(midpoint(ps[e.u], ps[e.v]));
        scale = std::max(scale, len.back());
    }
    starts.push_back(detail::centroid(starts));

    auto eval = [&](Point x, std::vector<Piece>& out) {
        out.clear();
        for (std::size_t i = 0; i < m.size(); ++i) {
            const Point a = ps[m[i].u];
            const Point b = ps[m[i].v];
            out.push_back({(distance(x, a) + distance(x, b)) / len[i],
                           (detail::unit_or_zero(x - a) + detail::unit_or_zero(x - b)) / len[i]});
        }
    };
    MinimaxOptions opt;
    opt.eps_opt = tol.eps_opt;
    // The objective is dimensionless; a unit gap is the natural first target.
    opt.scale = 1.0;
    const MinimaxResult r = minimize_max(eval, starts, opt);
    return {r.point, r.value - constants::fingerhut_alpha, WitnessKind::fingerhut};
}

inline double star_weight(Point c, const PointSet& ps) {
    double w = 0.0;
    for (const Point& p : ps) w += distance(c, p);
    return w;
}

enum class CertificateKind { local2, local3_sqrt2, local3_fingerhut };

inline std::string to_string(CertificateKind k) {
    switch (k) {
    case CertificateKind::local2: return "local2";
    case CertificateKind::local3_sqrt2: return "local3-sqrt2";
    case CertificateKind::local3_fingerhut: return "local3-fingerhut";
    }
    return "unknown";
}

inline double certificate_beta(CertificateKind k) {
    switch (k) {
    case CertificateKind::local2: return constants::beta_local2;
    case CertificateKind::local3_sqrt2: return constants::beta_local3_sqrt2;
    case CertificateKind::local3_fingerhut: return constants::beta_local3_fingerhut;
    }
    return 0.0;
}

inline std::size_t certificate_locality(CertificateKind k) { return k == CertificateKind::local2 ? 2 : 3; }

struct EdgeCheck {
    Edge edge;
    double star_pair = 0.0; // |ca| + |cb|
    double bound = 0.0;     // beta * |ab|
    bool ok = false;
};

struct Certificate {
    CertificateKind kind = CertificateKind::local2;
    CenterWitness witness;
    double star_weight = 0.0;
    double matching_weight = 0.0;
    double beta = 0.0;
    std::vector<EdgeCheck> per_edge_checks;
    /// Global maximum weight when the oracle applies.
    std::optional<double> oracle_weight;
    std::optional<Matching> oracle_matching;

    /// Guaranteed lower bound on w(M) / w(M*).
    double ratio_lower_bound() const { return 1.0 / beta; }
};

/// Thrown by certify when the matching is not k-local maximum.
class LocalityViolation : public VerificationError {
public:
    LocalityViolation(const std::string& what, LocalityCheck check)
        : VerificationError(what), check_(std::move(check)) {}
    const LocalityCheck& check() const { return check_; }

private:
    LocalityCheck check_;
};

/// Builds and checks a ratio certificate. Verifies the locality premise
/// first: k = 2 for local2, k = 3 for the local3 kinds (or |M| when smaller).
/// Throws LocalityViolation when the premise fails and VerificationError when
/// any link of the inequality chain breaks.
inline Certificate certify(const PointSet& ps, const Matching& m, CertificateKind kind, const Tolerance& tol = {},
                           std::size_t max_pairs = kOracleMaxPairs) {
    m.validate_perfect(ps.size());
    if (m.empty()) throw DomainError("certify needs a nonempty matching");

    const std::size_t k = std::min(certificate_locality(kind), m.size());
    LocalityCheck check = is_k_local_max(ps, m, k, tol);
    if (!check.holds) {
        throw LocalityViolation("matching is not " + std::to_string(k) + "-local maximum", std::move(check));
    }

    Certificate cert;
    cert.kind = kind;
    cert.beta = certificate_beta(kind);
    switch (kind) {
    case CertificateKind::local2:
        cert.witness = common_point(diametral_family(m, ps, constants::enlargement, tol), tol);
        break;
    case CertificateKind::local3_sqrt2:
        cert.witness = common_point(diametral_family(m, ps, 1.0, tol), tol);
        break;
    case CertificateKind::local3_fingerhut:
        cert.witness = fingerhut_center(m, ps, tol);
        break;
    }
    if (cert.witness.slack > tol.eps_opt) {
        throw VerificationError("no witness point found (slack " + std::to_string(cert.witness.slack) + ")");
    }

    const Point c = cert.witness.point;
    for (const Edge& e : m) {
        EdgeCheck row;
        row.edge = e;
        row.star_pair = distance(c, ps[e.u]) + distance(c, ps[e.v]);
        const double len = edge_length(e, ps);
        row.bound = cert.beta * len;
        row.ok = row.star_pair <= row.bound + tol.eps_opt * std::max(1.0, len);
        cert.per_edge_checks.push_back(row);
    }
    cert.star_weight = star_weight(c, ps);
    cert.matching_weight = weight(m, ps);

    const double chain_tol = tol.eps_opt * std::max(1.0, cert.star_weight);
    const bool edges_ok = std::all_of(cert.per_edge_checks.begin(), cert.per_edge_checks.end(),
                                      [](const EdgeCheck& r) { return r.ok; });
    if (!edges_ok || cert.star_weight > cert.beta * cert.matching_weight + chain_tol) {
        throw VerificationError("star weight exceeds beta times the matching weight");
    }
    if (ps.size() <= 2 * max_pairs) {
        Matching global = optimal_matching(ps, Objective::maximize, max_pairs);
        cert.oracle_weight = weight(global, ps);
        cert.oracle_matching = std::move(global);
        if (*cert.oracle_weight > cert.star_weight + chain_tol) {
            throw VerificationError("oracle maximum exceeds the star weight");
        }
    }
    return cert;
}

} // namespace kmatch
