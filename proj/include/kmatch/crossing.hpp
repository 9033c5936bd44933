#pragma once

#include <optional>
#include <string>
#include <utility>

#include "kmatch/errors.hpp"
#include "kmatch/geometry.hpp"
#include "kmatch/matching.hpp"

namespace kmatch {

struct CrossingReport {
    bool is_pairwise_crossing = false;
    std::optional<std::pair<Edge, Edge>> non_crossing_pair;
    bool balance_ok = false;
    std::optional<bool> unique;
    std::optional<bool> globally_maximum;
};

/// Throws GeneralPositionError if any three points are collinear.
inline void require_general_position(const PointSet& ps) {
    const std::size_t n = ps.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (orientation(ps[i], ps[j], ps[k]) == 0) {
                    throw GeneralPositionError("points " + std::to_string(i) + ", " + std::to_string(j) + ", " +
                                               std::to_string(k) + " are collinear");
                }
            }
        }
    }
}

namespace detail {

// Same as is_pairwise_crossing without the general-position scan.
inline std::optional<std::pair<Edge, Edge>> first_non_crossing(const PointSet& ps, const Matching& m,
                                                               const Tolerance& tol) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            const Segment s1{ps[m[i].u], ps[m[i].v]};
            const Segment s2{ps[m[j].u], ps[m[j].v]};
            if (!segments_cross(s1, s2, tol)) return std::pair{m[i], m[j]};
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Checks that every pair of matching edges crosses properly. Only the
/// crossing fields of the report are filled.
inline CrossingReport is_pairwise_crossing(const PointSet& ps, const Matching& m, const Tolerance& tol = {}) {
    m.validate_perfect(ps.size());
    require_general_position(ps);
    CrossingReport r;
    r.non_crossing_pair = detail::first_non_crossing(ps, m, tol);
    r.is_pairwise_crossing = !r.non_crossing_pair.has_value();
    return r;
}

/// Every edge of a pairwise crossing matching has (|P| - 2) / 2 points
/// strictly on each side of its supporting line.
inline bool halfplane_balance(const PointSet& ps, const Matching& m, const Tolerance& tol = {}) {
    const CrossingReport pre = is_pairwise_crossing(ps, m, tol);
    if (!pre.is_pairwise_crossing) throw DomainError("halfplane_balance requires a pairwise crossing matching");
    const std::size_t half = (ps.size() - 2) / 2;
    for (const Edge& e : m) {
        std::size_t left = 0;
        std::size_t right = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (i == e.u || i == e.v) continue;
            const int side = orientation(ps[e.u], ps[e.v], ps[i]);
            if (side == 0) throw GeneralPositionError("point lies on the supporting line of an edge");
            (side > 0 ? left : right) += 1;
        }
        if (left != half || right != half) return false;
    }
    return true;
}

struct CrossingSearch {
    std::optional<Matching> matching;
    std::size_t count = 0;
};

/// Scans every perfect matching (at most 12 points) for pairwise crossing
/// ones; returns the first and the number found.
inline CrossingSearch find_pairwise_crossing(const PointSet& ps, const Tolerance& tol = {}) {
    if (ps.size() > kEnumerationMaxPoints) throw CapacityError("crossing search supports at most 12 points");
    require_general_position(ps);
    CrossingSearch out;
    for_each_matching(ps.size(), [&](const Matching& m) {
        if (!detail::first_non_crossing(ps, m, tol)) {
            if (!out.matching) out.matching = m;
            ++out.count;
        }
    });
    return out;
}

/// Compares a pairwise crossing matching against the exact maximum.
inline bool verify_globally_maximum(const PointSet& ps, const Matching& m, const Tolerance& tol = {},
                                    std::size_t max_pairs = kOracleMaxPairs) {
    if (!is_pairwise_crossing(ps, m, tol).is_pairwise_crossing) {
        throw DomainError("verify_globally_maximum requires a pairwise crossing matching");
    }
    const double w = weight(m, ps);
    const double best = weight(optimal_matching(ps, Objective::maximize, max_pairs), ps);
    return w >= best - tol.eps_geom * std::max(1.0, best);
}

/// Full report: crossing test, and for crossing matchings the balance
/// observation, uniqueness (when enumeration applies) and global maximality
/// (when the oracle applies).
inline CrossingReport crossing_report(const PointSet& ps, const Matching& m, const Tolerance& tol = {}) {
    CrossingReport r = is_pairwise_crossing(ps, m, tol);
    if (!r.is_pairwise_crossing) return r;
    r.balance_ok = halfplane_balance(ps, m, tol);
    if (ps.size() <= kEnumerationMaxPoints) r.unique = find_pairwise_crossing(ps, tol).count == 1;
    if (ps.size() <= 2 * kOracleMaxPairs) r.globally_maximum = verify_globally_maximum(ps, m, tol);
    return r;
}

} // namespace kmatch
