#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "kmatch/errors.hpp"
#include "kmatch/geometry.hpp"

namespace kmatch {

/// Largest number of edges the subset-DP oracle accepts (24 points).
inline constexpr std::size_t kOracleMaxPairs = 12;
/// Largest point count the enumeration oracle accepts.
inline constexpr std::size_t kEnumerationMaxPoints = 12;

/// Ordered set of pairwise distinct points.
class PointSet {
public:
    PointSet() = default;

    explicit PointSet(std::vector<Point> points, const Tolerance& tol = {}) : points_(std::move(points)) {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!is_finite(points_[i])) {
                throw InputError("point " + std::to_string(i) + " has a non-finite coordinate");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (!(distance(points_[i], points_[j]) > tol.eps_geom)) {
                    throw InputError("points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
                }
            }
        }
    }

    PointSet(std::initializer_list<Point> points) : PointSet(std::vector<Point>(points)) {}

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    std::span<const Point> points() const { return points_; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

private:
    std::vector<Point> points_;
};

/// Unordered index pair, stored with u < v.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;

    friend constexpr bool operator==(const Edge&, const Edge&) = default;
    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(std::size_t a, std::size_t b) {
    if (a == b) throw InputError("edge endpoints must differ");
    return a < b ? Edge{a, b} : Edge{b, a};
}

/// Set of vertex-disjoint edges, kept sorted by (u, v).
class Matching {
public:
    Matching() = default;

    explicit Matching(std::vector<Edge> edges) : edges_(std::move(edges)) {
        for (Edge& e : edges_) e = make_edge(e.u, e.v);
        std::sort(edges_.begin(), edges_.end());
        std::vector<std::size_t> seen;
        seen.reserve(2 * edges_.size());
        for (const Edge& e : edges_) {
            seen.push_back(e.u);
            seen.push_back(e.v);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
            throw InputError("matching edges must be vertex-disjoint");
        }
    }

    Matching(std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
        std::vector<Edge> edges;
        for (auto [a, b] : pairs) edges.push_back(make_edge(a, b));
        *this = Matching(std::move(edges));
    }

    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    const Edge& operator[](std::size_t i) const { return edges_[i]; }
    std::span<const Edge> edges() const { return edges_; }
    auto begin() const { return edges_.begin(); }
    auto end() const { return edges_.end(); }

    /// Throws unless every index in [0, n) is covered exactly once.
    void validate_perfect(std::size_t n) const {
        if (2 * edges_.size() != n) {
            throw InputError("matching with " + std::to_string(edges_.size()) + " edges cannot be perfect on " +
                             std::to_string(n) + " points");
        }
        for (const Edge& e : edges_) {
            if (e.v >= n) throw InputError("matching index " + std::to_string(e.v) + " out of range");
        }
    }

    /// mate[i] = partner of i. Requires a perfect matching on n points.
    std::vector<std::size_t> mates(std::size_t n) const {
        validate_perfect(n);
        std::vector<std::size_t> mate(n);
        for (const Edge& e : edges_) {
            mate[e.u] = e.v;
            mate[e.v] = e.u;
        }
        return mate;
    }

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    std::vector<Edge> edges_;
};

enum class Objective { maximize, minimize };

inline double edge_length(const Edge& e, const PointSet& ps) {
    if (e.u >= ps.size() || e.v >= ps.size()) {
        throw InputError("edge index out of range for a set of " + std::to_string(ps.size()) + " points");
    }
    return distance(ps[e.u], ps[e.v]);
}

/// Total Euclidean length of the edges.
inline double weight(std::span<const Edge> edges, const PointSet& ps) {
    double w = 0.0;
    for (const Edge& e : edges) w += edge_length(e, ps);
    return w;
}

inline double weight(const Matching& m, const PointSet& ps) { return weight(m.edges(), ps); }

namespace detail {

inline void require_even(std::size_t n) {
    if (n % 2 != 0) throw InputError("perfect matchings need an even number of points, got " + std::to_string(n));
}

// Exact optimum over perfect matchings of pts by DP over bitmasks of the
// still-unmatched indices. The lowest unmatched index is paired with each
// other unmatched index in increasing order; the first optimum wins, so the
// result is the lexicographically smallest optimal pair sequence.
inline std::vector<Edge> optimal_pairs(std::span<const Point> pts, Objective objective) {
    const std::size_t n = pts.size();
    require_even(n);
    if (n == 0) return {};
    if (n > 2 * kOracleMaxPairs) throw CapacityError("oracle supports at most 24 points");

    std::vector<double> dist(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = distance(pts[i], pts[j]);
    }
    const bool maximize = objective == Objective::maximize;
    const std::uint32_t full = (1u << n) - 1u;
    std::vector<double> best(std::size_t{full} + 1, 0.0);

    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        if (std::popcount(mask) % 2 != 0) continue;
        const int low = std::countr_zero(mask);
        std::uint32_t rest = mask & (mask - 1);
        bool first = true;
        double value = 0.0;
        for (std::uint32_t bits = rest; bits != 0; bits &= bits - 1) {
            const int j = std::countr_zero(bits);
            const double cand = dist[low * n + j] + best[rest & ~(1u << j)];
            if (first || (maximize ? cand > value : cand < value)) {
                value = cand;
                first = false;
            }
        }
        best[mask] = value;
    }

    std::vector<Edge> pairs;
    pairs.reserve(n / 2);
    for (std::uint32_t mask = full; mask != 0;) {
        const int low = std::countr_zero(mask);
        const std::uint32_t rest = mask & (mask - 1);
        for (std::uint32_t bits = rest; bits != 0; bits &= bits - 1) {
            const int j = std::countr_zero(bits);
            const std::uint32_t next = rest & ~(1u << j);
            if (dist[low * n + j] + best[next] == best[mask]) {
                pairs.push_back({static_cast<std::size_t>(low), static_cast<std::size_t>(j)});
                mask = next;
                break;
            }
        }
    }
    return pairs;
}

template <class Fn>
bool for_each_matching_rec(std::vector<bool>& used, std::vector<Edge>& current, std::size_t n, Fn& fn) {
    std::size_t low = 0;
    while (low < n && used[low]) ++low;
    if (low == n) {
        Matching m(current);
        if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const Matching&>, bool>) {
            return fn(m);
        } else {
            fn(m);
            return true;
        }
    }
    used[low] = true;
    for (std::size_t j = low + 1; j < n; ++j) {
        if (used[j]) continue;
        used[j] = true;
        current.push_back({low, j});
        const bool keep_going = for_each_matching_rec(used, current, n, fn);
        current.pop_back();
        used[j] = false;
        if (!keep_going) {
            used[low] = false;
            return false;
        }
    }
    used[low] = false;
    return true;
}

} // namespace detail

/// Exact optimal perfect matching. `max_pairs` caps the instance size (at
/// most 12, i.e. 24 points).
inline Matching optimal_matching(const PointSet& ps, Objective objective = Objective::maximize,
                                 std::size_t max_pairs = kOracleMaxPairs) {
    detail::require_even(ps.size());
    if (max_pairs > kOracleMaxPairs) throw CapacityError("oracle cap cannot exceed 12 pairs");
    if (ps.size() > 2 * max_pairs) {
        throw CapacityError("instance has " + std::to_string(ps.size()) + " points; oracle cap is " +
                            std::to_string(2 * max_pairs));
    }
    return Matching(detail::optimal_pairs(ps.points(), objective));
}

/// Visits every perfect matching on n points exactly once, in lexicographic
/// order of the pair sequence. A visitor returning bool may stop early by
/// returning false.
template <class Fn>
void for_each_matching(std::size_t n, Fn&& fn) {
    detail::require_even(n);
    if (n > kEnumerationMaxPoints) throw CapacityError("enumeration supports at most 12 points");
    std::vector<bool> used(n, false);
    std::vector<Edge> current;
    current.reserve(n / 2);
    detail::for_each_matching_rec(used, current, n, fn);
}

inline std::vector<Matching> enumerate_matchings(const PointSet& ps) {
    std::vector<Matching> out;
    for_each_matching(ps.size(), [&](const Matching& m) { out.push_back(m); });
    return out;
}

/// Outcome of a k-locality check.
struct LocalityCheck {
    std::size_t k = 0;
    Objective objective = Objective::maximize;
    bool holds = true;
    /// First subset (in lexicographic order of edge positions) that the
    /// oracle improves, and the improved edges on the same endpoints.
    std::optional<std::vector<Edge>> violating_subset;
    std::optional<std::vector<Edge>> improvement;
    double gain = 0.0;
};

/// Checks that every k-subset of m is optimal (per `objective`) on its own
/// 2k endpoints. A subset violates locality when the oracle gains more than
/// eps_geom * w(m).
inline LocalityCheck is_k_local_opt(const PointSet& ps, const Matching& m, std::size_t k, Objective objective,
                                    const Tolerance& tol = {}) {
    m.validate_perfect(ps.size());
    if (k < 1 || k > m.size()) {
        throw DomainError("k must lie in [1, " + std::to_string(m.size()) + "], got " + std::to_string(k));
    }
    if (k > kOracleMaxPairs) throw CapacityError("k exceeds the oracle cap of 12 edges");

    LocalityCheck out;
    out.k = k;
    out.objective = objective;
    if (k == 1) return out;

    const double threshold = tol.eps_geom * weight(m, ps);
    const auto edges = m.edges();
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    std::vector<Point> sub(2 * k);
    std::vector<std::size_t> index(2 * k);

    while (true) {
        double current = 0.0;
        for (std::size_t t = 0; t < k; ++t) {
            const Edge& e = edges[pick[t]];
            index[2 * t] = e.u;
            index[2 * t + 1] = e.v;
            sub[2 * t] = ps[e.u];
            sub[2 * t + 1] = ps[e.v];
            current += distance(ps[e.u], ps[e.v]);
        }
        const auto best = detail::optimal_pairs(sub, objective);
        double best_weight = 0.0;
        for (const Edge& e : best) best_weight += distance(sub[e.u], sub[e.v]);
        const double gain = objective == Objective::maximize ? best_weight - current : current - best_weight;
        if (gain > threshold) {
            out.holds = false;
            out.gain = gain;
            std::vector<Edge> subset;
            std::vector<Edge> better;
            for (std::size_t t = 0; t < k; ++t) subset.push_back(edges[pick[t]]);
            for (const Edge& e : best) better.push_back(make_edge(index[e.u], index[e.v]));
            std::sort(better.begin(), better.end());
            out.violating_subset = std::move(subset);
            out.improvement = std::move(better);
            return out;
        }

        // Next combination in lexicographic order.
        std::size_t t = k;
        while (t > 0 && pick[t - 1] == edges.size() - k + (t - 1)) --t;
        if (t == 0) break;
        ++pick[t - 1];
        for (std::size_t s = t; s < k; ++s) pick[s] = pick[s - 1] + 1;
    }
    return out;
}

inline LocalityCheck is_k_local_max(const PointSet& ps, const Matching& m, std::size_t k, const Tolerance& tol = {}) {
    return is_k_local_opt(ps, m, k, Objective::maximize, tol);
}

/// Repeatedly takes the longest edge between two unmatched points.
inline Matching greedy_matching(const PointSet& ps) {
    detail::require_even(ps.size());
    std::vector<Edge> all;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) all.push_back({i, j});
    }
    std::vector<double> len(all.size());
    for (std::size_t t = 0; t < all.size(); ++t) len[t] = edge_length(all[t], ps);
    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return len[a] > len[b]; });

    std::vector<bool> used(ps.size(), false);
    std::vector<Edge> picked;
    for (std::size_t t : order) {
        const Edge& e = all[t];
        if (used[e.u] || used[e.v]) continue;
        used[e.u] = used[e.v] = true;
        picked.push_back(e);
    }
    return Matching(std::move(picked));
}

struct GreedyInit {};
using SearchInit = std::variant<Matching, GreedyInit>;

struct LocalSearchResult {
    Matching matching;
    /// Weight after each step; front() is the initial weight.
    std::vector<double> weights;
    std::size_t swaps = 0;
};

/// First-improvement k-local search: while some k-subset is improvable,
/// replace its edges by the optimal matching on their endpoints.
inline LocalSearchResult k_local_search(const PointSet& ps, std::size_t k, const SearchInit& init = GreedyInit{},
                                        const Tolerance& tol = {}, Objective objective = Objective::maximize) {
    detail::require_even(ps.size());
    if (k < 1) throw DomainError("k must be at least 1");
    LocalSearchResult out;
    out.matching = std::holds_alternative<Matching>(init) ? std::get<Matching>(init) : greedy_matching(ps);
    out.matching.validate_perfect(ps.size());
    out.weights.push_back(weight(out.matching, ps));

    while (true) {
        const LocalityCheck check = is_k_local_opt(ps, out.matching, k, objective, tol);
        if (check.holds) break;
        std::vector<Edge> next;
        const auto& removed = *check.violating_subset;
        for (const Edge& e : out.matching) {
            if (std::find(removed.begin(), removed.end(), e) == removed.end()) next.push_back(e);
        }
        next.insert(next.end(), check.improvement->begin(), check.improvement->end());
        out.matching = Matching(std::move(next));
        out.weights.push_back(weight(out.matching, ps));
        ++out.swaps;
    }
    return out;
}

/// Component of the union of two perfect matchings that is a cycle. Vertex i
/// and i+1 (cyclically) are joined by an edge of the first matching when i is
/// even and of the second when i is odd.
struct AlternatingCycle {
    std::vector<std::size_t> vertices;
    std::vector<Edge> first_edges;
    std::vector<Edge> second_edges;
};

struct CycleDecomposition {
    std::vector<Edge> shared;
    std::vector<AlternatingCycle> cycles;
};

/// Splits the union of two perfect matchings on the same points into shared
/// edges and even alternating cycles.
inline CycleDecomposition cycle_decomposition(const Matching& m1, const Matching& m2) {
    if (m1.size() != m2.size()) throw InputError("matchings cover different point sets");
    const std::size_t n = 2 * m1.size();
    const auto mate1 = m1.mates(n);
    const auto mate2 = m2.mates(n);

    CycleDecomposition out;
    std::vector<bool> seen(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        if (mate1[start] == mate2[start]) {
            seen[start] = seen[mate1[start]] = true;
            out.shared.push_back(make_edge(start, mate1[start]));
            continue;
        }
        AlternatingCycle cycle;
        std::size_t v = start;
        bool use_first = true;
        do {
            seen[v] = true;
            cycle.vertices.push_back(v);
            const std::size_t next = use_first ? mate1[v] : mate2[v];
            (use_first ? cycle.first_edges : cycle.second_edges).push_back(make_edge(v, next));
            v = next;
            use_first = !use_first;
        } while (v != start);
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

/// Lower bound on every perfect matching's weight: an edge is at least as
/// long as either endpoint's nearest-neighbor distance, so w(M) is at least
/// half the sum of nearest-neighbor distances.
inline double nearest_neighbor_bound(const PointSet& ps) {
    double sum = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        double nn = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < ps.size(); ++j) {
            if (j != i) nn = std::min(nn, distance(ps[i], ps[j]));
        }
        if (std::isfinite(nn)) sum += nn;
    }
    return 0.5 * sum;
}

/// Local-versus-global comparison for one matching.
struct RatioReport {
    double weight_local = 0.0;
    double weight_global = 0.0;
    double ratio = 1.0;
    std::size_t k_requested = 0;
    /// k when locality holds; otherwise 1, since every matching is 1-local.
    std::size_t k_verified = 0;
    std::optional<std::vector<Edge>> violating_subset;
};

inline RatioReport ratio_report(const PointSet& ps, const Matching& m, std::size_t k, const Tolerance& tol = {},
                                std::size_t max_pairs = kOracleMaxPairs) {
    m.validate_perfect(ps.size());
    const Matching global = optimal_matching(ps, Objective::maximize, max_pairs);
    const LocalityCheck check = is_k_local_max(ps, m, k, tol);
    RatioReport r;
    r.weight_local = weight(m, ps);
    r.weight_global = weight(global, ps);
    r.ratio = r.weight_global > 0.0 ? r.weight_local / r.weight_global : 1.0;
    r.k_requested = k;
    r.k_verified = check.holds ? k : 1;
    r.violating_subset = check.violating_subset;
    return r;
}

} // namespace kmatch
