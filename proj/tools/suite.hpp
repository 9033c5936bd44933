#pragma once

// Invariant suites behind `kmatch suite`. Each suite draws seeded random
// instances and counts how many satisfy the property it is named after.

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "kmatch/certificates.hpp"
#include "kmatch/crossing.hpp"
#include "kmatch/generators.hpp"
#include "kmatch/matching.hpp"

namespace kmatch::suite {

struct Result {
    std::string name;
    std::string property;
    std::size_t passed = 0;
    std::size_t total = 0;
    double seconds = 0.0;

    bool ok() const { return passed == total; }
};

struct Scale {
    std::size_t instances;
    std::size_t families;
    std::size_t samples;
};

inline Scale scale_for(const std::string& name) {
    if (name == "full") return {300, 1000, 100000};
    return {25, 100, 2000};
}

namespace detail {

inline Matching random_matching(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; i += 2) edges.push_back(make_edge(perm[i], perm[i + 1]));
    return Matching(std::move(edges));
}

inline std::size_t even_size(Rng& rng, std::size_t lo, std::size_t hi) {
    return lo + 2 * rng.index((hi - lo) / 2 + 1);
}

template <class Body>
Result timed(std::string name, std::string property, std::size_t total, Body&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r{std::move(name), std::move(property), 0, total, 0.0};
    for (std::size_t i = 0; i < total; ++i) {
        bool ok = false;
        try {
            ok = body(i);
        } catch (const Error&) {
            ok = false;
        }
        r.passed += ok ? 1 : 0;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace detail

inline std::vector<Result> run_all(const Scale& s) {
    const double sqrt3over7 = std::sqrt(3.0 / 7.0);
    const double sqrt3over2 = std::sqrt(3.0) / 2.0;
    const Tolerance tol;
    std::vector<Result> out;

    out.push_back(detail::timed("oracle_equivalence", "subset DP maximum equals enumeration maximum", s.instances,
                                [&](std::size_t i) {
                                    Rng rng(1000 + i);
                                    const PointSet ps = gen_random(detail::even_size(rng, 4, 10), rng.next());
                                    double best = 0.0;
                                    for_each_matching(ps.size(), [&](const Matching& m) {
                                        best = std::max(best, weight(m, ps));
                                    });
                                    const double dp = weight(optimal_matching(ps), ps);
                                    return std::fabs(dp - best) <= 1e-9 * best;
                                }));

    out.push_back(detail::timed("k_local_bound", "k-local maxima reach (k-1)/k on every alternating cycle",
                                s.instances, [&](std::size_t i) {
                                    Rng rng(2000 + i);
                                    const std::size_t k = 2 + i % 3;
                                    const PointSet ps = gen_random(detail::even_size(rng, 2 * k, 12), rng.next());
                                    const Matching m =
                                        k_local_search(ps, k, detail::random_matching(ps.size(), rng), tol).matching;
                                    const Matching opt = optimal_matching(ps);
                                    const double kk = static_cast<double>(k);
                                    if (weight(m, ps) < (kk - 1.0) / kk * weight(opt, ps) - 1e-9) return false;
                                    for (const auto& c : cycle_decomposition(m, opt).cycles) {
                                        if (kk * weight(c.first_edges, ps) < (kk - 1.0) * weight(c.second_edges, ps) - 1e-9) {
                                            return false;
                                        }
                                    }
                                    return true;
                                }));

    out.push_back(detail::timed("local2_certificate", "2-local maxima reach sqrt(3/7) with an enlarged-disk witness",
                                s.instances, [&](std::size_t i) {
                                    Rng rng(3000 + i);
                                    const PointSet ps = gen_random(detail::even_size(rng, 4, 12), rng.next());
                                    const Matching m =
                                        k_local_search(ps, 2, detail::random_matching(ps.size(), rng), tol).matching;
                                    const Certificate c = certify(ps, m, CertificateKind::local2, tol);
                                    return c.matching_weight >= sqrt3over7 * *c.oracle_weight - 1e-9;
                                }));

    out.push_back(detail::timed("local3_certificate", "3-local maxima reach sqrt(3)/2 with diametral and ellipse witnesses",
                                s.instances, [&](std::size_t i) {
                                    Rng rng(4000 + i);
                                    const PointSet ps = gen_random(detail::even_size(rng, 6, 12), rng.next());
                                    const Matching m =
                                        k_local_search(ps, 3, detail::random_matching(ps.size(), rng), tol).matching;
                                    const Certificate c2 = certify(ps, m, CertificateKind::local3_sqrt2, tol);
                                    const Certificate cf = certify(ps, m, CertificateKind::local3_fingerhut, tol);
                                    return cf.matching_weight >= sqrt3over2 * *cf.oracle_weight - 1e-9 &&
                                           c2.star_weight <= c2.beta * c2.matching_weight + 1e-7;
                                }));

    out.push_back(detail::timed("disk_enlargement", "pairwise intersecting disks grown by 2/sqrt(3) share a point",
                                s.families, [&](std::size_t i) {
                                    Rng rng(5000 + i);
                                    const DiskFamily df = gen_pairwise_intersecting_disks(3 + rng.index(8), rng.next());
                                    return common_point(df.scaled(constants::enlargement), tol).slack <= tol.eps_opt;
                                }));

    out.push_back(detail::timed("distance_bounds", "endpoint and diameter bounds never exceed their maxima",
                                s.samples, [&](std::size_t i) {
                                    Rng rng(6000 + i);
                                    const double r = rng.uniform(1e-3, 4.0);
                                    const double x = rng.uniform(0.0, r);
                                    const double alpha = rng.uniform(0.0, std::numbers::pi);
                                    return endpoint_bound(x, r) <= 2.0 * std::sqrt(r * r + 1.0) + 1e-12 &&
                                           diameter_bound(alpha) <= 2.0 / std::sqrt(3.0) + 1e-12;
                                }));

    out.push_back(detail::timed("pairwise_crossing", "crossing matchings are unique, balanced and globally maximum",
                                s.instances, [&](std::size_t i) {
                                    Rng rng(7000 + i);
                                    const bool convex = i % 2 == 1;
                                    const std::size_t n = detail::even_size(rng, 4, 10);
                                    const PointSet ps = convex ? gen_convex(n, rng.next()) : gen_random(n, rng.next());
                                    const CrossingSearch found = find_pairwise_crossing(ps, tol);
                                    if (found.count > 1 || (convex && found.count != 1)) return false;
                                    if (!found.matching) return true;
                                    return halfplane_balance(ps, *found.matching, tol) &&
                                           verify_globally_maximum(ps, *found.matching, tol) &&
                                           is_k_local_max(ps, *found.matching, 2, tol).holds;
                                }));

    out.push_back(detail::timed("circle_local_minimum", "alternating circle (30 pairs) is 2-local minimum, 10x the minimum",
                                1, [&](std::size_t) {
                                    const CircleConstruction c = gen_circle_alternating(30, 0.01);
                                    const bool local = is_k_local_opt(c.points, c.unit_matching, 2,
                                                                      Objective::minimize, tol).holds;
                                    const double global_min = weight(c.eps_matching, c.points);
                                    const bool eps_is_min = global_min <= nearest_neighbor_bound(c.points) * (1.0 + 1e-9);
                                    return local && eps_is_min && weight(c.unit_matching, c.points) >= 10.0 * global_min;
                                }));
    return out;
}

} // namespace kmatch::suite
