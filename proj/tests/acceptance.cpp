// Acceptance runner: one PASS/FAIL line per criterion.
//
//   kmatch_acceptance            run all nine
//   kmatch_acceptance --only 5   run one

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kmatch/kmatch.hpp"

using namespace kmatch;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Matching random_matching(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; i += 2) edges.push_back(make_edge(perm[i], perm[i + 1]));
    return Matching(std::move(edges));
}

std::size_t even_between(Rng& rng, std::size_t lo, std::size_t hi) { return lo + 2 * rng.index((hi - lo) / 2 + 1); }

// Uniform points almost never have a non-global k-local maximum, so part of
// each sample comes from a short miner run, which starts from such a matching
// and pushes the ratio down.
MinedInstance hard_instance(std::size_t k, std::size_t n, std::uint64_t seed) {
    MinerConfig cfg;
    cfg.k = k;
    cfg.num_points = n;
    cfg.budget_iterations = 150;
    cfg.restarts = 1;
    cfg.threads = 1;
    cfg.seed = seed;
    return mine_low_ratio(cfg);
}

Outcome oracle_equivalence() {
    std::size_t bad = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        Rng rng(10000 + i);
        const PointSet ps = gen_random(even_between(rng, 4, 10), rng.next());
        double best = 0.0;
        for_each_matching(ps.size(), [&](const Matching& m) { best = std::max(best, weight(m, ps)); });
        const double rel = std::fabs(weight(optimal_matching(ps), ps) - best) / best;
        worst = std::max(worst, rel);
        bad += rel <= 1e-9 ? 0 : 1;
    }
    return {bad == 0, fmt("500 instances, %zu mismatches, worst relative gap %.2e", bad, worst)};
}

Outcome k_local_threshold() {
    std::size_t bad = 0;
    std::size_t cycles = 0;
    std::size_t outputs = 0;
    double worst_margin = 1e9;
    for (std::size_t k = 2; k <= 4; ++k) {
        const double kk = static_cast<double>(k);
        auto check = [&](const PointSet& ps, const Matching& m) {
            const Matching opt = optimal_matching(ps);
            const double ratio = weight(m, ps) / weight(opt, ps);
            worst_margin = std::min(worst_margin, ratio - (kk - 1) / kk);
            bool ok = ratio >= (kk - 1) / kk - 1e-9 && is_k_local_max(ps, m, k).holds;
            for (const auto& c : cycle_decomposition(m, opt).cycles) {
                ++cycles;
                ok = ok && kk * weight(c.first_edges, ps) >= (kk - 1) * weight(c.second_edges, ps) - 1e-9;
            }
            ++outputs;
            bad += ok ? 0 : 1;
        };
        for (std::uint64_t i = 0; i < 200; ++i) {
            Rng rng(20000 + 1000 * k + i);
            if (i < 140) {
                const PointSet ps = gen_random(even_between(rng, 2 * k, 12), rng.next());
                check(ps, k_local_search(ps, k, random_matching(ps.size(), rng)).matching);
                check(ps, k_local_search(ps, k, optimal_matching(ps, Objective::minimize)).matching);
            } else if (k < 4) {
                const MinedInstance mi = hard_instance(k, k == 2 ? even_between(rng, 6, 10) : 8, rng.next());
                check(mi.point_set, mi.local_matching);
            } else {
                const MinedInstance mi = hard_instance(2, 10, rng.next());
                check(mi.point_set, k_local_search(mi.point_set, 4, mi.local_matching).matching);
                check(mi.point_set, k_local_search(mi.point_set, 4, random_matching(10, rng)).matching);
            }
        }
    }
    return {bad == 0, fmt("%zu search outputs over 600 instances (k = 2, 3, 4), %zu non-shared alternating "
                          "cycles, %zu failures, smallest ratio - (k-1)/k = %.4f",
                          outputs, cycles, bad, worst_margin)};
}

Outcome local2_threshold() {
    std::size_t bad = 0;
    double worst_ratio = 1.0;
    double worst_edge = -1e9;
    const double floor = std::sqrt(3.0 / 7.0) - 1e-9;
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng(30000 + i);
        PointSet ps;
        Matching m;
        if (i % 2 == 0) {
            ps = gen_random(even_between(rng, 4, 12), rng.next());
            m = k_local_search(ps, 2, random_matching(ps.size(), rng)).matching;
        } else {
            MinedInstance mi = hard_instance(2, even_between(rng, 6, 10), rng.next());
            ps = std::move(mi.point_set);
            m = std::move(mi.local_matching);
        }
        try {
            const Certificate c = certify(ps, m, CertificateKind::local2);
            const double ratio = c.matching_weight / *c.oracle_weight;
            worst_ratio = std::min(worst_ratio, ratio);
            bool ok = ratio >= floor;
            for (const EdgeCheck& row : c.per_edge_checks) {
                worst_edge = std::max(worst_edge, row.star_pair - row.bound);
                ok = ok && row.star_pair <= row.bound + 1e-7;
            }
            bad += ok ? 0 : 1;
        } catch (const Error&) {
            ++bad;
        }
    }
    return {bad == 0, fmt("300 certified 2-local maxima (150 mined), %zu failures, smallest ratio %.6f (floor %.6f), "
                          "largest |ca|+|cb| - beta|ab| = %.2e",
                          bad, worst_ratio, std::sqrt(3.0 / 7.0), worst_edge)};
}

Outcome local3_threshold() {
    std::size_t bad = 0;
    double worst_ratio = 1.0;
    double worst_slack = -1e9;
    const double floor = kSqrt3 / 2 - 1e-9;
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng(40000 + i);
        PointSet ps;
        Matching m;
        if (i % 3 != 2) {
            ps = gen_random(even_between(rng, 6, 12), rng.next());
            m = k_local_search(ps, 3, random_matching(ps.size(), rng)).matching;
        } else {
            MinedInstance mi = hard_instance(3, 8, rng.next());
            ps = std::move(mi.point_set);
            m = std::move(mi.local_matching);
        }
        try {
            const Certificate s2 = certify(ps, m, CertificateKind::local3_sqrt2);
            const Certificate fh = certify(ps, m, CertificateKind::local3_fingerhut);
            const double ratio = fh.matching_weight / *fh.oracle_weight;
            worst_ratio = std::min(worst_ratio, ratio);
            worst_slack = std::max(worst_slack, fh.witness.slack);
            const bool ok = ratio >= floor && fh.witness.slack <= 1e-7 && s2.beta == std::sqrt(2.0) &&
                            s2.star_weight <= s2.beta * s2.matching_weight + 1e-7;
            bad += ok ? 0 : 1;
        } catch (const Error&) {
            ++bad;
        }
    }
    return {bad == 0, fmt("300 certified 3-local maxima (100 mined), %zu failures, smallest ratio %.6f (floor %.6f), "
                          "largest ellipse slack %.2e",
                          bad, worst_ratio, kSqrt3 / 2, worst_slack)};
}

Outcome stretch() {
    std::size_t bad = 0;
    double worst = -1e9;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng(50000 + i);
        const DiskFamily df = gen_pairwise_intersecting_disks(3 + rng.index(8), rng.next());
        const double slack = common_point(df.scaled(constants::enlargement)).slack;
        worst = std::max(worst, slack);
        bad += slack <= 1e-7 ? 0 : 1;
    }
    const DiskFamily tangent = gen_tangent_disks();
    const double below = common_point(tangent.scaled(constants::enlargement - 1e-3)).slack;
    const CenterWitness at = common_point(tangent.scaled(constants::enlargement));
    const double off = distance(at.point, {1.0, 1.0 / kSqrt3});
    const bool tight = below > 1e-4 && at.slack <= 1e-7 && off <= 1e-5;
    return {bad == 0 && tight, fmt("1000 families, %zu failures, worst slack %.2e; tangent disks: slack %.2e "
                                   "below the factor, %.2e at it, witness %.2e from (1, 1/sqrt3)",
                                   bad, worst, below, at.slack, off)};
}

// a, p, b, q convex in this order with |pa| = |pb| and angle aqb >= 2 pi / 3.
bool diameter_configuration(Rng& rng, Point& a, Point& p, Point& b, Point& q) {
    const double h = rng.uniform(0.0, 3.0);
    a = {-1, 0};
    b = {1, 0};
    p = {0, -h};
    q = {rng.uniform(-1, 1), rng.uniform(0, 1 / kSqrt3)};
    if (vertex_angle(q, a, b) < 2 * kPi / 3) return false;
    const int s = orientation(a, p, b);
    if (s == 0 || orientation(p, b, q) != s || orientation(b, q, a) != s || orientation(q, a, p) != s) return false;
    // Random similarity.
    const double t = rng.uniform(0, 2 * kPi);
    const double sc = rng.uniform(0.1, 10);
    const Point shift{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    auto move = [&](Point v) {
        return Point{sc * (std::cos(t) * v.x - std::sin(t) * v.y), sc * (std::sin(t) * v.x + std::cos(t) * v.y)} +
               shift;
    };
    a = move(a);
    p = move(p);
    b = move(b);
    q = move(q);
    return true;
}

Outcome distance_bounds() {
    // Grid maxima.
    const std::size_t n = 100000;
    double worst_endpoint = 0.0;
    for (double r : {0.1, 0.5, 1.0, 2.0 / kSqrt3, 2.0, 3.5}) {
        double best = -1.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = endpoint_bound(std::min(r, r * static_cast<double>(i) / static_cast<double>(n - 1)), r);
            if (v > best) best = v, arg = i;
        }
        worst_endpoint = std::max(worst_endpoint, std::fabs(best - 2 * std::sqrt(r * r + 1)) + (arg == 0 ? 0.0 : 1.0));
    }
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = diameter_bound(kPi * static_cast<double>(i) / static_cast<double>(n - 1));
        if (v > best) best = v, arg = i;
    }
    const double alpha_at = kPi * static_cast<double>(arg) / static_cast<double>(n - 1);
    const double diam_gap = std::fabs(best - 2 / kSqrt3);
    const bool grids = worst_endpoint <= 1e-9 && diam_gap <= 1e-9 && std::fabs(alpha_at - kPi / 3) <= kPi / (n - 1);

    // Direct statements.
    Rng rng(60000);
    std::size_t endpoint_bad = 0;
    for (int t = 0; t < 10000; ++t) {
        const Point a{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const Point b{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const double r = rng.uniform(0.01, 4.0);
        const double ab = distance(a, b);
        const double rho = r * ab / 2 * std::sqrt(rng.uniform());
        const double th = rng.uniform(0, 2 * kPi);
        const Point p = midpoint(a, b) + Point{rho * std::cos(th), rho * std::sin(th)};
        endpoint_bad += distance(p, a) + distance(p, b) <= std::sqrt(r * r + 1) * ab + 1e-9 ? 0 : 1;
    }
    std::size_t diameter_bad = 0;
    for (int t = 0; t < 10000;) {
        Point a, p, b, q;
        if (!diameter_configuration(rng, a, p, b, q)) continue;
        ++t;
        diameter_bad += distance(p, q) <= 2 / kSqrt3 * distance(p, a) + 1e-9 * std::max(1.0, distance(p, a)) ? 0 : 1;
    }
    return {grids && endpoint_bad == 0 && diameter_bad == 0,
            fmt("grid maxima off by %.1e (endpoint) and %.1e at alpha %.6f (diameter); "
                "statement violations %zu / 10000 (endpoint), %zu / 10000 (diameter)",
                worst_endpoint, diam_gap, alpha_at, endpoint_bad, diameter_bad)};
}

Outcome pairwise_crossing() {
    std::size_t bad = 0;
    std::size_t found = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        Rng rng(70000 + i);
        const PointSet ps = gen_random(even_between(rng, 4, 10), rng.next());
        const CrossingSearch s = find_pairwise_crossing(ps);
        bool ok = s.count <= 1;
        if (s.matching) {
            ++found;
            ok = ok && halfplane_balance(ps, *s.matching) && is_k_local_max(ps, *s.matching, 2).holds &&
                 verify_globally_maximum(ps, *s.matching);
        }
        bad += ok ? 0 : 1;
    }
    std::size_t convex_bad = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng(75000 + i);
        const PointSet ps = gen_convex(even_between(rng, 4, 10), rng.next());
        convex_bad += find_pairwise_crossing(ps).count == 1 ? 0 : 1;
    }
    return {bad == 0 && convex_bad == 0, fmt("500 random sets (%zu with a crossing matching), %zu failures; "
                                             "200 convex sets, %zu without exactly one",
                                             found, bad, convex_bad)};
}

Outcome upper_bounds() {
    std::string detail;
    bool ok = true;
    for (auto [k, n, target] : {std::tuple{2u, 6u, 0.94}, std::tuple{3u, 8u, 0.99}}) {
        MinerConfig cfg;
        cfg.k = k;
        cfg.num_points = n;
        cfg.restarts = 64;
        cfg.budget_iterations = 100000;
        cfg.seed = 1;
        cfg.stop_below = target;
        const MinedInstance mi = mine_low_ratio(cfg);
        // Independent re-check of the mined instance.
        const bool local = is_k_local_max(mi.point_set, mi.local_matching, k).holds;
        const double ratio = weight(mi.local_matching, mi.point_set) /
                             weight(optimal_matching(mi.point_set), mi.point_set);
        const bool hit = local && ratio < target;
        ok = ok && hit;
        detail += fmt("k=%u n=%u: best ratio %.6f (target < %.2f, restart %zu)%s; ", k, n, ratio, target,
                      mi.restart, hit ? "" : " soft failure");
    }
    detail.resize(detail.size() - 2);
    return {ok, detail};
}

Outcome circle_minimum() {
    const CircleConstruction c = gen_circle_alternating(20, 0.01);
    const LocalityCheck local = is_k_local_opt(c.points, c.unit_matching, 2, Objective::minimize);
    const double global_min = weight(c.eps_matching, c.points);
    const bool eps_is_min = global_min <= nearest_neighbor_bound(c.points) * (1 + 1e-9);
    const double factor = weight(c.unit_matching, c.points) / global_min;
    std::string detail = fmt("n=20 eps=0.01 radius %.4f: 2-local minimum %s", c.radius, local.holds ? "yes" : "no");
    if (!local.holds) detail += fmt(" (a 2-swap gains %.5f)", local.gain);
    detail += fmt(", eps chords minimum %s, factor %.1f", eps_is_min ? "yes" : "no", factor);
    return {local.holds && eps_is_min && factor >= 10.0, detail};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "oracle equivalence", 10, oracle_equivalence},
        {2, "k-local (k-1)/k threshold", 60, k_local_threshold},
        {3, "2-local sqrt(3/7) threshold", 120, local2_threshold},
        {4, "3-local sqrt(3)/2 threshold", 180, local3_threshold},
        {5, "2/sqrt(3) disk enlargement", 30, stretch},
        {6, "endpoint and diameter bounds", 60, distance_bounds},
        {7, "pairwise crossing matchings", 60, pairwise_crossing},
        {8, "mined upper bounds", 1200, upper_bounds},
        {9, "alternating circle 2-local minimum", 10, circle_minimum},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.time_limit_s;
        const bool pass = out.passed && in_time;
        failures += pass ? 0 : 1;
        std::printf("criterion %d %s  %s: %s [%.1f s, limit %.0f s]\n", c.id, pass ? "PASS" : "FAIL", c.name.c_str(),
                    out.detail.c_str(), secs, c.time_limit_s);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
