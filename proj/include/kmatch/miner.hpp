#pragma once

// Adversarial search for point sets whose k-local maximum matchings are far
// from globally maximum.
//
// Each restart draws a random instance, starts from its worst k-local maximum
// matching, and then hill-climbs: perturb one coordinate, re-run k-local
// search from the previous edge structure, and keep the move only if the
// local/global ratio strictly drops.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "kmatch/errors.hpp"
#include "kmatch/generators.hpp"
#include "kmatch/matching.hpp"

namespace kmatch {

struct MinerConfig {
    std::size_t k = 2;
    std::size_t num_points = 6;
    std::size_t budget_iterations = 100000; // per restart
    std::size_t restarts = 64;
    double step_scale = 0.05;
    std::uint64_t seed = 1;
    double bbox = 1.0;
    /// A restart stops early once its ratio falls below this.
    std::optional<double> stop_below;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;

    void validate() const {
        if (k < 1) throw DomainError("miner k must be >= 1");
        if (num_points < 2 || num_points % 2 != 0) throw DomainError("miner num_points must be even and >= 2");
        if (num_points > 2 * kOracleMaxPairs) throw CapacityError("miner num_points exceeds the oracle cap");
        if (2 * k > num_points) throw DomainError("miner k exceeds the number of edges");
        if (budget_iterations == 0) throw DomainError("miner budget must be positive");
        if (restarts == 0) throw DomainError("miner needs at least one restart");
        if (!(step_scale > 0.0) || !(bbox > 0.0)) throw DomainError("miner step_scale and bbox must be positive");
    }
};

struct MinedInstance {
    PointSet point_set;
    Matching local_matching;
    Matching global_matching;
    std::size_t k = 0;
    double ratio = 1.0;
    std::uint64_t rng_seed = 0;
    std::size_t restart = 0;
    std::size_t iterations_used = 0;
    std::size_t accepted_moves = 0;
};

struct MinerRun {
    MinedInstance best;
    /// Best instance of each restart, indexed by restart.
    std::vector<MinedInstance> per_restart;
};

namespace detail {

struct Candidate {
    Matching local;
    Matching global;
    double ratio = 1.0;
};

inline Candidate evaluate(const PointSet& ps, std::size_t k, const SearchInit& init, const Tolerance& tol) {
    Candidate c;
    c.local = k_local_search(ps, k, init, tol).matching;
    c.global = optimal_matching(ps);
    c.ratio = weight(c.local, ps) / weight(c.global, ps);
    return c;
}

// Worst k-local maximum reachable from any starting matching (greedy only
// above the enumeration cap).
inline Candidate worst_local(const PointSet& ps, std::size_t k, const Tolerance& tol) {
    Candidate worst = evaluate(ps, k, GreedyInit{}, tol);
    if (ps.size() > kEnumerationMaxPoints) return worst;
    for_each_matching(ps.size(), [&](const Matching& m) {
        Candidate c = evaluate(ps, k, m, tol);
        if (c.ratio < worst.ratio) worst = std::move(c);
    });
    return worst;
}

inline bool is_plateau(double ratio) { return ratio >= 1.0 - 1e-12; }

inline MinedInstance run_restart(const MinerConfig& cfg, std::size_t restart) {
    const Tolerance tol;
    const std::uint64_t seed = mix_seed(cfg.seed ^ mix_seed(restart + 1));
    Rng rng(seed);
    const double dist_eps = 1e-9 * cfg.bbox;
    const double area_eps = 1e-9 * cfg.bbox * cfg.bbox;
    auto reached = [&](double ratio) { return cfg.stop_below && ratio < *cfg.stop_below; };

    std::size_t iterations = 0;
    PointSet ps;
    Candidate cur;
    // Draw instances until some k-local maximum is not global.
    do {
        ps = gen_random(cfg.num_points, rng.next(), cfg.bbox);
        cur = worst_local(ps, cfg.k, tol);
        ++iterations;
    } while (is_plateau(cur.ratio) && iterations < cfg.budget_iterations);

    double sigma = cfg.step_scale * cfg.bbox;
    std::size_t accepted = 0;
    std::vector<Point> pts(ps.begin(), ps.end());
    while (iterations < cfg.budget_iterations && !reached(cur.ratio)) {
        ++iterations;
        const std::size_t i = rng.index(pts.size());
        const bool along_x = rng.uniform() < 0.5;
        Point moved = pts[i];
        (along_x ? moved.x : moved.y) += sigma * rng.normal();
        if (!fits_general_position(pts, moved, dist_eps, area_eps, i)) continue;

        std::vector<Point> next_pts = pts;
        next_pts[i] = moved;
        PointSet next(std::move(next_pts));
        Candidate cand;
        try {
            cand = evaluate(next, cfg.k, cur.local, tol);
        } catch (const Error&) {
            cand = evaluate(next, cfg.k, GreedyInit{}, tol);
        }
        if (cand.ratio < cur.ratio) {
            pts[i] = moved;
            ps = std::move(next);
            cur = std::move(cand);
            if (++accepted % 100 == 0) sigma *= 0.99;
        }
    }

    MinedInstance out;
    out.point_set = ps;
    out.local_matching = cur.local;
    out.global_matching = cur.global;
    out.k = cfg.k;
    out.ratio = cur.ratio;
    out.rng_seed = seed;
    out.restart = restart;
    out.iterations_used = iterations;
    out.accepted_moves = accepted;
    return out;
}

} // namespace detail

/// Runs all restarts (concurrently when threads allow) and returns every
/// restart's result plus the overall minimum-ratio instance; ties go to the
/// lower restart index.
inline MinerRun mine_low_ratio_detailed(const MinerConfig& cfg) {
    cfg.validate();
    MinerRun run;
    run.per_restart.resize(cfg.restarts);

    std::size_t workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, cfg.restarts);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t r = next++; r < cfg.restarts; r = next++) {
            try {
                run.per_restart[r] = detail::run_restart(cfg, r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    std::size_t best = 0;
    for (std::size_t r = 1; r < cfg.restarts; ++r) {
        if (run.per_restart[r].ratio < run.per_restart[best].ratio) best = r;
    }
    run.best = run.per_restart[best];
    return run;
}

inline MinedInstance mine_low_ratio(const MinerConfig& cfg) { return mine_low_ratio_detailed(cfg).best; }

} // namespace kmatch
