// kmatch: command-line front end.
//
// Exit codes: 0 success, 1 malformed input, 2 oracle cap exceeded,
// 3 verification failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kmatch/io.hpp"
#include "kmatch/kmatch.hpp"
#include "kmatch/svg.hpp"
#include "suite.hpp"

namespace {

using namespace kmatch;

enum ExitCode : int { kOk = 0, kInput = 1, kCap = 2, kVerify = 3 };

struct Options {
    std::string input;
    std::string output;
    std::string svg;
    std::string objective = "max";
    std::size_t k = 2;
    std::string kind = "local2";
    std::uint64_t seed = 1;
    std::size_t budget = 100000;
    std::size_t restarts = 64;
    std::size_t cap = kOracleMaxPairs;
    std::string scale = "smoke";
    // mine / gen
    std::size_t n = 6;
    double step_scale = 0.05;
    std::optional<double> target;
    std::size_t threads = 0;
    std::string family = "random";
    double bbox = 1.0;
    double eps = 0.01;
};

void emit(const Options& opt, const json& doc) {
    const std::string text = dump(doc);
    std::cout << text;
    if (!opt.output.empty()) write_file(opt.output, text);
}

Objective parse_objective(const std::string& s) { return s == "min" ? Objective::minimize : Objective::maximize; }

CertificateKind parse_kind(const std::string& s) {
    if (s == "local2") return CertificateKind::local2;
    if (s == "local3-sqrt2") return CertificateKind::local3_sqrt2;
    return CertificateKind::local3_fingerhut;
}

const Matching& require_matching(const InstanceFile& inst) {
    if (!inst.matching) throw InputError("instance has no \"matching\" field");
    return *inst.matching;
}

int cmd_solve(const Options& opt) {
    const InstanceFile inst = load_instance(opt.input);
    const Objective objective = parse_objective(opt.objective);
    const Matching m = optimal_matching(inst.points, objective, opt.cap);
    json doc;
    doc["objective"] = opt.objective;
    doc["matching"] = to_json(m);
    doc["weight"] = weight(m, inst.points);
    emit(opt, doc);
    if (!opt.svg.empty()) write_file(opt.svg, render_svg(inst.points, m));
    return kOk;
}

int cmd_verify(const Options& opt) {
    const InstanceFile inst = load_instance(opt.input);
    const Matching& m = require_matching(inst);
    json doc;
    bool holds = true;
    if (parse_objective(opt.objective) == Objective::maximize) {
        const RatioReport r = ratio_report(inst.points, m, opt.k, {}, opt.cap);
        doc = to_json(r);
        holds = !r.violating_subset.has_value();
    } else {
        const LocalityCheck c = is_k_local_opt(inst.points, m, opt.k, Objective::minimize);
        const Matching best = optimal_matching(inst.points, Objective::minimize, opt.cap);
        doc["weight_local"] = weight(m, inst.points);
        doc["weight_global"] = weight(best, inst.points);
        doc["ratio"] = weight(m, inst.points) / weight(best, inst.points);
        doc["locality"] = to_json(c);
        holds = c.holds;
    }
    emit(opt, doc);
    return holds ? kOk : kVerify;
}

int cmd_certify(const Options& opt) {
    const InstanceFile inst = load_instance(opt.input);
    const Matching& m = require_matching(inst);
    try {
        const Certificate cert = certify(inst.points, m, parse_kind(opt.kind), {}, opt.cap);
        emit(opt, to_json(cert));
        if (!opt.svg.empty()) write_file(opt.svg, render_svg(inst.points, m, cert));
        return kOk;
    } catch (const LocalityViolation& v) {
        json doc;
        doc["error"] = v.what();
        doc["locality"] = to_json(v.check());
        emit(opt, doc);
        return kVerify;
    }
}

int cmd_crossing(const Options& opt) {
    const InstanceFile inst = load_instance(opt.input);
    json doc;
    if (inst.matching) {
        doc = to_json(crossing_report(inst.points, *inst.matching));
    } else {
        const CrossingSearch found = find_pairwise_crossing(inst.points);
        doc["count"] = found.count;
        doc["matching"] = found.matching ? to_json(*found.matching) : json(nullptr);
        if (found.matching) doc["report"] = to_json(crossing_report(inst.points, *found.matching));
    }
    emit(opt, doc);
    return kOk;
}

int cmd_mine(const Options& opt) {
    MinerConfig cfg;
    cfg.k = opt.k;
    cfg.num_points = opt.n;
    cfg.budget_iterations = opt.budget;
    cfg.restarts = opt.restarts;
    cfg.step_scale = opt.step_scale;
    cfg.seed = opt.seed;
    cfg.bbox = opt.bbox;
    cfg.stop_below = opt.target;
    cfg.threads = opt.threads;
    const MinerRun run = mine_low_ratio_detailed(cfg);

    double best = 2.0;
    for (const MinedInstance& r : run.per_restart) {
        best = std::min(best, r.ratio);
        std::fprintf(stderr, "restart %zu: ratio %.9f after %zu iterations (%zu accepted); best %.9f\n", r.restart,
                     r.ratio, r.iterations_used, r.accepted_moves, best);
    }
    emit(opt, to_json(run.best, cfg));
    return kOk;
}

int cmd_gen(const Options& opt) {
    InstanceFile inst;
    inst.metadata = {{"seed", opt.seed}, {"provenance", {{"generator", opt.family}}}};
    if (opt.family == "random") {
        inst.points = gen_random(opt.n, opt.seed, opt.bbox);
    } else if (opt.family == "convex") {
        inst.points = gen_convex(opt.n, opt.seed);
    } else if (opt.family == "circle") {
        CircleConstruction c = gen_circle_alternating(opt.n, opt.eps);
        inst.points = std::move(c.points);
        inst.matching = std::move(c.unit_matching);
        inst.metadata["provenance"]["eps"] = opt.eps;
        inst.metadata["provenance"]["radius"] = c.radius;
    } else {
        throw InputError("unknown family " + opt.family);
    }
    emit(opt, to_json(inst));
    if (!opt.svg.empty()) write_file(opt.svg, render_svg(inst.points, inst.matching));
    return kOk;
}

int cmd_suite(const Options& opt) {
    const auto results = suite::run_all(suite::scale_for(opt.scale));
    json doc;
    doc["scale"] = opt.scale;
    json rows = json::array();
    bool all = true;
    for (const auto& r : results) {
        rows.push_back({{"suite", r.name},
                        {"property", r.property},
                        {"passed", r.passed},
                        {"total", r.total},
                        {"seconds", r.seconds}});
        all = all && r.ok();
    }
    doc["suites"] = rows;
    doc["all_passed"] = all;
    emit(opt, doc);
    return all ? kOk : kVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-local maximum matchings: oracles, certificates, crossing checks and instance mining"};
    app.require_subcommand(1);
    Options opt;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", opt.input, "Instance file (.json, or .csv of x,y rows)")->required();
    };
    auto add_output = [&](CLI::App* sub) { sub->add_option("--output", opt.output, "Also write the JSON result here"); };
    auto add_cap = [&](CLI::App* sub) {
        sub->add_option("--cap", opt.cap, "Oracle cap in matching edges (at most 12)");
    };

    auto* solve = app.add_subcommand("solve", "Exact optimal matching");
    add_input(solve);
    add_output(solve);
    add_cap(solve);
    solve->add_option("--objective", opt.objective)->check(CLI::IsMember({"max", "min"}));
    solve->add_option("--svg", opt.svg, "Render the solution as SVG");

    auto* verify = app.add_subcommand("verify", "k-locality check and local/global ratio");
    add_input(verify);
    add_output(verify);
    add_cap(verify);
    verify->add_option("--k", opt.k)->check(CLI::PositiveNumber);
    verify->add_option("--objective", opt.objective)->check(CLI::IsMember({"max", "min"}));

    auto* certify_cmd = app.add_subcommand("certify", "Ratio certificate for a local maximum matching");
    add_input(certify_cmd);
    add_output(certify_cmd);
    add_cap(certify_cmd);
    certify_cmd->add_option("--kind", opt.kind)->check(CLI::IsMember({"local2", "local3-sqrt2", "local3-fingerhut"}));
    certify_cmd->add_option("--svg", opt.svg, "Render points, disks, witness and star as SVG");

    auto* crossing = app.add_subcommand("crossing", "Pairwise crossing matching report");
    add_input(crossing);
    add_output(crossing);

    auto* mine = app.add_subcommand("mine", "Search for low-ratio k-local maximum matchings");
    add_output(mine);
    mine->add_option("--k", opt.k)->check(CLI::PositiveNumber);
    mine->add_option("--n", opt.n, "Number of points");
    mine->add_option("--seed", opt.seed);
    mine->add_option("--budget", opt.budget, "Iterations per restart");
    mine->add_option("--restarts", opt.restarts);
    mine->add_option("--step-scale", opt.step_scale);
    mine->add_option("--target", opt.target, "Stop a restart once its ratio drops below this");
    mine->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    mine->add_option("--bbox", opt.bbox);

    auto* gen = app.add_subcommand("gen", "Generate an instance");
    add_output(gen);
    gen->add_option("--family", opt.family)->check(CLI::IsMember({"random", "convex", "circle"}));
    gen->add_option("--n", opt.n, "Points (random, convex) or pairs (circle)");
    gen->add_option("--seed", opt.seed);
    gen->add_option("--bbox", opt.bbox);
    gen->add_option("--eps", opt.eps, "Short chord length for the circle family");
    gen->add_option("--svg", opt.svg);

    auto* suite_cmd = app.add_subcommand("suite", "Run the invariant suites");
    add_output(suite_cmd);
    suite_cmd->add_option("--scale", opt.scale)->check(CLI::IsMember({"smoke", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*solve) return cmd_solve(opt);
        if (*verify) return cmd_verify(opt);
        if (*certify_cmd) return cmd_certify(opt);
        if (*crossing) return cmd_crossing(opt);
        if (*mine) return cmd_mine(opt);
        if (*gen) return cmd_gen(opt);
        if (*suite_cmd) return cmd_suite(opt);
    } catch (const CapacityError& e) {
        std::cerr << "kmatch: " << e.what() << '\n';
        return kCap;
    } catch (const VerificationError& e) {
        std::cerr << "kmatch: verification failed: " << e.what() << '\n';
        return kVerify;
    } catch (const Error& e) {
        std::cerr << "kmatch: " << e.what() << '\n';
        return kInput;
    }
    return kInput;
}
