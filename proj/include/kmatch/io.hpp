#pragma once

// JSON (and CSV import) for instances, reports and certificates.
//
// Instance file:
//   {"points": [[x, y], ...],
//    "matching": [[i, j], ...],          (optional)
//    "metadata": {...}}                  (optional, free-form)

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kmatch/certificates.hpp"
#include "kmatch/crossing.hpp"
#include "kmatch/errors.hpp"
#include "kmatch/matching.hpp"
#include "kmatch/miner.hpp"

namespace kmatch {

using json = nlohmann::json;

struct InstanceFile {
    PointSet points;
    std::optional<Matching> matching;
    json metadata = json::object();
};

inline json to_json(const Edge& e) { return json::array({e.u, e.v}); }

inline json to_json(std::span<const Edge> edges) {
    json arr = json::array();
    for (const Edge& e : edges) arr.push_back(to_json(e));
    return arr;
}

inline json to_json(const Matching& m) { return to_json(m.edges()); }

inline json to_json(Point p) { return json::array({p.x, p.y}); }

inline json to_json(const PointSet& ps) {
    json arr = json::array();
    for (const Point& p : ps) arr.push_back(to_json(p));
    return arr;
}

inline json to_json(const InstanceFile& inst) {
    json j;
    j["points"] = to_json(inst.points);
    if (inst.matching) j["matching"] = to_json(*inst.matching);
    if (!inst.metadata.empty()) j["metadata"] = inst.metadata;
    return j;
}

inline InstanceFile instance_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("points")) throw InputError("instance must be an object with \"points\"");
        std::vector<Point> pts;
        for (const json& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                throw InputError("each point must be an [x, y] pair of numbers");
            }
            pts.push_back(checked_point(p[0].get<double>(), p[1].get<double>()));
        }
        InstanceFile inst;
        inst.points = PointSet(std::move(pts));
        if (j.contains("matching") && !j.at("matching").is_null()) {
            std::vector<Edge> edges;
            for (const json& e : j.at("matching")) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
                    throw InputError("each matching edge must be an [i, j] pair of indices");
                }
                edges.push_back(make_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>()));
            }
            Matching m(std::move(edges));
            m.validate_perfect(inst.points.size());
            inst.matching = std::move(m);
        }
        if (j.contains("metadata")) inst.metadata = j.at("metadata");
        return inst;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed instance: ") + e.what());
    }
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
}

/// Reads "x,y" rows; blank lines, '#' comments and a non-numeric header row
/// are skipped.
inline InstanceFile instance_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Point> pts;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x = 0.0;
        double y = 0.0;
        if (!(row >> x >> y)) {
            if (pts.empty() && lineno == 1) continue; // header
            throw InputError("CSV line " + std::to_string(lineno) + " is not an x,y pair");
        }
        pts.push_back(checked_point(x, y));
    }
    return {PointSet(std::move(pts)), std::nullopt, json::object()};
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

inline InstanceFile load_instance(const std::string& path) {
    const std::string text = read_file(path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return instance_from_csv(text);
    return instance_from_json(parse_json_text(text));
}

/// Pretty JSON. Doubles are printed in shortest round-trip form, so reading
/// the text back reproduces every coordinate bit for bit.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json to_json(const LocalityCheck& c) {
    json j;
    j["k"] = c.k;
    j["objective"] = c.objective == Objective::maximize ? "max" : "min";
    j["holds"] = c.holds;
    if (c.violating_subset) {
        j["violating_subset"] = to_json(*c.violating_subset);
        j["improvement"] = to_json(*c.improvement);
        j["gain"] = c.gain;
    }
    return j;
}

inline json to_json(const RatioReport& r) {
    json j;
    j["weight_local"] = r.weight_local;
    j["weight_global"] = r.weight_global;
    j["ratio"] = r.ratio;
    j["k_requested"] = r.k_requested;
    j["k_verified"] = r.k_verified;
    j["violating_subset"] = r.violating_subset ? to_json(*r.violating_subset) : json(nullptr);
    return j;
}

inline json to_json(const CenterWitness& w) {
    return {{"point", to_json(w.point)}, {"slack", w.slack}, {"kind", to_string(w.kind)}};
}

inline json to_json(const Certificate& c) {
    json j;
    j["kind"] = to_string(c.kind);
    j["witness"] = to_json(c.witness);
    j["beta"] = c.beta;
    j["ratio_lower_bound"] = c.ratio_lower_bound();
    j["star_weight"] = c.star_weight;
    j["matching_weight"] = c.matching_weight;
    j["oracle_weight"] = c.oracle_weight ? json(*c.oracle_weight) : json(nullptr);
    json rows = json::array();
    for (const EdgeCheck& r : c.per_edge_checks) {
        rows.push_back({{"edge", to_json(r.edge)}, {"star_pair", r.star_pair}, {"bound", r.bound}, {"ok", r.ok}});
    }
    j["per_edge_checks"] = rows;
    return j;
}

inline json to_json(const CrossingReport& r) {
    json j;
    j["is_pairwise_crossing"] = r.is_pairwise_crossing;
    j["non_crossing_pair"] = r.non_crossing_pair
                                 ? json::array({to_json(r.non_crossing_pair->first), to_json(r.non_crossing_pair->second)})
                                 : json(nullptr);
    j["balance_ok"] = r.balance_ok;
    j["unique"] = r.unique ? json(*r.unique) : json(nullptr);
    j["globally_maximum"] = r.globally_maximum ? json(*r.globally_maximum) : json(nullptr);
    return j;
}

/// Instance document with the mined local matching plus a provenance block.
inline json to_json(const MinedInstance& mi, const MinerConfig& cfg) {
    InstanceFile inst{mi.point_set, mi.local_matching, json::object()};
    json j = to_json(inst);
    j["metadata"] = {
        {"seed", cfg.seed},
        {"provenance",
         {{"generator", "mine"},
          {"k", mi.k},
          {"ratio", mi.ratio},
          {"restart", mi.restart},
          {"rng_seed", mi.rng_seed},
          {"iterations_used", mi.iterations_used},
          {"accepted_moves", mi.accepted_moves},
          {"budget", cfg.budget_iterations},
          {"restarts", cfg.restarts},
          {"step_scale", cfg.step_scale},
          {"global_matching", to_json(mi.global_matching)}}},
    };
    return j;
}

} // namespace kmatch
