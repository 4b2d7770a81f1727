#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbng/analysis.hpp"
#include "bbng/dynamics.hpp"
#include "bbng/game.hpp"

namespace bbng {

inline constexpr const char* kToolName = "bbng";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::json;

inline CostVersion version_from_string(const std::string& s) {
    if (s == "sum") return CostVersion::Sum;
    if (s == "max") return CostVersion::Max;
    throw InvalidParameter("unknown cost version '" + s + "' (expected sum or max)");
}

// All on-disk formats are 1-based; indices shift at this boundary only.

inline Json game_to_json(const GameSpec& spec) {
    return Json{{"n", spec.n}, {"budgets", spec.budgets}, {"version", to_string(spec.version)}};
}

inline GameSpec game_from_json(const Json& j) {
    try {
        GameSpec spec;
        spec.n = j.at("n").get<int>();
        spec.budgets = j.at("budgets").get<std::vector<int>>();
        spec.version = version_from_string(j.at("version").get<std::string>());
        validate_spec(spec);
        return spec;
    } catch (const Json::exception& e) {
        throw InvalidParameter(std::string("malformed game JSON: ") + e.what());
    }
}

inline Json profile_to_json(const StrategyProfile& profile) {
    Json strategies = Json::array();
    for (const auto& s : profile.strategies) {
        Json row = Json::array();
        for (int t : s) row.push_back(t + 1);
        strategies.push_back(std::move(row));
    }
    return Json{{"strategies", std::move(strategies)}};
}

inline StrategyProfile profile_from_json(const Json& j) {
    try {
        StrategyProfile p;
        for (const auto& row : j.at("strategies")) {
            Strategy s;
            for (const auto& t : row) s.push_back(t.get<int>() - 1);
            std::sort(s.begin(), s.end());
            p.strategies.push_back(std::move(s));
        }
        return p;
    } catch (const Json::exception& e) {
        throw InvalidParameter(std::string("malformed profile JSON: ") + e.what());
    }
}

inline Json graph_to_json(const SimpleGraph& g) {
    Json edges = Json::array();
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u])
            if (u < v) edges.push_back(Json::array({u + 1, v + 1}));
    return Json{{"n", g.n}, {"edges", std::move(edges)}};
}

inline SimpleGraph graph_from_json(const Json& j) {
    try {
        int n = j.at("n").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges"))
            edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
        return graph_from_edges(n, edges);
    } catch (const Json::exception& e) {
        throw InvalidParameter(std::string("malformed graph JSON: ") + e.what());
    }
}

inline Json strategy_to_json(const Strategy& s) {
    Json row = Json::array();
    for (int t : s) row.push_back(t + 1);
    return row;
}

inline Json witness_to_json(const Witness& w) {
    return Json{{"player", w.player + 1},
                {"strategy", strategy_to_json(w.strategy)},
                {"old_cost", w.old_cost},
                {"new_cost", w.new_cost}};
}

inline Json rational_to_json(const Rational& r) {
    return Json{{"num", r.num}, {"den", r.den}, {"decimal", r.value()}};
}

inline Json poa_report_to_json(const PoAReport& rep) {
    Json j{{"profiles_total", rep.profiles_total},
           {"min_realization_diameter", rep.min_realization_diameter},
           {"equilibrium_count", rep.equilibrium_count}};
    if (rep.min_equilibrium_diameter) j["min_equilibrium_diameter"] = *rep.min_equilibrium_diameter;
    if (rep.max_equilibrium_diameter) j["max_equilibrium_diameter"] = *rep.max_equilibrium_diameter;
    if (rep.price_of_anarchy) j["price_of_anarchy"] = rational_to_json(*rep.price_of_anarchy);
    if (rep.price_of_stability) j["price_of_stability"] = rational_to_json(*rep.price_of_stability);
    return j;
}

// Vertex labels for word graphs: tuples over {1..t}, most significant first.
inline std::vector<std::string> word_labels(int t, int k, std::int64_t n) {
    std::vector<std::string> labels(n);
    for (std::int64_t id = 0; id < n; ++id) {
        std::string s = "(";
        std::int64_t rest = id;
        std::int64_t scale = 1;
        for (int i = 1; i < k; ++i) scale *= t;
        for (int i = 0; i < k; ++i) {
            if (i) s += ",";
            s += std::to_string(rest / scale + 1);
            rest %= scale;
            scale /= t;
        }
        s += ")";
        labels[id] = std::move(s);
    }
    return labels;
}

// One line per arc; a brace shows up as both directions.
inline std::string to_dot(const Realization& r, const std::vector<std::string>* labels = nullptr) {
    std::ostringstream out;
    out << "digraph bbng {\n";
    if (labels) {
        for (int v = 0; v < r.n; ++v)
            out << "  " << v + 1 << " [label=\"" << (*labels)[v] << "\"];\n";
    }
    for (int u = 0; u < r.n; ++u)
        for (int v : r.out[u]) out << "  " << u + 1 << " -> " << v + 1 << ";\n";
    out << "}\n";
    return out.str();
}

inline Json move_to_json(const MoveRecord& m) {
    return Json{{"type", "move"},           {"round", m.round},
                {"player", m.player + 1},   {"old", strategy_to_json(m.old_strategy)},
                {"new", strategy_to_json(m.new_strategy)},
                {"old_cost", m.old_cost},   {"new_cost", m.new_cost}};
}

inline MoveRecord move_from_json(const Json& j) {
    MoveRecord m;
    m.round = j.at("round").get<int>();
    m.player = j.at("player").get<int>() - 1;
    for (const auto& t : j.at("old")) m.old_strategy.push_back(t.get<int>() - 1);
    for (const auto& t : j.at("new")) m.new_strategy.push_back(t.get<int>() - 1);
    m.old_cost = j.at("old_cost").get<std::int64_t>();
    m.new_cost = j.at("new_cost").get<std::int64_t>();
    return m;
}

// JSON lines: a header, one line per move, and an outcome trailer.
inline void write_trace(std::ostream& out, const DynamicsTrace& trace, const Json& meta) {
    Json header{{"type", "header"},
                {"order", to_string(trace.config.order)},
                {"oracle", to_string(trace.config.oracle)},
                {"seed", trace.config.seed},
                {"round_limit", trace.config.round_limit},
                {"initial", profile_to_json(trace.initial)["strategies"]},
                {"meta", meta}};
    out << header.dump() << "\n";
    for (const auto& m : trace.moves) out << move_to_json(m).dump() << "\n";
    Json trailer{{"type", "outcome"},
                 {"outcome", to_string(trace.outcome)},
                 {"rounds_completed", trace.rounds_completed},
                 {"final", profile_to_json(trace.final_profile)["strategies"]}};
    if (trace.outcome == DynamicsOutcome::CycleDetected) trailer["period"] = trace.cycle_period;
    out << trailer.dump() << "\n";
}

inline DynamicsTrace read_trace(std::istream& in) {
    DynamicsTrace trace;
    std::string line;
    bool have_header = false, have_outcome = false;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            Json j = Json::parse(line);
            std::string type = j.at("type").get<std::string>();
            if (type == "header") {
                have_header = true;
                trace.config.seed = j.at("seed").get<std::uint64_t>();
                trace.config.round_limit = j.at("round_limit").get<int>();
                trace.config.order = j.at("order").get<std::string>() == "random"
                                         ? MoveOrder::Random
                                         : MoveOrder::RoundRobin;
                trace.config.oracle = j.at("oracle").get<std::string>() == "swap"
                                          ? MoveOracle::Swap
                                          : MoveOracle::Exact;
                trace.initial = profile_from_json(Json{{"strategies", j.at("initial")}});
            } else if (type == "move") {
                trace.moves.push_back(move_from_json(j));
            } else if (type == "outcome") {
                have_outcome = true;
                std::string o = j.at("outcome").get<std::string>();
                trace.outcome = o == "equilibrium"   ? DynamicsOutcome::Equilibrium
                                : o == "swap-stable" ? DynamicsOutcome::SwapStable
                                : o == "cycle"       ? DynamicsOutcome::CycleDetected
                                                     : DynamicsOutcome::RoundLimit;
                if (j.contains("period")) trace.cycle_period = j.at("period").get<std::int64_t>();
                trace.rounds_completed = j.at("rounds_completed").get<int>();
                trace.final_profile = profile_from_json(Json{{"strategies", j.at("final")}});
            }
        }
    } catch (const Json::exception& e) {
        throw InvalidParameter(std::string("malformed trace: ") + e.what());
    }
    if (!have_header || !have_outcome)
        throw InvalidParameter("trace is missing its header or outcome line");
    return trace;
}

} // namespace bbng
