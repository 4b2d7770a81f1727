// Command line front end: generators, cost queries, equilibrium checks,
// improvement dynamics, exhaustive enumeration and the structural analyses,
// wired for reproducible batch runs.
//
// Exit codes: 0 success, 2 usage or bad input, 3 enumeration/resource cap,
// 4 a check or validator reported a violation.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bbng/analysis.hpp"
#include "bbng/best_response.hpp"
#include "bbng/constructions.hpp"
#include "bbng/dynamics.hpp"
#include "bbng/enumerate.hpp"
#include "bbng/io.hpp"

namespace {

using bbng::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitCheckFailed = 4;

struct CommonOptions {
    int threads = 0;
    std::uint64_t seed = 0;
    std::int64_t candidate_cap = bbng::kDefaultCandidateCap;
    std::int64_t profile_cap = bbng::kDefaultProfileCap;
    std::int64_t vertex_cap = bbng::kDefaultVertexCap;
};

Json make_meta(const std::string& command, const CommonOptions& opt) {
    return Json{{"tool", bbng::kToolName},
                {"version", bbng::kToolVersion},
                {"command", command},
                {"seed", opt.seed},
                {"threads", opt.threads},
                {"candidate_cap", opt.candidate_cap},
                {"profile_cap", opt.profile_cap},
                {"vertex_cap", opt.vertex_cap}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bbng::InvalidParameter("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw bbng::InvalidParameter("cannot parse " + path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw bbng::InvalidParameter("cannot write " + path);
    out << content;
}

void write_json_file(const std::string& path, Json j, const Json& meta) {
    j["meta"] = meta;
    write_file(path, j.dump(2) + "\n");
}

bbng::GameSpec load_game(const std::string& path) {
    return bbng::game_from_json(read_json_file(path));
}

bbng::StrategyProfile load_profile(const std::string& path) {
    return bbng::profile_from_json(read_json_file(path));
}

Json claims_to_json(const bbng::ConstructionClaims& c) {
    Json j;
    if (c.diameter_exact) j["diameter"] = *c.diameter_exact;
    if (c.diameter_at_most) j["diameter_at_most"] = *c.diameter_at_most;
    j["equilibrium_sum"] = c.equilibrium_sum;
    j["equilibrium_max"] = c.equilibrium_max;
    if (c.min_degree_at_least) j["min_degree_at_least"] = *c.min_degree_at_least;
    if (c.max_degree_at_most) j["max_degree_at_most"] = *c.max_degree_at_most;
    return j;
}

std::vector<int> parse_budgets(const std::string& csv) {
    std::vector<int> budgets;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            budgets.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw bbng::InvalidParameter("cannot parse budget entry '" + item + "'");
        }
    }
    if (budgets.empty()) throw bbng::InvalidParameter("empty budget list");
    return budgets;
}

int run_generate(const std::string& family, int k, int t, const std::string& budgets_csv,
                 const std::string& version_str, const std::string& out_dir,
                 const CommonOptions& opt) {
    bbng::ConstructionOutput out;
    if (family == "spider") {
        out = bbng::gen_spider(k);
    } else if (family == "binary-tree") {
        out = bbng::gen_perfect_binary_tree(k);
    } else if (family == "word-graph") {
        out = bbng::gen_word_graph(t, k, opt.vertex_cap);
    } else if (family == "sqrtlog") {
        out = bbng::gen_sqrtlog_instance(k, opt.vertex_cap);
    } else if (family == "theorem3") {
        out = bbng::construct_equilibrium(parse_budgets(budgets_csv),
                                          bbng::version_from_string(version_str));
    } else {
        throw bbng::InvalidParameter("unknown family '" + family + "'");
    }

    std::filesystem::create_directories(out_dir);
    Json meta = make_meta("generate --family " + family, opt);
    write_json_file(out_dir + "/game.json", bbng::game_to_json(out.spec), meta);
    write_json_file(out_dir + "/profile.json", bbng::profile_to_json(out.profile), meta);

    auto r = bbng::build_realization(out.spec, out.profile);
    std::string dot = "// " + std::string(bbng::kToolName) + " " + bbng::kToolVersion +
                      " generate --family " + family + "\n";
    if (out.word_t > 0) {
        auto labels = bbng::word_labels(out.word_t, out.word_k, out.spec.n);
        dot += bbng::to_dot(r, &labels);
    } else {
        dot += bbng::to_dot(r);
    }
    write_file(out_dir + "/graph.dot", dot);

    Json summary{{"family", family},
                 {"provenance", bbng::to_string(out.provenance)},
                 {"n", out.spec.n},
                 {"claims", claims_to_json(out.claims)},
                 {"files", {out_dir + "/game.json", out_dir + "/profile.json",
                            out_dir + "/graph.dot"}}};
    if (out.cover) summary["case"] = out.cover->case_id;
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int run_cost(const std::string& game_path, const std::string& profile_path, int player,
             const CommonOptions& opt) {
    auto spec = load_game(game_path);
    auto profile = load_profile(profile_path);
    auto r = bbng::build_realization(spec, profile);
    Json j{{"version", bbng::to_string(spec.version)}};
    if (player < 0) throw bbng::IndexOutOfRange("player must be positive");
    if (player > 0) {
        if (player > spec.n) throw bbng::IndexOutOfRange("player index exceeds n");
        j["player"] = player;
        j["cost"] = bbng::cost(r, player - 1, spec.version);
        j["local_diameter"] = bbng::local_diameter(r, player - 1);
    } else {
        auto rep = bbng::cost_report(r, spec.version, opt.threads);
        j["kappa"] = rep.kappa;
        j["costs"] = rep.costs;
        j["local_diameters"] = rep.local_diameters;
        j["diameter"] =
            *std::max_element(rep.local_diameters.begin(), rep.local_diameters.end());
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int run_best_response(const std::string& game_path, const std::string& profile_path, int player,
                      const std::string& mode, const CommonOptions& opt) {
    auto spec = load_game(game_path);
    auto profile = load_profile(profile_path);
    if (player < 1 || player > spec.n) throw bbng::IndexOutOfRange("player must lie in 1..n");
    bbng::BestResponseResult res =
        mode == "exact" ? bbng::best_response_exact(spec, profile, player - 1, spec.version,
                                                    opt.candidate_cap)
                        : bbng::best_response_swap(spec, profile, player - 1, spec.version);
    Json j{{"player", player},
           {"mode", mode},
           {"strategy", bbng::strategy_to_json(res.strategy)},
           {"cost", res.cost},
           {"improved", res.improved},
           {"candidates_examined", res.candidates_examined}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int run_check(const std::string& game_path, const std::string& profile_path,
              const std::string& mode, const CommonOptions& opt) {
    auto spec = load_game(game_path);
    auto profile = load_profile(profile_path);
    if (mode == "exact") {
        auto check = bbng::is_equilibrium_exact(spec, profile, spec.version, opt.candidate_cap);
        Json j{{"mode", "exact"}, {"equilibrium", check.equilibrium}};
        if (check.witness) j["witness"] = bbng::witness_to_json(*check.witness);
        std::cout << j.dump(2) << "\n";
        return check.equilibrium ? kExitOk : kExitCheckFailed;
    }
    auto verdict = bbng::is_equilibrium_sufficient(spec, profile, opt.threads);
    bool proven = verdict == bbng::SufficientVerdict::Proven;
    Json j{{"mode", "sufficient"}, {"verdict", proven ? "proven" : "inconclusive"}};
    std::cout << j.dump(2) << "\n";
    return proven ? kExitOk : kExitCheckFailed;
}

int run_dynamics(const std::string& game_path, const std::string& init, const std::string& order,
                 int rounds, const std::string& oracle, const std::string& trace_path,
                 const std::string& final_path, const CommonOptions& opt) {
    if (order != "round-robin" && order != "random")
        throw bbng::InvalidParameter("order must be round-robin or random");
    if (oracle != "exact" && oracle != "swap")
        throw bbng::InvalidParameter("oracle must be exact or swap");
    auto spec = load_game(game_path);
    bbng::StrategyProfile start;
    if (init == "random") {
        std::mt19937_64 rng(opt.seed);
        start = bbng::random_profile(spec, rng);
    } else {
        start = load_profile(init);
    }
    bbng::DynamicsConfig config;
    config.order = order == "random" ? bbng::MoveOrder::Random : bbng::MoveOrder::RoundRobin;
    config.oracle = oracle == "swap" ? bbng::MoveOracle::Swap : bbng::MoveOracle::Exact;
    config.seed = opt.seed;
    config.round_limit = rounds;
    config.candidate_cap = opt.candidate_cap;
    auto trace = bbng::best_response_dynamics(spec, start, config);

    Json meta = make_meta("dynamics", opt);
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw bbng::InvalidParameter("cannot write " + trace_path);
        bbng::write_trace(out, trace, meta);
    }
    if (!final_path.empty())
        write_json_file(final_path, bbng::profile_to_json(trace.final_profile), meta);

    Json j{{"outcome", bbng::to_string(trace.outcome)},
           {"rounds_completed", trace.rounds_completed},
           {"moves", trace.moves.size()},
           {"final", bbng::profile_to_json(trace.final_profile)["strategies"]}};
    if (trace.outcome == bbng::DynamicsOutcome::CycleDetected) j["period"] = trace.cycle_period;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int run_enumerate(const std::string& game_path, const std::string& out_path,
                  const CommonOptions& opt) {
    auto spec = load_game(game_path);
    auto report =
        bbng::price_of_anarchy_exhaustive(spec, opt.profile_cap, opt.threads, opt.candidate_cap);
    auto result =
        bbng::enumerate_equilibria(spec, opt.profile_cap, opt.threads, opt.candidate_cap);
    Json j = bbng::poa_report_to_json(report);
    if (!out_path.empty()) {
        Json eqs = Json::array();
        for (const auto& eq : result.equilibria)
            eqs.push_back(bbng::profile_to_json(eq)["strategies"]);
        write_json_file(out_path, Json{{"equilibria", std::move(eqs)}},
                        make_meta("enumerate", opt));
        j["equilibria_file"] = out_path;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int run_analyze(const std::string& game_path, const std::string& profile_path,
                const std::string& checks_csv, std::int64_t samples, const CommonOptions& opt) {
    auto spec = load_game(game_path);
    auto profile = load_profile(profile_path);

    std::vector<std::string> checks;
    std::stringstream ss(checks_csv);
    std::string item;
    while (std::getline(ss, item, ',')) checks.push_back(item);
    if (checks.empty()) throw bbng::InvalidParameter("no checks requested");

    Json j;
    bool violation = false;
    for (const auto& check : checks) {
        if (check == "structure") {
            auto rep = bbng::unit_budget_structure(spec, profile);
            bool holds = rep.claim_for(spec.version);
            j["structure"] = Json{{"cycle_length", rep.cycle_length},
                                  {"max_distance_to_cycle", rep.max_distance_to_cycle},
                                  {"brace_count", rep.brace_count},
                                  {"sum_claim_holds", rep.sum_claim_holds},
                                  {"max_claim_holds", rep.max_claim_holds},
                                  {"holds", holds}};
            violation |= !holds;
        } else if (check == "tree-bound") {
            auto verdict = bbng::tree_diameter_bound_check(spec, profile);
            j["tree_bound"] = Json{
                {"holds", verdict.holds}, {"diameter", verdict.diameter}, {"bound", verdict.bound}};
            violation |= !verdict.holds;
        } else if (check == "connectivity") {
            auto verdict =
                bbng::check_connectivity_theorem(spec, profile, true, opt.candidate_cap);
            j["connectivity"] = Json{{"holds", verdict.holds},
                                     {"vacuous", verdict.vacuous},
                                     {"diameter", verdict.diameter},
                                     {"connectivity", verdict.connectivity},
                                     {"min_budget", verdict.min_budget}};
            violation |= !verdict.holds;
        } else if (check == "expansion") {
            auto r = bbng::build_realization(spec, profile);
            auto f = bbng::expansion_profile(bbng::underlying_graph(r), opt.threads);
            j["expansion"] = Json{{"f", f}, {"diameter", f.size() - 1}};
        } else if (check == "deviations") {
            auto rep = bbng::sample_deviations(spec, profile, samples, opt.seed, opt.threads);
            Json d{{"samples", rep.samples},
                   {"improving_found", rep.improving_found},
                   {"min_cost_seen", rep.min_cost_seen}};
            if (rep.first_improvement)
                d["first_improvement"] = bbng::witness_to_json(*rep.first_improvement);
            j["deviations"] = std::move(d);
            violation |= rep.improving_found > 0;
        } else {
            throw bbng::InvalidParameter("unknown check '" + check + "'");
        }
    }
    std::cout << j.dump(2) << "\n";
    return violation ? kExitCheckFailed : kExitOk;
}

int run_reduce(const std::string& graph_path, int k, const std::string& version_str, bool verify,
               const std::string& out_dir, const CommonOptions& opt) {
    auto h = bbng::graph_from_json(read_json_file(graph_path));
    auto version = bbng::version_from_string(version_str);
    auto red = bbng::reduce_kcenter(h, k, version);

    Json j{{"n", h.n},
           {"k", k},
           {"appended_player", red.appended_player + 1},
           {"cost_offset", red.cost_offset},
           {"game", bbng::game_to_json(red.spec)},
           {"profile", bbng::profile_to_json(red.profile)}};

    bool agree = true;
    if (verify) {
        auto br = bbng::best_response_exact(red.spec, red.profile, red.appended_player, version,
                                            opt.candidate_cap);
        auto oracle = version == bbng::CostVersion::Max
                          ? bbng::brute_force_kcenter(h, k, opt.profile_cap)
                          : bbng::brute_force_kmedian(h, k, opt.profile_cap);
        agree = br.cost - red.cost_offset == oracle.value;
        j["verify"] = Json{{"best_response_cost", br.cost},
                           {"best_response_set", bbng::strategy_to_json(br.strategy)},
                           {"optimum", oracle.value},
                           {"agree", agree}};
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        Json meta = make_meta("reduce", opt);
        write_json_file(out_dir + "/game.json", bbng::game_to_json(red.spec), meta);
        write_json_file(out_dir + "/profile.json", bbng::profile_to_json(red.profile), meta);
    }
    std::cout << j.dump(2) << "\n";
    return agree ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-budget network creation games"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    CommonOptions opt;
    app.add_option("--threads", opt.threads, "worker threads (0 = BBNCG_THREADS env or hardware)");
    app.add_option("--seed", opt.seed, "seed for every randomized step");
    app.add_option("--candidate-cap", opt.candidate_cap, "per-player strategy enumeration cap");
    app.add_option("--profile-cap", opt.profile_cap, "whole-game profile enumeration cap");
    app.add_option("--vertex-cap", opt.vertex_cap, "generated graph size cap");

    std::string family, budgets_csv, version_str = "sum", out_dir = ".";
    int gen_k = 0, gen_t = 0;
    auto* generate = app.add_subcommand("generate", "build a named instance family");
    generate->add_option("--family", family, "spider|binary-tree|word-graph|theorem3|sqrtlog")
        ->required();
    generate->add_option("--k", gen_k, "size parameter");
    generate->add_option("--t", gen_t, "digit range (word-graph)");
    generate->add_option("--budgets", budgets_csv, "comma-separated budgets (theorem3)");
    generate->add_option("--version", version_str, "sum|max (theorem3)");
    generate->add_option("--out", out_dir, "output directory");

    std::string game_path, profile_path;
    int player = 0;
    auto* cost_cmd = app.add_subcommand("cost", "per-player costs of a profile");
    cost_cmd->add_option("--game", game_path)->required();
    cost_cmd->add_option("--profile", profile_path)->required();
    cost_cmd->add_option("--player", player, "1-based; all players when omitted");

    std::string mode = "exact";
    auto* br_cmd = app.add_subcommand("best-response", "one player's best reply");
    br_cmd->add_option("--game", game_path)->required();
    br_cmd->add_option("--profile", profile_path)->required();
    br_cmd->add_option("--player", player)->required();
    br_cmd->add_option("--mode", mode, "exact|swap");

    auto* check_cmd = app.add_subcommand("check", "equilibrium check");
    check_cmd->add_option("--game", game_path)->required();
    check_cmd->add_option("--profile", profile_path)->required();
    check_cmd->add_option("--mode", mode, "exact|sufficient");

    std::string init = "random", order = "round-robin", oracle = "exact";
    std::string trace_path, final_path;
    int rounds = 100;
    auto* dyn_cmd = app.add_subcommand("dynamics", "scheduled improvement dynamics");
    dyn_cmd->add_option("--game", game_path)->required();
    dyn_cmd->add_option("--init", init, "profile path or 'random'");
    dyn_cmd->add_option("--order", order, "round-robin|random");
    dyn_cmd->add_option("--rounds", rounds, "round limit");
    dyn_cmd->add_option("--oracle", oracle, "exact|swap");
    dyn_cmd->add_option("--trace", trace_path, "write a JSONL trace here");
    dyn_cmd->add_option("--final", final_path, "write the final profile here");

    std::string enum_out;
    auto* enum_cmd = app.add_subcommand("enumerate", "all equilibria plus the anarchy report");
    enum_cmd->add_option("--game", game_path)->required();
    enum_cmd->add_option("--out", enum_out, "write the equilibrium list here");

    std::string checks = "structure,tree-bound,connectivity,expansion";
    std::int64_t samples = 1000;
    auto* analyze_cmd = app.add_subcommand("analyze", "structural theorem validators");
    analyze_cmd->add_option("--game", game_path)->required();
    analyze_cmd->add_option("--profile", profile_path)->required();
    analyze_cmd->add_option("--checks", checks,
                            "comma list: structure,tree-bound,connectivity,expansion,deviations");
    analyze_cmd->add_option("--samples", samples, "deviation samples");

    std::string graph_path, reduce_version = "max";
    int facilities = 1;
    bool verify = false;
    std::string reduce_out;
    auto* reduce_cmd = app.add_subcommand("reduce", "facility location as a best response");
    reduce_cmd->add_option("--kcenter", graph_path, "undirected graph JSON")->required();
    reduce_cmd->add_option("-k,--facilities", facilities, "facility count")->required();
    reduce_cmd->add_option("--version", reduce_version, "max (k-center) | sum (k-median)");
    reduce_cmd->add_flag("--verify", verify, "check against the brute-force oracle");
    reduce_cmd->add_option("--out", reduce_out, "write game.json/profile.json here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (generate->parsed())
            return run_generate(family, gen_k, gen_t, budgets_csv, version_str, out_dir, opt);
        if (cost_cmd->parsed()) return run_cost(game_path, profile_path, player, opt);
        if (br_cmd->parsed()) {
            if (mode != "exact" && mode != "swap")
                throw bbng::InvalidParameter("mode must be exact or swap");
            return run_best_response(game_path, profile_path, player, mode, opt);
        }
        if (check_cmd->parsed()) {
            if (mode != "exact" && mode != "sufficient")
                throw bbng::InvalidParameter("mode must be exact or sufficient");
            return run_check(game_path, profile_path, mode, opt);
        }
        if (dyn_cmd->parsed())
            return run_dynamics(game_path, init, order, rounds, oracle, trace_path, final_path,
                                opt);
        if (enum_cmd->parsed()) return run_enumerate(game_path, enum_out, opt);
        if (analyze_cmd->parsed()) return run_analyze(game_path, profile_path, checks, samples, opt);
        if (reduce_cmd->parsed())
            return run_reduce(graph_path, facilities, reduce_version, verify, reduce_out, opt);
        std::cerr << app.help();
        return kExitUsage;
    } catch (const bbng::EnumerationCapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const bbng::ResourceBound& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return kExitCap;
    } catch (const bbng::NotAnEquilibrium& e) {
        std::cerr << "not an equilibrium: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const bbng::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
