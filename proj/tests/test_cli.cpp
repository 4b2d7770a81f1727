#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "bbng/io.hpp"

// End-to-end runs of the installed binary; BBNG_CLI_PATH comes from CMake.

namespace {

namespace fs = std::filesystem;
using bbng::Json;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(BBNG_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    while (std::size_t got = fread(buffer, 1, sizeof buffer, pipe)) result.out.append(buffer, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "bbng_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

} // namespace

TEST_CASE("generate and check a spider", "[cli]") {
    auto dir = temp_dir() / "spider";
    auto gen = run("generate --family spider --k 2 --out " + dir.string());
    REQUIRE(gen.exit_code == 0);
    REQUIRE(fs::exists(dir / "game.json"));
    REQUIRE(fs::exists(dir / "profile.json"));
    REQUIRE(fs::exists(dir / "graph.dot"));

    auto game = Json::parse(std::ifstream(dir / "game.json"));
    REQUIRE(game["n"] == 7);
    REQUIRE(game["version"] == "max");
    REQUIRE(game["meta"]["tool"] == "bbng");

    auto check = run("check --game " + (dir / "game.json").string() + " --profile " +
                     (dir / "profile.json").string() + " --mode exact");
    REQUIRE(check.exit_code == 0);
    REQUIRE(Json::parse(check.out)["equilibrium"] == true);
}

TEST_CASE("check reports witnesses with exit code 4", "[cli]") {
    auto dir = temp_dir();
    write(dir / "g4.json", R"({"n":4,"budgets":[1,1,1,0],"version":"sum"})");
    write(dir / "p4.json", R"({"strategies":[[2],[3],[4],[]]})");
    auto check = run("check --game " + (dir / "g4.json").string() + " --profile " +
                     (dir / "p4.json").string() + " --mode exact");
    REQUIRE(check.exit_code == 4);
    auto j = Json::parse(check.out);
    REQUIRE(j["equilibrium"] == false);
    REQUIRE(j["witness"]["player"] == 1);
}

TEST_CASE("sufficient check distinguishes proven from inconclusive", "[cli]") {
    auto dir = temp_dir();
    write(dir / "star_g.json", R"({"n":4,"budgets":[3,0,0,0],"version":"sum"})");
    write(dir / "star_p.json", R"({"strategies":[[2,3,4],[],[],[]]})");
    REQUIRE(run("check --game " + (dir / "star_g.json").string() + " --profile " +
                (dir / "star_p.json").string() + " --mode sufficient")
                .exit_code == 0);

    auto spider = temp_dir() / "spider2";
    run("generate --family spider --k 2 --out " + spider.string());
    REQUIRE(run("check --game " + (spider / "game.json").string() + " --profile " +
                (spider / "profile.json").string() + " --mode sufficient")
                .exit_code == 4);
}

TEST_CASE("cost command prints the path costs", "[cli]") {
    auto dir = temp_dir();
    write(dir / "g4.json", R"({"n":4,"budgets":[1,1,1,0],"version":"sum"})");
    write(dir / "p4.json", R"({"strategies":[[2],[3],[4],[]]})");
    auto res = run("cost --game " + (dir / "g4.json").string() + " --profile " +
                   (dir / "p4.json").string());
    REQUIRE(res.exit_code == 0);
    auto j = Json::parse(res.out);
    REQUIRE(j["costs"] == Json::array({6, 4, 4, 6}));
    REQUIRE(j["diameter"] == 3);

    auto one = run("cost --game " + (dir / "g4.json").string() + " --profile " +
                   (dir / "p4.json").string() + " --player 1");
    REQUIRE(Json::parse(one.out)["cost"] == 6);
}

TEST_CASE("enumerate reports the anarchy ratios", "[cli]") {
    auto dir = temp_dir();
    write(dir / "g3.json", R"({"n":3,"budgets":[1,1,1],"version":"sum"})");
    auto res = run("enumerate --game " + (dir / "g3.json").string() + " --out " +
                   (dir / "eq.json").string());
    REQUIRE(res.exit_code == 0);
    auto j = Json::parse(res.out);
    REQUIRE(j["equilibrium_count"] == 2);
    REQUIRE(j["price_of_anarchy"]["num"] == 1);
    REQUIRE(j["price_of_anarchy"]["den"] == 1);
    auto eq = Json::parse(std::ifstream(dir / "eq.json"));
    REQUIRE(eq["equilibria"].size() == 2);

    SECTION("profile cap maps to exit 3") {
        REQUIRE(run("enumerate --game " + (dir / "g3.json").string() + " --profile-cap 2")
                    .exit_code == 3);
    }
}

TEST_CASE("dynamics writes a replayable trace", "[cli]") {
    auto dir = temp_dir();
    write(dir / "g4.json", R"({"n":4,"budgets":[1,1,1,0],"version":"sum"})");
    write(dir / "p4.json", R"({"strategies":[[2],[3],[4],[]]})");
    auto trace_path = dir / "trace.jsonl";
    auto res = run("dynamics --game " + (dir / "g4.json").string() + " --init " +
                   (dir / "p4.json").string() + " --trace " + trace_path.string() + " --seed 11");
    REQUIRE(res.exit_code == 0);
    REQUIRE(Json::parse(res.out)["outcome"] == "equilibrium");

    std::ifstream in(trace_path);
    auto trace = bbng::read_trace(in);
    REQUIRE(trace.outcome == bbng::DynamicsOutcome::Equilibrium);
    REQUIRE(bbng::replay_trace(trace.initial, trace.moves).strategies ==
            trace.final_profile.strategies);
}

TEST_CASE("analyze flags violations with exit 4", "[cli]") {
    auto dir = temp_dir();
    write(dir / "g7.json", R"({"n":7,"budgets":[1,1,1,1,1,1,1],"version":"sum"})");
    write(dir / "c7.json", R"({"strategies":[[2],[3],[4],[5],[6],[7],[1]]})");
    auto res = run("analyze --game " + (dir / "g7.json").string() + " --profile " +
                   (dir / "c7.json").string() + " --checks structure");
    REQUIRE(res.exit_code == 4);
    auto j = Json::parse(res.out);
    REQUIRE(j["structure"]["cycle_length"] == 7);
    REQUIRE(j["structure"]["holds"] == false);
}

TEST_CASE("reduce agrees with its oracle", "[cli]") {
    auto dir = temp_dir();
    write(dir / "h.json", R"({"n":5,"edges":[[1,2],[2,3],[3,4],[4,5]]})");
    auto res = run("reduce --kcenter " + (dir / "h.json").string() + " -k 1 --verify");
    REQUIRE(res.exit_code == 0);
    auto j = Json::parse(res.out);
    REQUIRE(j["verify"]["agree"] == true);
    REQUIRE(j["verify"]["best_response_cost"] == 3);
    REQUIRE(j["appended_player"] == 6);
}

TEST_CASE("theorem3 family generates by budget vector", "[cli]") {
    auto dir = temp_dir() / "t3";
    auto gen = run("generate --family theorem3 --budgets 0,0,0,1,1 --version sum --out " +
                   dir.string());
    REQUIRE(gen.exit_code == 0);
    REQUIRE(Json::parse(gen.out)["case"] == 3);
    REQUIRE(run("check --game " + (dir / "game.json").string() + " --profile " +
                (dir / "profile.json").string() + " --mode exact")
                .exit_code == 0);
}

TEST_CASE("usage errors exit with 2", "[cli]") {
    REQUIRE(run("generate --family nonsense --k 2").exit_code == 2);
    REQUIRE(run("frobnicate").exit_code == 2);
    REQUIRE(run("cost --game /nonexistent.json --profile /nonexistent.json").exit_code == 2);
    REQUIRE(run("dynamics --game /tmp/nope.json --order sideways").exit_code == 2);
}
