#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bbng/best_response.hpp"
#include "support/helpers.hpp"
#include "support/reference.hpp"

using namespace bbng;
using testutil::game;
using testutil::profile1;

namespace {

const GameSpec kPath4 = game(4, {1, 1, 1, 0});
const StrategyProfile kPath4Profile = profile1({{2}, {3}, {4}, {}});

// Spider with three legs of length 2, written out by hand in the order
// (x1, x2, y1, y2, z1, z2, w).
const GameSpec kSpider7 = game(7, {2, 0, 2, 0, 2, 0, 0}, CostVersion::Max);
const StrategyProfile kSpider7Profile = profile1({{2, 7}, {}, {4, 7}, {}, {6, 7}, {}, {}});

} // namespace

TEST_CASE("exact best response on the 4-path", "[best-response]") {
    SECTION("sum version relinks the endpoint to the middle") {
        auto res = best_response_exact(kPath4, kPath4Profile, 0, CostVersion::Sum);
        REQUIRE(res.strategy == Strategy{2});
        REQUIRE(res.cost == 5);
        REQUIRE(res.improved);
        REQUIRE(res.candidates_examined == 3);
    }
    SECTION("max version agrees on the target") {
        auto res = best_response_exact(kPath4, kPath4Profile, 0, CostVersion::Max);
        REQUIRE(res.strategy == Strategy{2});
        REQUIRE(res.cost == 2);
        REQUIRE(res.improved);
    }
    SECTION("reference oracle confirms the frozen values") {
        auto ref = refr::best_reply(kPath4, kPath4Profile, 0, CostVersion::Sum);
        REQUIRE(ref.cost == 5);
        REQUIRE(ref.strategy == std::vector<int>{2});
    }
}

TEST_CASE("exact best response keeps an optimal current strategy", "[best-response]") {
    auto spec = game(2, {1, 1});
    auto p = profile1({{2}, {1}});
    for (auto version : {CostVersion::Sum, CostVersion::Max}) {
        auto res = best_response_exact(spec, p, 0, version);
        REQUIRE(res.strategy == Strategy{1});
        REQUIRE(res.cost == 1);
        REQUIRE_FALSE(res.improved);
        REQUIRE(res.candidates_examined == 1);
    }
}

TEST_CASE("exact best response enforces the enumeration cap", "[best-response]") {
    std::vector<int> budgets(30, 0);
    budgets[0] = 15;
    auto spec = game(30, budgets);
    StrategyProfile p;
    p.strategies.resize(30);
    for (int t = 1; t <= 15; ++t) p.strategies[0].push_back(t);
    REQUIRE_THROWS_AS(best_response_exact(spec, p, 0, CostVersion::Sum, 1000),
                      EnumerationCapExceeded);
}

TEST_CASE("swap best response", "[best-response]") {
    SECTION("single swap fixes the 4-path endpoint") {
        auto res = best_response_swap(kPath4, kPath4Profile, 0, CostVersion::Sum);
        REQUIRE(res.strategy == Strategy{2});
        REQUIRE(res.cost == 5);
        REQUIRE(res.improved);
    }
    SECTION("players at a global optimum stay put") {
        auto spec = game(3, {1, 1, 1});
        auto triangle = profile1({{2}, {3}, {1}});
        auto res = best_response_swap(spec, triangle, 0, CostVersion::Sum);
        REQUIRE(res.strategy == Strategy{1});
        REQUIRE_FALSE(res.improved);
    }
    SECTION("budget-zero players have nothing to swap") {
        auto res = best_response_swap(kPath4, kPath4Profile, 3, CostVersion::Sum);
        REQUIRE(res.strategy.empty());
        REQUIRE_FALSE(res.improved);
        REQUIRE(res.candidates_examined == 0);
    }
}

TEST_CASE("exact equilibrium check", "[equilibrium]") {
    SECTION("directed triangle is an equilibrium") {
        auto spec = game(3, {1, 1, 1});
        auto check = is_equilibrium_exact(spec, profile1({{2}, {3}, {1}}), CostVersion::Sum);
        REQUIRE(check.equilibrium);
        REQUIRE_FALSE(check.witness.has_value());
    }
    SECTION("brace plus pendant edge is not, and player 2 is the witness") {
        auto spec = game(3, {1, 1, 1});
        auto check = is_equilibrium_exact(spec, profile1({{2}, {1}, {1}}), CostVersion::Sum);
        REQUIRE_FALSE(check.equilibrium);
        REQUIRE(check.witness->player == 1);
        REQUIRE(check.witness->strategy == Strategy{2});
        REQUIRE(check.witness->old_cost == 3);
        REQUIRE(check.witness->new_cost == 2);
    }
    SECTION("4-path fails with witness player 1") {
        auto check = is_equilibrium_exact(kPath4, kPath4Profile, CostVersion::Sum);
        REQUIRE_FALSE(check.equilibrium);
        REQUIRE(check.witness->player == 0);
    }
}

TEST_CASE("sufficient equilibrium condition", "[equilibrium]") {
    SECTION("star center with arcs to everyone") {
        auto spec = game(4, {3, 0, 0, 0});
        auto p = profile1({{2, 3, 4}, {}, {}, {}});
        REQUIRE(is_equilibrium_sufficient(spec, p) == SufficientVerdict::Proven);
    }
    SECTION("directed triangle") {
        auto spec = game(3, {1, 1, 1});
        REQUIRE(is_equilibrium_sufficient(spec, profile1({{2}, {3}, {1}})) ==
                SufficientVerdict::Proven);
    }
    SECTION("spider is a genuine max equilibrium the condition cannot see") {
        REQUIRE(is_equilibrium_sufficient(kSpider7, kSpider7Profile) ==
                SufficientVerdict::Inconclusive);
        REQUIRE(is_equilibrium_exact(kSpider7, kSpider7Profile, CostVersion::Max).equilibrium);
    }
}

TEST_CASE("exact best response agrees with the reference oracle", "[best-response][property]") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        auto spec = testutil::random_game(6, rng);
        auto p = testutil::random_profile(spec, rng);
        std::uniform_int_distribution<int> pick(0, spec.n - 1);
        int player = pick(rng);
        auto version = trial % 2 ? CostVersion::Sum : CostVersion::Max;
        CAPTURE(spec.n, spec.budgets, player);

        auto ref = refr::best_reply(spec, p, player, version);
        auto res = best_response_exact(spec, p, player, version);
        REQUIRE(res.cost == ref.cost);
        std::int64_t current = refr::player_cost(spec.n, p.strategies, player, version);
        if (current == ref.cost) {
            REQUIRE(res.strategy == p.strategies[player]);
            REQUIRE_FALSE(res.improved);
        } else {
            REQUIRE(res.strategy == ref.strategy);
            REQUIRE(res.improved);
        }
    }
}

TEST_CASE("swap never beats exact and never loses to the start", "[best-response][property]") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        auto spec = testutil::random_game(7, rng);
        auto p = testutil::random_profile(spec, rng);
        std::uniform_int_distribution<int> pick(0, spec.n - 1);
        int player = pick(rng);
        auto version = trial % 2 ? CostVersion::Sum : CostVersion::Max;

        DeviationOracle oracle(spec);
        oracle.bind(p, player);
        std::int64_t current = oracle.cost_of(p.strategies[player], version);
        auto swap = best_response_swap(spec, p, player, version);
        auto exact = best_response_exact(spec, p, player, version);
        REQUIRE(swap.cost <= current);
        REQUIRE(exact.cost <= swap.cost);
    }
}

TEST_CASE("proven profiles pass the exact check in both versions", "[equilibrium][property]") {
    std::mt19937_64 rng(777);
    int proven_seen = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto spec = testutil::random_game(5, rng);
        auto p = testutil::random_profile(spec, rng);
        if (is_equilibrium_sufficient(spec, p) != SufficientVerdict::Proven) continue;
        ++proven_seen;
        REQUIRE(is_equilibrium_exact(spec, p, CostVersion::Sum).equilibrium);
        REQUIRE(is_equilibrium_exact(spec, p, CostVersion::Max).equilibrium);
    }
    // Stars and near-cliques show up often enough at this size.
    REQUIRE(proven_seen > 0);
}

TEST_CASE("oracle costs match the library costs", "[equilibrium][property]") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        auto spec = testutil::random_game(7, rng);
        auto p = testutil::random_profile(spec, rng);
        auto r = build_realization(spec, p);
        for (int u = 0; u < spec.n; ++u) {
            for (auto version : {CostVersion::Sum, CostVersion::Max}) {
                REQUIRE(cost(r, u, version) ==
                        refr::player_cost(spec.n, p.strategies, u, version));
            }
        }
    }
}
