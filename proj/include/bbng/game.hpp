#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bbng/errors.hpp"

namespace bbng {

enum class CostVersion { Sum, Max };

inline const char* to_string(CostVersion v) {
    return v == CostVersion::Sum ? "sum" : "max";
}

// Costs are bounded by n * n^2; 64-bit arithmetic is exact up to this many players.
inline constexpr int kMaxPlayers = 2'000'000;

inline constexpr std::int64_t kDefaultCandidateCap = 10'000'000;
inline constexpr std::int64_t kDefaultProfileCap = 10'000'000;
inline constexpr std::int64_t kDefaultVertexCap = 1'000'000;

// A game instance: n players, one link budget per player, and the cost version.
struct GameSpec {
    int n = 0;
    std::vector<int> budgets;
    CostVersion version = CostVersion::Sum;

    // Distance charged to a pair of vertices in different components (n^2).
    std::int64_t disconnect_distance() const {
        return static_cast<std::int64_t>(n) * n;
    }

    std::int64_t budget_sum() const {
        std::int64_t s = 0;
        for (int b : budgets) s += b;
        return s;
    }
};

inline void validate_spec(const GameSpec& spec) {
    if (spec.n < 1)
        throw InvalidParameter("player count must be at least 1");
    if (spec.n > kMaxPlayers)
        throw InvalidParameter("player count exceeds the 64-bit cost guarantee (n <= " +
                               std::to_string(kMaxPlayers) + ")");
    if (static_cast<int>(spec.budgets.size()) != spec.n)
        throw InvalidBudget("budget vector must have one entry per player");
    for (int i = 0; i < spec.n; ++i) {
        if (spec.budgets[i] < 0 || spec.budgets[i] >= spec.n)
            throw InvalidBudget("budget of player " + std::to_string(i + 1) +
                                " must lie in [0, n-1]");
    }
}

inline GameSpec make_game(int n, std::vector<int> budgets, CostVersion version) {
    GameSpec spec{n, std::move(budgets), version};
    validate_spec(spec);
    return spec;
}

// One player's link targets, kept sorted and duplicate-free (0-based).
using Strategy = std::vector<int>;

struct StrategyProfile {
    std::vector<Strategy> strategies;
};

inline void validate_profile(const GameSpec& spec, const StrategyProfile& profile) {
    if (static_cast<int>(profile.strategies.size()) != spec.n)
        throw BudgetMismatch("profile must have one strategy per player");
    for (int i = 0; i < spec.n; ++i) {
        const Strategy& s = profile.strategies[i];
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j] < 0 || s[j] >= spec.n)
                throw IndexOutOfRange("strategy of player " + std::to_string(i + 1) +
                                      " targets a vertex outside 1..n");
            if (s[j] == i)
                throw SelfLink("player " + std::to_string(i + 1) + " links to itself");
            if (j > 0 && s[j] <= s[j - 1])
                throw InvalidParameter("strategy targets must be strictly ascending");
        }
        if (static_cast<int>(s.size()) != spec.budgets[i])
            throw BudgetMismatch("player " + std::to_string(i + 1) + " owns " +
                                 std::to_string(s.size()) + " arcs but has budget " +
                                 std::to_string(spec.budgets[i]));
    }
}

// The directed graph induced by a profile plus its undirected underlying view.
// A brace (mutual arc pair) is one undirected adjacency but stays on record.
struct Realization {
    int n = 0;
    std::vector<Strategy> out;                // out[i] = arc targets of player i, sorted
    std::vector<std::vector<int>> adj;        // underlying simple adjacency, sorted
    std::vector<std::pair<int, int>> braces;  // mutual pairs, first < second
    std::vector<char> brace_member;           // per-vertex flag

    std::int64_t arc_count() const {
        std::int64_t m = 0;
        for (const auto& row : out) m += static_cast<std::int64_t>(row.size());
        return m;
    }
};

inline bool has_arc(const Realization& r, int from, int to) {
    const auto& row = r.out[from];
    return std::binary_search(row.begin(), row.end(), to);
}

inline Realization build_realization(const GameSpec& spec, const StrategyProfile& profile) {
    validate_spec(spec);
    validate_profile(spec, profile);

    Realization r;
    r.n = spec.n;
    r.out = profile.strategies;
    r.adj.assign(spec.n, {});
    r.brace_member.assign(spec.n, 0);

    for (int i = 0; i < spec.n; ++i) {
        for (int t : r.out[i]) {
            r.adj[i].push_back(t);
            r.adj[t].push_back(i);
        }
    }
    for (auto& row : r.adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    for (int i = 0; i < spec.n; ++i) {
        for (int t : r.out[i]) {
            if (t > i && has_arc(r, t, i)) {
                r.braces.emplace_back(i, t);
                r.brace_member[i] = 1;
                r.brace_member[t] = 1;
            }
        }
    }
    return r;
}

} // namespace bbng
