#pragma once

#include <random>
#include <utility>
#include <vector>

#include "bbng/analysis.hpp"
#include "bbng/game.hpp"

namespace testutil {

// Random tree plus a sprinkle of extra edges; always connected.
inline bbng::SimpleGraph random_connected_graph(int n, double extra_edge_prob,
                                                std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        edges.emplace_back(pick(rng), v);
    }
    std::bernoulli_distribution extra(extra_edge_prob);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (extra(rng)) edges.emplace_back(u, v);
    return bbng::graph_from_edges(n, edges);
}

// Spec and profile builders taking 1-based targets, as in the file formats.
inline bbng::GameSpec game(int n, std::vector<int> budgets,
                           bbng::CostVersion v = bbng::CostVersion::Sum) {
    return bbng::make_game(n, std::move(budgets), v);
}

inline bbng::StrategyProfile profile1(std::vector<std::vector<int>> one_based) {
    bbng::StrategyProfile p;
    p.strategies.reserve(one_based.size());
    for (auto& s : one_based) {
        bbng::Strategy t;
        for (int v : s) t.push_back(v - 1);
        std::sort(t.begin(), t.end());
        p.strategies.push_back(std::move(t));
    }
    return p;
}

// Uniform feasible profile for the given budgets.
inline bbng::StrategyProfile random_profile(const bbng::GameSpec& spec, std::mt19937_64& rng) {
    bbng::StrategyProfile p;
    p.strategies.resize(spec.n);
    std::vector<int> pool;
    for (int i = 0; i < spec.n; ++i) {
        pool.clear();
        for (int v = 0; v < spec.n; ++v)
            if (v != i) pool.push_back(v);
        for (int j = 0; j < spec.budgets[i]; ++j) {
            std::uniform_int_distribution<int> pick(j, static_cast<int>(pool.size()) - 1);
            std::swap(pool[j], pool[pick(rng)]);
        }
        bbng::Strategy s(pool.begin(), pool.begin() + spec.budgets[i]);
        std::sort(s.begin(), s.end());
        p.strategies[i] = std::move(s);
    }
    return p;
}

inline bbng::GameSpec random_game(int max_n, std::mt19937_64& rng,
                                  bbng::CostVersion v = bbng::CostVersion::Sum) {
    std::uniform_int_distribution<int> pick_n(2, max_n);
    int n = pick_n(rng);
    std::vector<int> budgets(n);
    std::uniform_int_distribution<int> pick_b(0, n - 1);
    for (int& b : budgets) b = pick_b(rng);
    return bbng::make_game(n, std::move(budgets), v);
}

} // namespace testutil
