#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bbng/combinatorics.hpp"
#include "bbng/distance.hpp"
#include "bbng/game.hpp"

namespace bbng {

// Evaluates candidate strategies of one player while the opponents' arcs stay
// fixed. Binding a player builds the "rest" graph (every arc not owned by the
// player) once; each candidate then costs a single BFS from the player.
class DeviationOracle {
  public:
    explicit DeviationOracle(const GameSpec& spec)
        : n_(spec.n), inf_(spec.disconnect_distance()), rest_adj_(spec.n),
          rest_comp_(spec.n), dist_(spec.n), queue_(spec.n), in_candidate_(spec.n, 0) {}

    void bind(const StrategyProfile& profile, int player) {
        player_ = player;
        for (auto& row : rest_adj_) row.clear();
        for (int i = 0; i < n_; ++i) {
            if (i == player) continue;
            for (int t : profile.strategies[i]) {
                rest_adj_[i].push_back(t);
                rest_adj_[t].push_back(i);
            }
        }
        for (auto& row : rest_adj_) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
        }
        rest_kappa_ = detail::components(rest_adj_, rest_comp_);
    }

    int player() const { return player_; }

    // Cost of the bound player when it plays `strategy` (sorted, feasible).
    std::int64_t cost_of(std::span<const int> strategy, CostVersion version) {
        if (n_ == 1) return 0;
        for (int s : strategy) in_candidate_[s] = 1;

        std::fill(dist_.begin(), dist_.end(), -1);
        dist_[player_] = 0;
        queue_[0] = player_;
        int head = 0, tail = 1;
        std::int64_t sum = 0;
        std::int32_t ecc = 0;
        while (head < tail) {
            int u = queue_[head++];
            std::int32_t du = dist_[u];
            sum += du;
            if (du > ecc) ecc = du;
            auto visit = [&](int v) {
                if (dist_[v] < 0) {
                    dist_[v] = du + 1;
                    queue_[tail++] = v;
                }
            };
            for (int v : rest_adj_[u]) visit(v);
            if (u == player_) {
                for (int v : strategy) visit(v);
            } else if (in_candidate_[u]) {
                visit(player_);
            }
        }
        for (int s : strategy) in_candidate_[s] = 0;

        if (version == CostVersion::Sum)
            return sum + static_cast<std::int64_t>(n_ - tail) * inf_;

        std::int64_t local = tail == n_ ? ecc : inf_;
        // Components merged by the candidate arcs: the player's own plus every
        // distinct rest-component it links into.
        comp_seen_.clear();
        comp_seen_.push_back(rest_comp_[player_]);
        for (int s : strategy) {
            int c = rest_comp_[s];
            if (std::find(comp_seen_.begin(), comp_seen_.end(), c) == comp_seen_.end())
                comp_seen_.push_back(c);
        }
        int kappa = rest_kappa_ - static_cast<int>(comp_seen_.size()) + 1;
        return local + static_cast<std::int64_t>(kappa - 1) * inf_;
    }

  private:
    int n_ = 0;
    int player_ = -1;
    std::int64_t inf_ = 0;
    std::vector<std::vector<int>> rest_adj_;
    std::vector<int> rest_comp_;
    int rest_kappa_ = 1;
    std::vector<std::int32_t> dist_;
    std::vector<int> queue_;
    std::vector<char> in_candidate_;
    std::vector<int> comp_seen_;
};

struct BestResponseResult {
    Strategy strategy;
    std::int64_t cost = 0;
    bool improved = false;
    std::int64_t candidates_examined = 0;
};

namespace detail {

// Runs fn(strategy) for every feasible strategy of `player` in lexicographic
// order; fn returns false to stop early. Targets skip the player itself.
template <typename Fn>
void for_each_strategy(int n, int player, int budget, Fn&& fn) {
    std::vector<int> pos(budget);
    for (int i = 0; i < budget; ++i) pos[i] = i;
    Strategy s(budget);
    do {
        for (int i = 0; i < budget; ++i)
            s[i] = pos[i] < player ? pos[i] : pos[i] + 1;
        if (!fn(s)) return;
    } while (next_combination(pos, n - 1));
}

} // namespace detail

inline std::int64_t candidate_count(const GameSpec& spec, int player, std::int64_t cap) {
    return binomial_capped(spec.n - 1, spec.budgets[player], cap);
}

// Exhaustive best response. Keeps the current strategy when it is already
// optimal; otherwise returns the lexicographically smallest minimizer.
inline BestResponseResult best_response_exact(const GameSpec& spec,
                                              const StrategyProfile& profile, int player,
                                              CostVersion version,
                                              std::int64_t cap = kDefaultCandidateCap) {
    validate_spec(spec);
    validate_profile(spec, profile);
    if (player < 0 || player >= spec.n) throw IndexOutOfRange("player index out of range");
    if (candidate_count(spec, player, cap) > cap)
        throw EnumerationCapExceeded("player " + std::to_string(player + 1) + " has more than " +
                                     std::to_string(cap) + " candidate strategies");

    DeviationOracle oracle(spec);
    oracle.bind(profile, player);
    const Strategy& current = profile.strategies[player];
    std::int64_t current_cost = oracle.cost_of(current, version);

    BestResponseResult best;
    best.strategy = current;
    best.cost = current_cost;
    detail::for_each_strategy(spec.n, player, spec.budgets[player], [&](const Strategy& s) {
        ++best.candidates_examined;
        std::int64_t c = oracle.cost_of(s, version);
        if (c < best.cost) {
            best.cost = c;
            best.strategy = s;
        }
        return true;
    });
    best.improved = best.cost < current_cost;
    return best;
}

// Hill-climbing over single-arc swaps: replace one owned arc's target, keep
// the first strict improvement, rescan until stable. Deterministic scan order:
// owned arcs ascending by target, replacement targets ascending.
inline BestResponseResult best_response_swap(const GameSpec& spec,
                                             const StrategyProfile& profile, int player,
                                             CostVersion version) {
    validate_spec(spec);
    validate_profile(spec, profile);
    if (player < 0 || player >= spec.n) throw IndexOutOfRange("player index out of range");

    DeviationOracle oracle(spec);
    oracle.bind(profile, player);
    Strategy cur = profile.strategies[player];
    std::int64_t cur_cost = oracle.cost_of(cur, version);
    const std::int64_t initial_cost = cur_cost;
    std::int64_t examined = 0;

    std::vector<char> in_cur(spec.n, 0);
    for (int t : cur) in_cur[t] = 1;

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < cur.size() && !changed; ++i) {
            int old_target = cur[i];
            for (int v = 0; v < spec.n && !changed; ++v) {
                if (v == player || in_cur[v]) continue;
                Strategy trial = cur;
                trial[i] = v;
                std::sort(trial.begin(), trial.end());
                ++examined;
                std::int64_t c = oracle.cost_of(trial, version);
                if (c < cur_cost) {
                    in_cur[old_target] = 0;
                    in_cur[v] = 1;
                    cur = std::move(trial);
                    cur_cost = c;
                    changed = true;
                }
            }
        }
    }
    return {std::move(cur), cur_cost, cur_cost < initial_cost, examined};
}

struct Witness {
    int player = 0;
    Strategy strategy;
    std::int64_t old_cost = 0;
    std::int64_t new_cost = 0;
};

struct EquilibriumCheck {
    bool equilibrium = false;
    std::optional<Witness> witness;
};

namespace detail {

// Early-exit scan shared by the public checker and the bulk enumerators: is
// any candidate of any player a strict improvement? Witness is the first
// improving candidate of the lowest-index improving player.
inline std::optional<Witness> find_improving_move(const GameSpec& spec,
                                                  const StrategyProfile& profile,
                                                  CostVersion version, DeviationOracle& oracle) {
    std::optional<Witness> found;
    for (int p = 0; p < spec.n && !found; ++p) {
        if (spec.budgets[p] == 0) continue;
        oracle.bind(profile, p);
        std::int64_t current_cost = oracle.cost_of(profile.strategies[p], version);
        for_each_strategy(spec.n, p, spec.budgets[p], [&](const Strategy& s) {
            std::int64_t c = oracle.cost_of(s, version);
            if (c < current_cost) {
                found = Witness{p, s, current_cost, c};
                return false;
            }
            return true;
        });
    }
    return found;
}

} // namespace detail

inline EquilibriumCheck is_equilibrium_exact(const GameSpec& spec, const StrategyProfile& profile,
                                             CostVersion version,
                                             std::int64_t cap = kDefaultCandidateCap) {
    validate_spec(spec);
    validate_profile(spec, profile);
    for (int p = 0; p < spec.n; ++p)
        if (candidate_count(spec, p, cap) > cap)
            throw EnumerationCapExceeded("exact equilibrium check exceeds the candidate cap");

    DeviationOracle oracle(spec);
    auto witness = detail::find_improving_move(spec, profile, version, oracle);
    if (witness) return {false, std::move(witness)};
    return {true, std::nullopt};
}

inline EquilibriumCheck is_equilibrium_exact(const GameSpec& spec, const StrategyProfile& profile,
                                             std::int64_t cap = kDefaultCandidateCap) {
    return is_equilibrium_exact(spec, profile, spec.version, cap);
}

inline bool exact_check_feasible(const GameSpec& spec, std::int64_t cap = kDefaultCandidateCap) {
    for (int p = 0; p < spec.n; ++p)
        if (candidate_count(spec, p, cap) > cap) return false;
    return true;
}

enum class SufficientVerdict { Proven, Inconclusive };

// Sufficient condition for an equilibrium in BOTH versions: every vertex has
// budget 0, or local diameter 1, or local diameter at most 2 while not being
// part of any brace. Inconclusive makes no claim either way.
inline SufficientVerdict is_equilibrium_sufficient(const GameSpec& spec,
                                                   const StrategyProfile& profile,
                                                   int threads = 0) {
    validate_spec(spec);
    validate_profile(spec, profile);
    auto r = build_realization(spec, profile);
    auto ecc = all_local_diameters(r, threads);
    for (int u = 0; u < spec.n; ++u) {
        if (spec.budgets[u] == 0) continue;
        if (ecc[u] == 1) continue;
        if (ecc[u] <= 2 && !r.brace_member[u]) continue;
        return SufficientVerdict::Inconclusive;
    }
    return SufficientVerdict::Proven;
}

} // namespace bbng
