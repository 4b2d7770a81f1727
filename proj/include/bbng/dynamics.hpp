#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "bbng/best_response.hpp"
#include "bbng/game.hpp"

namespace bbng {

enum class MoveOrder { RoundRobin, Random };
enum class MoveOracle { Exact, Swap };

// SwapStable: the swap oracle found no move but the profile is not (or could
// not be confirmed as) an exact equilibrium.
enum class DynamicsOutcome { Equilibrium, SwapStable, CycleDetected, RoundLimit };

inline const char* to_string(MoveOrder o) {
    return o == MoveOrder::RoundRobin ? "round-robin" : "random";
}
inline const char* to_string(MoveOracle o) { return o == MoveOracle::Exact ? "exact" : "swap"; }
inline const char* to_string(DynamicsOutcome o) {
    switch (o) {
        case DynamicsOutcome::Equilibrium: return "equilibrium";
        case DynamicsOutcome::SwapStable: return "swap-stable";
        case DynamicsOutcome::CycleDetected: return "cycle";
        default: return "round-limit";
    }
}

struct MoveRecord {
    int round = 0;
    int player = 0;
    Strategy old_strategy;
    Strategy new_strategy;
    std::int64_t old_cost = 0;
    std::int64_t new_cost = 0;
};

struct DynamicsConfig {
    MoveOrder order = MoveOrder::RoundRobin;
    MoveOracle oracle = MoveOracle::Exact;
    std::uint64_t seed = 0;
    int round_limit = 100;
    std::int64_t candidate_cap = kDefaultCandidateCap;
};

struct DynamicsTrace {
    DynamicsConfig config;
    StrategyProfile initial;
    StrategyProfile final_profile;
    std::vector<MoveRecord> moves;
    DynamicsOutcome outcome = DynamicsOutcome::RoundLimit;
    std::int64_t cycle_period = 0;
    int rounds_completed = 0;
};

namespace detail {

inline std::uint64_t profile_hash(const StrategyProfile& p) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (const auto& s : p.strategies) {
        mix(s.size());
        for (int t : s) mix(static_cast<std::uint64_t>(t) + 1);
    }
    return h;
}

} // namespace detail

// Uniform feasible profile, used for randomized starts.
inline StrategyProfile random_profile(const GameSpec& spec, std::mt19937_64& rng) {
    StrategyProfile p;
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
        Strategy s(pool.begin(), pool.begin() + spec.budgets[i]);
        std::sort(s.begin(), s.end());
        p.strategies[i] = std::move(s);
    }
    return p;
}

// Scheduled improvement dynamics. Each round offers every player one move
// (round-robin or a seeded shuffle); moves are applied only when strictly
// improving. Terminates on a silent full round, a repeated profile, or the
// round limit. Deterministic for a fixed seed and config.
inline DynamicsTrace best_response_dynamics(const GameSpec& spec, const StrategyProfile& initial,
                                            const DynamicsConfig& config) {
    validate_spec(spec);
    validate_profile(spec, initial);
    if (config.oracle == MoveOracle::Exact && !exact_check_feasible(spec, config.candidate_cap))
        throw EnumerationCapExceeded("exact move oracle exceeds the candidate cap");

    DynamicsTrace trace;
    trace.config = config;
    trace.initial = initial;

    StrategyProfile current = initial;
    std::mt19937_64 rng(config.seed);
    DeviationOracle cost_oracle(spec);

    // Snapshots of every profile seen (initial plus one per applied move),
    // hashed for cycle detection with a full comparison on every hash hit.
    std::vector<StrategyProfile> snapshots{current};
    std::unordered_map<std::uint64_t, std::vector<std::int64_t>> seen;
    seen[detail::profile_hash(current)].push_back(0);

    std::vector<int> order(spec.n);
    for (int i = 0; i < spec.n; ++i) order[i] = i;

    for (int round = 0; round < config.round_limit; ++round) {
        if (config.order == MoveOrder::Random)
            std::shuffle(order.begin(), order.end(), rng);
        bool moved_this_round = false;
        for (int p : order) {
            if (spec.budgets[p] == 0) continue;
            BestResponseResult reply =
                config.oracle == MoveOracle::Exact
                    ? best_response_exact(spec, current, p, spec.version, config.candidate_cap)
                    : best_response_swap(spec, current, p, spec.version);
            if (!reply.improved) continue;

            MoveRecord move;
            move.round = round;
            move.player = p;
            move.old_strategy = current.strategies[p];
            move.new_strategy = reply.strategy;
            cost_oracle.bind(current, p);
            move.old_cost = cost_oracle.cost_of(current.strategies[p], spec.version);
            move.new_cost = reply.cost;
            trace.moves.push_back(std::move(move));

            current.strategies[p] = reply.strategy;
            moved_this_round = true;

            std::int64_t index = static_cast<std::int64_t>(snapshots.size());
            std::uint64_t h = detail::profile_hash(current);
            auto& bucket = seen[h];
            for (std::int64_t prev : bucket) {
                if (snapshots[prev].strategies == current.strategies) {
                    trace.outcome = DynamicsOutcome::CycleDetected;
                    trace.cycle_period = index - prev;
                    trace.rounds_completed = round;
                    trace.final_profile = std::move(current);
                    return trace;
                }
            }
            bucket.push_back(index);
            snapshots.push_back(current);
        }
        trace.rounds_completed = round + 1;
        if (!moved_this_round) {
            if (config.oracle == MoveOracle::Exact) {
                trace.outcome = DynamicsOutcome::Equilibrium;
            } else if (exact_check_feasible(spec, config.candidate_cap) &&
                       is_equilibrium_exact(spec, current, spec.version, config.candidate_cap)
                           .equilibrium) {
                trace.outcome = DynamicsOutcome::Equilibrium;
            } else {
                trace.outcome = DynamicsOutcome::SwapStable;
            }
            trace.final_profile = std::move(current);
            return trace;
        }
    }
    trace.outcome = DynamicsOutcome::RoundLimit;
    trace.final_profile = std::move(current);
    return trace;
}

// Applies a recorded move sequence to the initial profile.
inline StrategyProfile replay_trace(const StrategyProfile& initial,
                                    const std::vector<MoveRecord>& moves) {
    StrategyProfile p = initial;
    for (const auto& m : moves) {
        if (m.player < 0 || m.player >= static_cast<int>(p.strategies.size()))
            throw IndexOutOfRange("trace move references an unknown player");
        if (p.strategies[m.player] != m.old_strategy)
            throw InvalidParameter("trace does not match the profile it is replayed on");
        p.strategies[m.player] = m.new_strategy;
    }
    return p;
}

} // namespace bbng
