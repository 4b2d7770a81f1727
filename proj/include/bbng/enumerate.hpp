#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "bbng/best_response.hpp"
#include "bbng/combinatorics.hpp"
#include "bbng/distance.hpp"
#include "bbng/game.hpp"
#include "bbng/parallel.hpp"

namespace bbng {

namespace detail {

struct Dsu {
    std::vector<int> parent;
    void reset(int n) {
        parent.resize(n);
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
};

inline bool profile_connected(const StrategyProfile& p, Dsu& dsu) {
    int n = static_cast<int>(p.strategies.size());
    dsu.reset(n);
    for (int i = 0; i < n; ++i)
        for (int t : p.strategies[i]) dsu.unite(i, t);
    int root = dsu.find(0);
    for (int i = 1; i < n; ++i)
        if (dsu.find(i) != root) return false;
    return true;
}

} // namespace detail

// Walks every feasible profile of a game in a fixed canonical order: the
// per-player strategies run lexicographically, player 1 most significant.
class ProfileEnumerator {
  public:
    explicit ProfileEnumerator(const GameSpec& spec) : n_(spec.n), budgets_(spec.budgets) {
        radix_.resize(n_);
        total_ = 1;
        constexpr std::int64_t kHuge = std::int64_t(4) << 60;
        for (int i = 0; i < n_; ++i) {
            radix_[i] = binomial_capped(n_ - 1, budgets_[i], kHuge);
            unsigned __int128 t = static_cast<unsigned __int128>(total_) * radix_[i];
            total_ = t > static_cast<unsigned __int128>(kHuge) ? kHuge + 1
                                                               : static_cast<std::int64_t>(t);
        }
        pos_.resize(n_);
        profile_.strategies.assign(n_, {});
        seek(0);
    }

    std::int64_t total() const { return total_; }

    void seek(std::int64_t rank) {
        for (int i = n_ - 1; i >= 0; --i) {
            std::int64_t r = rank % radix_[i];
            rank /= radix_[i];
            pos_[i] = unrank_combination(n_ - 1, budgets_[i], r);
            apply(i);
        }
    }

    // Moves to the next profile; returns false past the last one.
    bool advance() {
        for (int i = n_ - 1; i >= 0; --i) {
            if (next_combination(pos_[i], n_ - 1)) {
                apply(i);
                return true;
            }
            for (int j = 0; j < budgets_[i]; ++j) pos_[i][j] = j;
            apply(i);
        }
        return false;
    }

    const StrategyProfile& current() const { return profile_; }

  private:
    void apply(int i) {
        Strategy& s = profile_.strategies[i];
        s.resize(budgets_[i]);
        for (int j = 0; j < budgets_[i]; ++j)
            s[j] = pos_[i][j] < i ? pos_[i][j] : pos_[i][j] + 1;
    }

    int n_;
    std::vector<int> budgets_;
    std::vector<std::int64_t> radix_;
    std::int64_t total_ = 0;
    std::vector<std::vector<int>> pos_;
    StrategyProfile profile_;
};

struct EnumerationResult {
    std::vector<StrategyProfile> equilibria;  // canonical order
    std::int64_t profiles_total = 0;
    std::optional<std::int64_t> min_diameter;  // over equilibria
    std::optional<std::int64_t> max_diameter;
};

// Exhaustively lists the exact equilibria of a game. When the budget sum
// reaches n-1 a disconnected profile can never be an equilibrium (a cycle arc
// can be redirected across components at a strict gain), so connectivity is
// used as a cheap prefilter in that regime.
inline EnumerationResult enumerate_equilibria(const GameSpec& spec,
                                              std::int64_t profile_cap = kDefaultProfileCap,
                                              int threads = 0,
                                              std::int64_t candidate_cap = kDefaultCandidateCap) {
    validate_spec(spec);
    for (int p = 0; p < spec.n; ++p)
        if (candidate_count(spec, p, candidate_cap) > candidate_cap)
            throw EnumerationCapExceeded("per-player candidate enumeration exceeds the cap");

    ProfileEnumerator probe(spec);
    if (probe.total() > profile_cap)
        throw EnumerationCapExceeded("profile space larger than the configured cap");
    const std::int64_t total = probe.total();
    const bool connected_required = spec.budget_sum() >= spec.n - 1;

    std::vector<std::int64_t> ranks;
    std::mutex ranks_mutex;
    parallel_blocks(
        total,
        [&](std::int64_t begin, std::int64_t end) {
            ProfileEnumerator it(spec);
            it.seek(begin);
            DeviationOracle oracle(spec);
            detail::Dsu dsu;
            std::vector<std::int64_t> local;
            for (std::int64_t rank = begin; rank < end; ++rank, it.advance()) {
                const StrategyProfile& p = it.current();
                if (connected_required && !detail::profile_connected(p, dsu)) continue;
                if (!detail::find_improving_move(spec, p, spec.version, oracle))
                    local.push_back(rank);
            }
            std::lock_guard<std::mutex> lock(ranks_mutex);
            ranks.insert(ranks.end(), local.begin(), local.end());
        },
        threads);
    std::sort(ranks.begin(), ranks.end());

    EnumerationResult result;
    result.profiles_total = total;
    ProfileEnumerator it(spec);
    for (std::int64_t rank : ranks) {
        it.seek(rank);
        result.equilibria.push_back(it.current());
        auto r = build_realization(spec, it.current());
        std::int64_t d = diameter(r, 1);
        if (!result.min_diameter || d < *result.min_diameter) result.min_diameter = d;
        if (!result.max_diameter || d > *result.max_diameter) result.max_diameter = d;
    }
    return result;
}

} // namespace bbng
