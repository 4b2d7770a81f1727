#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "bbng/best_response.hpp"
#include "bbng/combinatorics.hpp"
#include "bbng/distance.hpp"
#include "bbng/enumerate.hpp"
#include "bbng/game.hpp"
#include "bbng/parallel.hpp"

namespace bbng {

// Undirected simple graph; the shared currency of the structural checks.
struct SimpleGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;
};

inline SimpleGraph underlying_graph(const Realization& r) { return {r.n, r.adj}; }

inline SimpleGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw InvalidGraph("graph needs at least one vertex");
    SimpleGraph g{n, std::vector<std::vector<int>>(n)};
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidGraph("edge endpoint out of range");
        if (u == v) throw InvalidGraph("self loops are not allowed");
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& row : g.adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return g;
}

inline bool is_connected(const SimpleGraph& g) {
    if (g.n == 0) return false;
    std::vector<int> comp;
    return detail::components(g.adj, comp) == 1;
}

namespace detail {

// Dinic on the vertex-split graph: every vertex becomes an arc of capacity 1,
// so a max flow from out(s) to in(t) counts internally disjoint s-t paths.
// Queries start at out(s) and stop at in(t); the level structure keeps the
// endpoint arcs themselves off every augmenting path.
class VertexSplitFlow {
  public:
    explicit VertexSplitFlow(const SimpleGraph& g) : n_(g.n), adj_(2 * g.n) {
        for (int v = 0; v < n_; ++v) add_edge(in(v), out(v), 1);
        for (int u = 0; u < n_; ++u)
            for (int v : g.adj[u])
                if (u < v) {
                    add_edge(out(u), in(v), 1);
                    add_edge(out(v), in(u), 1);
                }
    }

    int max_flow(int s, int t) {
        for (auto& e : edges_) e.cap = e.base;
        source_ = out(s);
        sink_ = in(t);
        int flow = 0;
        while (bfs_levels()) {
            iter_.assign(2 * n_, 0);
            while (int f = augment(source_, n_)) flow += f;
        }
        return flow;
    }

  private:
    struct Edge {
        int to, rev, cap, base;
    };

    int in(int v) const { return 2 * v; }
    int out(int v) const { return 2 * v + 1; }

    void add_edge(int from, int to, int cap) {
        adj_[from].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({to, static_cast<int>(edges_.size()) + 1, cap, cap});
        adj_[to].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({from, static_cast<int>(edges_.size()) - 1, 0, 0});
    }

    bool bfs_levels() {
        level_.assign(2 * n_, -1);
        std::vector<int> queue{source_};
        level_[source_] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            for (int id : adj_[u]) {
                const Edge& e = edges_[id];
                if (e.cap > 0 && level_[e.to] < 0) {
                    level_[e.to] = level_[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        return level_[sink_] >= 0;
    }

    int augment(int u, int limit) {
        if (u == sink_ || limit == 0) return limit;
        for (std::size_t& i = iter_[u]; i < adj_[u].size(); ++i) {
            Edge& e = edges_[adj_[u][i]];
            if (e.cap > 0 && level_[e.to] == level_[u] + 1) {
                int f = augment(e.to, std::min(limit, e.cap));
                if (f > 0) {
                    e.cap -= f;
                    edges_[e.rev].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }

    int n_, source_ = 0, sink_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<Edge> edges_;
    std::vector<int> level_;
    std::vector<std::size_t> iter_;
};

} // namespace detail

// Minimum vertex cut via max flow. A minimum cut either avoids some minimum
// degree vertex v (then it separates v from a non-neighbor) or contains it
// (then it separates two non-adjacent neighbors of v), so those pairs are the
// only flow queries needed. Complete graphs have connectivity n-1 by
// convention.
inline int vertex_connectivity(const SimpleGraph& g) {
    if (g.n < 2) throw InvalidParameter("vertex connectivity needs at least two vertices");
    if (!is_connected(g)) return 0;

    int v = 0;
    for (int u = 1; u < g.n; ++u)
        if (g.adj[u].size() < g.adj[v].size()) v = u;
    if (static_cast<int>(g.adj[v].size()) == g.n - 1) return g.n - 1;

    detail::VertexSplitFlow flow(g);
    int best = static_cast<int>(g.adj[v].size());
    std::vector<char> nb(g.n, 0);
    for (int w : g.adj[v]) nb[w] = 1;
    for (int w = 0; w < g.n; ++w)
        if (w != v && !nb[w]) best = std::min(best, flow.max_flow(v, w));
    for (std::size_t i = 0; i < g.adj[v].size(); ++i)
        for (std::size_t j = i + 1; j < g.adj[v].size(); ++j) {
            int x = g.adj[v][i], y = g.adj[v][j];
            if (!std::binary_search(g.adj[x].begin(), g.adj[x].end(), y))
                best = std::min(best, flow.max_flow(x, y));
        }
    return best;
}

// Subset-removal oracle for the flow implementation.
inline int vertex_connectivity_brute_force(const SimpleGraph& g) {
    if (g.n < 2) throw InvalidParameter("vertex connectivity needs at least two vertices");
    if (g.n > 12) throw ResourceBound("brute-force connectivity is limited to 12 vertices");
    if (!is_connected(g)) return 0;

    std::vector<int> comp;
    for (int k = 1; k <= g.n - 2; ++k) {
        std::vector<int> cut(k);
        for (int i = 0; i < k; ++i) cut[i] = i;
        do {
            std::vector<char> removed(g.n, 0);
            for (int c : cut) removed[c] = 1;
            // Connectivity of the surviving induced subgraph.
            int start = -1, kept = 0;
            for (int u = 0; u < g.n; ++u)
                if (!removed[u]) {
                    ++kept;
                    start = u;
                }
            std::vector<int> stack{start};
            std::vector<char> seen(g.n, 0);
            seen[start] = 1;
            int visited = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int w : g.adj[u])
                    if (!removed[w] && !seen[w]) {
                        seen[w] = 1;
                        ++visited;
                        stack.push_back(w);
                    }
            }
            if (visited < kept) return k;
        } while (next_combination(cut, g.n));
    }
    return g.n - 1;
}

struct ConnectivityVerdict {
    bool holds = false;
    bool vacuous = false;      // diameter at most 3
    std::int64_t diameter = 0;
    int connectivity = 0;
    int min_budget = 0;
};

// Structural guarantee for sum-version equilibria: with every budget at least
// k, an equilibrium is either k-connected or already has diameter <= 3.
inline ConnectivityVerdict check_connectivity_theorem(const GameSpec& spec,
                                                      const StrategyProfile& profile,
                                                      bool verify_equilibrium = true,
                                                      std::int64_t cap = kDefaultCandidateCap) {
    validate_spec(spec);
    validate_profile(spec, profile);
    if (spec.version != CostVersion::Sum)
        throw InvalidParameter("the connectivity guarantee applies to the sum version");
    if (verify_equilibrium && exact_check_feasible(spec, cap) &&
        !is_equilibrium_exact(spec, profile, CostVersion::Sum, cap).equilibrium)
        throw NotAnEquilibrium("profile fails the exact equilibrium check");

    ConnectivityVerdict verdict;
    verdict.min_budget = *std::min_element(spec.budgets.begin(), spec.budgets.end());
    auto r = build_realization(spec, profile);
    verdict.diameter = diameter(r);
    verdict.connectivity = spec.n >= 2 ? vertex_connectivity(underlying_graph(r)) : 0;
    verdict.vacuous = verdict.diameter <= 3;
    verdict.holds = verdict.vacuous || verdict.connectivity >= verdict.min_budget;
    return verdict;
}

struct StructureReport {
    std::int64_t cycle_length = 0;
    std::int64_t max_distance_to_cycle = 0;
    std::int64_t brace_count = 0;
    bool sum_claim_holds = false;  // cycle <= 5, every vertex within distance 1
    bool max_claim_holds = false;  // cycle <= 7, every vertex within distance 2

    bool claim_for(CostVersion v) const {
        return v == CostVersion::Sum ? sum_claim_holds : max_claim_holds;
    }
};

// Unit-budget profiles are functional graphs: one directed cycle with trees
// hanging off it. Reports the cycle length and how far the trees reach.
inline StructureReport unit_budget_structure(const GameSpec& spec,
                                             const StrategyProfile& profile) {
    validate_spec(spec);
    validate_profile(spec, profile);
    for (int b : spec.budgets)
        if (b != 1) throw NonUnitBudget("structure report needs unit budgets");
    auto r = build_realization(spec, profile);
    if (!is_connected(underlying_graph(r))) throw Disconnected("underlying graph is disconnected");

    std::vector<int> step(spec.n, -1);
    int u = 0, steps = 0;
    while (step[u] < 0) {
        step[u] = steps++;
        u = r.out[u][0];
    }
    StructureReport rep;
    rep.cycle_length = steps - step[u];
    rep.brace_count = static_cast<std::int64_t>(r.braces.size());

    std::vector<std::int32_t> dist(spec.n, -1);
    std::vector<int> queue;
    for (int v = u, i = 0; i < rep.cycle_length; ++i, v = r.out[v][0]) {
        dist[v] = 0;
        queue.push_back(v);
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int x = queue[h];
        for (int w : r.adj[x])
            if (dist[w] < 0) {
                dist[w] = dist[x] + 1;
                queue.push_back(w);
            }
    }
    rep.max_distance_to_cycle = *std::max_element(dist.begin(), dist.end());
    rep.sum_claim_holds = rep.cycle_length <= 5 && rep.max_distance_to_cycle <= 1;
    rep.max_claim_holds = rep.cycle_length <= 7 && rep.max_distance_to_cycle <= 2;
    return rep;
}

struct TreeBoundVerdict {
    bool holds = false;
    std::int64_t diameter = 0;
    double bound = 0.0;
};

// Tree equilibria in the sum version are logarithmically shallow; the explicit
// testable bound is 2 (log2(n+1) + 1).
inline TreeBoundVerdict tree_diameter_bound_check(const GameSpec& spec,
                                                  const StrategyProfile& profile) {
    validate_spec(spec);
    validate_profile(spec, profile);
    if (spec.budget_sum() != spec.n - 1)
        throw NotTreeBG("budget sum must be exactly n-1");
    auto r = build_realization(spec, profile);
    if (!r.braces.empty()) throw NotATree("braces are two-vertex cycles");
    if (!is_connected(underlying_graph(r))) throw NotATree("underlying graph is disconnected");

    TreeBoundVerdict verdict;
    verdict.diameter = diameter(r);
    verdict.bound = 2.0 * (std::log2(static_cast<double>(spec.n) + 1.0) + 1.0);
    verdict.holds = static_cast<double>(verdict.diameter) <= verdict.bound;
    return verdict;
}

// f(k) = smallest ball of radius k anywhere in the graph, for k = 0..diameter.
// Nondecreasing, f(0) = 1, f(diameter) = n.
inline std::vector<std::int64_t> expansion_profile(const SimpleGraph& g, int threads = 0) {
    if (!is_connected(g)) throw Disconnected("expansion profile needs a connected graph");
    std::vector<std::int64_t> f(g.n, std::numeric_limits<std::int64_t>::max());
    std::int64_t diam = 0;
    std::mutex merge_mutex;
    detail::Csr csr(g.adj);
    parallel_blocks(
        g.n,
        [&](std::int64_t begin, std::int64_t end) {
            detail::BfsScratch s;
            // Beyond a vertex's eccentricity its ball holds everyone, so n is
            // the right neutral element for the running minimum.
            std::vector<std::int64_t> local_f(g.n, g.n);
            std::int64_t local_diam = 0;
            std::vector<std::int64_t> ball(g.n + 1, 0);
            for (std::int64_t u = begin; u < end; ++u) {
                auto st = detail::bfs_stats(csr, g.n, static_cast<int>(u), s);
                local_diam = std::max<std::int64_t>(local_diam, st.ecc);
                std::fill(ball.begin(), ball.begin() + st.ecc + 1, 0);
                for (int v = 0; v < g.n; ++v) ++ball[s.dist[v]];
                std::int64_t running = 0;
                for (int k = 0; k <= st.ecc; ++k) {
                    running += ball[k];
                    local_f[k] = std::min(local_f[k], running);
                }
            }
            std::lock_guard<std::mutex> lock(merge_mutex);
            diam = std::max(diam, local_diam);
            for (int k = 0; k < g.n; ++k) f[k] = std::min(f[k], local_f[k]);
        },
        threads);
    f.resize(diam + 1);
    return f;
}

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational reduced(std::int64_t num, std::int64_t den) {
        std::int64_t g = std::gcd(num, den);
        if (g == 0) return {0, 1};
        return {num / g, den / g};
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

struct PoAReport {
    std::int64_t profiles_total = 0;
    std::int64_t min_realization_diameter = 0;
    std::int64_t equilibrium_count = 0;
    std::optional<std::int64_t> min_equilibrium_diameter;
    std::optional<std::int64_t> max_equilibrium_diameter;
    std::optional<Rational> price_of_anarchy;
    std::optional<Rational> price_of_stability;
};

// Exact price of anarchy / stability by sweeping the whole profile space:
// the minimum diameter over all realizations and the diameter range over the
// exact equilibria.
inline PoAReport price_of_anarchy_exhaustive(const GameSpec& spec,
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

    const bool connected_required = spec.budget_sum() >= spec.n - 1;
    const std::int64_t inf = spec.disconnect_distance();

    PoAReport report;
    report.profiles_total = probe.total();
    report.min_realization_diameter = inf;
    std::mutex merge_mutex;

    parallel_blocks(
        probe.total(),
        [&](std::int64_t begin, std::int64_t end) {
            ProfileEnumerator it(spec);
            it.seek(begin);
            DeviationOracle oracle(spec);
            detail::Dsu dsu;
            std::vector<std::vector<int>> adj(spec.n);
            detail::BfsScratch scratch;

            std::int64_t local_min_real = inf;
            std::int64_t local_count = 0;
            std::optional<std::int64_t> local_min_eq, local_max_eq;

            for (std::int64_t rank = begin; rank < end; ++rank, it.advance()) {
                const StrategyProfile& p = it.current();
                for (auto& row : adj) row.clear();
                for (int i = 0; i < spec.n; ++i)
                    for (int t : p.strategies[i]) {
                        adj[i].push_back(t);
                        adj[t].push_back(i);
                    }
                detail::Csr csr(adj);
                std::int64_t diam = 0;
                for (int u = 0; u < spec.n && diam < inf; ++u) {
                    auto st = detail::bfs_stats(csr, spec.n, u, scratch);
                    diam = st.reach == spec.n ? std::max<std::int64_t>(diam, st.ecc) : inf;
                }
                local_min_real = std::min(local_min_real, diam);

                if (connected_required && diam == inf) continue;
                if (detail::find_improving_move(spec, p, spec.version, oracle)) continue;
                ++local_count;
                if (!local_min_eq || diam < *local_min_eq) local_min_eq = diam;
                if (!local_max_eq || diam > *local_max_eq) local_max_eq = diam;
            }

            std::lock_guard<std::mutex> lock(merge_mutex);
            report.min_realization_diameter =
                std::min(report.min_realization_diameter, local_min_real);
            report.equilibrium_count += local_count;
            if (local_min_eq && (!report.min_equilibrium_diameter ||
                                 *local_min_eq < *report.min_equilibrium_diameter))
                report.min_equilibrium_diameter = local_min_eq;
            if (local_max_eq && (!report.max_equilibrium_diameter ||
                                 *local_max_eq > *report.max_equilibrium_diameter))
                report.max_equilibrium_diameter = local_max_eq;
        },
        threads);

    if (report.equilibrium_count > 0) {
        if (report.min_realization_diameter == 0) {
            // Only the one-player game: every ratio collapses to 1.
            report.price_of_anarchy = Rational{1, 1};
            report.price_of_stability = Rational{1, 1};
        } else {
            report.price_of_anarchy = Rational::reduced(*report.max_equilibrium_diameter,
                                                        report.min_realization_diameter);
            report.price_of_stability = Rational::reduced(*report.min_equilibrium_diameter,
                                                          report.min_realization_diameter);
        }
    }
    return report;
}

struct FacilityResult {
    std::int64_t value = 0;
    std::vector<int> centers;  // lexicographically smallest optimum
};

namespace detail {

template <bool kCenter>
FacilityResult brute_force_facility(const SimpleGraph& g, int k, std::int64_t cap) {
    if (g.n < 1) throw InvalidGraph("empty graph");
    if (k < 1 || k > g.n) throw InvalidParameter("facility count must lie in [1, n]");
    if (g.n > kDenseMatrixLimit) throw ResourceBound("facility oracle needs a dense matrix");
    if (binomial_capped(g.n, k, cap) > cap)
        throw EnumerationCapExceeded("facility subsets exceed the cap");

    const std::int64_t inf = static_cast<std::int64_t>(g.n) * g.n;
    std::vector<std::vector<std::int64_t>> dist(g.n, std::vector<std::int64_t>(g.n, inf));
    Csr csr(g.adj);
    BfsScratch scratch;
    for (int u = 0; u < g.n; ++u) {
        bfs_stats(csr, g.n, u, scratch);
        for (int v = 0; v < g.n; ++v)
            if (scratch.dist[v] >= 0) dist[u][v] = scratch.dist[v];
    }

    FacilityResult best;
    best.value = -1;
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    do {
        std::int64_t objective = 0;
        for (int v = 0; v < g.n; ++v) {
            std::int64_t nearest = inf;
            for (int c : pick) nearest = std::min(nearest, dist[c][v]);
            if constexpr (kCenter)
                objective = std::max(objective, nearest);
            else
                objective += nearest;
        }
        if (best.value < 0 || objective < best.value) {
            best.value = objective;
            best.centers = pick;
        }
    } while (next_combination(pick, g.n));
    return best;
}

} // namespace detail

inline FacilityResult brute_force_kcenter(const SimpleGraph& g, int k,
                                          std::int64_t cap = kDefaultProfileCap) {
    return detail::brute_force_facility<true>(g, k, cap);
}

inline FacilityResult brute_force_kmedian(const SimpleGraph& g, int k,
                                          std::int64_t cap = kDefaultProfileCap) {
    return detail::brute_force_facility<false>(g, k, cap);
}

struct FacilityReduction {
    GameSpec spec;            // the n players realizing H plus one appended player
    StrategyProfile profile;  // appended player holds a placeholder strategy
    int appended_player = 0;
    std::int64_t cost_offset = 0;  // best-response cost minus the facility optimum
};

// Facility location as a best-response problem: orient H from the smaller
// endpoint, give vertex i its outdegree as budget, and append a player with
// budget k. That player's exact best response in the max version is an
// optimal k-center (cost 1 + radius); in the sum version an optimal k-median
// (cost n + total distance).
inline FacilityReduction reduce_kcenter(const SimpleGraph& h, int k,
                                        CostVersion version = CostVersion::Max) {
    if (h.n < 2) throw InvalidGraph("reduction needs at least two vertices");
    if (!is_connected(h)) throw InvalidGraph("reduction needs a connected graph");
    if (k < 1 || k > h.n) throw InvalidParameter("facility count must lie in [1, n]");

    FacilityReduction red;
    red.appended_player = h.n;
    red.cost_offset = version == CostVersion::Max ? 1 : h.n;
    std::vector<int> budgets(h.n + 1, 0);
    red.profile.strategies.assign(h.n + 1, {});
    for (int u = 0; u < h.n; ++u)
        for (int v : h.adj[u])
            if (u < v) {
                red.profile.strategies[u].push_back(v);
                ++budgets[u];
            }
    budgets[h.n] = k;
    for (int c = 0; c < k; ++c) red.profile.strategies[h.n].push_back(c);
    red.spec = make_game(h.n + 1, std::move(budgets), version);
    validate_profile(red.spec, red.profile);
    return red;
}

struct DeviationSampleReport {
    std::int64_t samples = 0;
    std::int64_t improving_found = 0;
    std::int64_t min_cost_seen = 0;
    std::optional<Witness> first_improvement;  // by sample index
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4568bull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace detail

// Randomized equilibrium falsification for instances far beyond exact
// checking: sample (player, full replacement strategy) pairs and look for a
// strict improvement. Deterministic for a fixed seed, independent of thread
// count.
inline DeviationSampleReport sample_deviations(const GameSpec& spec,
                                               const StrategyProfile& profile,
                                               std::int64_t samples, std::uint64_t seed,
                                               int threads = 0) {
    validate_spec(spec);
    validate_profile(spec, profile);
    auto r = build_realization(spec, profile);
    const std::int64_t inf = spec.disconnect_distance();

    // Arc owners seen from the target side; needed to decide which underlying
    // edges survive when a player withdraws its arcs.
    std::vector<std::vector<int>> in_adj(spec.n);
    for (int i = 0; i < spec.n; ++i)
        for (int t : r.out[i]) in_adj[t].push_back(i);

    struct Sample {
        int player = 0;
        Strategy strategy;
        std::int64_t old_cost = 0;
        std::int64_t new_cost = 0;
    };
    std::vector<Sample> results(samples);

    parallel_blocks(
        samples,
        [&](std::int64_t begin, std::int64_t end) {
            std::vector<std::int32_t> dist(spec.n);
            std::vector<int> queue(spec.n);
            std::vector<char> in_cand(spec.n, 0), in_nb(spec.n, 0);

            // BFS from `player` pretending its strategy is `cand`; empty cand
            // plus use_current evaluates the recorded profile.
            auto deviation_cost = [&](int player, const Strategy& cand,
                                      bool use_current) -> std::int64_t {
                const Strategy& strat = use_current ? r.out[player] : cand;
                for (int s : strat) in_cand[s] = 1;
                for (int w : in_adj[player]) in_nb[w] = 1;
                std::fill(dist.begin(), dist.end(), -1);
                dist[player] = 0;
                queue[0] = player;
                int head = 0, tail = 1;
                std::int64_t sum = 0;
                std::int32_t ecc = 0;
                while (head < tail) {
                    int u = queue[head++];
                    std::int32_t du = dist[u];
                    sum += du;
                    if (du > ecc) ecc = du;
                    auto visit = [&](int v) {
                        if (dist[v] < 0) {
                            dist[v] = du + 1;
                            queue[tail++] = v;
                        }
                    };
                    if (u == player) {
                        for (int v : strat) visit(v);
                        for (int v : in_adj[player]) visit(v);
                    } else {
                        for (int v : r.adj[u]) {
                            if (v == player && !use_current && !in_nb[u] && !in_cand[u]) continue;
                            visit(v);
                        }
                        if (in_cand[u]) visit(player);
                    }
                }
                for (int s : strat) in_cand[s] = 0;
                for (int w : in_adj[player]) in_nb[w] = 0;

                if (spec.version == CostVersion::Sum)
                    return sum + static_cast<std::int64_t>(spec.n - tail) * inf;
                if (tail == spec.n) return ecc;  // connected, one component
                // Disconnected: count components of the modified graph.
                detail::Dsu dsu;
                dsu.reset(spec.n);
                for (int i = 0; i < spec.n; ++i) {
                    if (i == player) continue;
                    for (int t : r.out[i]) dsu.unite(i, t);
                }
                for (int s : strat) dsu.unite(player, s);
                std::vector<char> root_seen(spec.n, 0);
                int kappa = 0;
                for (int i = 0; i < spec.n; ++i) {
                    int root = dsu.find(i);
                    if (!root_seen[root]) {
                        root_seen[root] = 1;
                        ++kappa;
                    }
                }
                return inf + static_cast<std::int64_t>(kappa - 1) * inf;
            };

            for (std::int64_t i = begin; i < end; ++i) {
                std::mt19937_64 rng(detail::splitmix64(seed ^ static_cast<std::uint64_t>(i + 1)));
                std::uniform_int_distribution<int> pick_player(0, spec.n - 1);
                int player = pick_player(rng);
                int b = spec.budgets[player];
                Strategy cand;
                cand.reserve(b);
                std::uniform_int_distribution<int> pick_target(0, spec.n - 1);
                while (static_cast<int>(cand.size()) < b) {
                    int t = pick_target(rng);
                    if (t == player) continue;
                    if (std::find(cand.begin(), cand.end(), t) != cand.end()) continue;
                    cand.push_back(t);
                }
                std::sort(cand.begin(), cand.end());

                Sample& s = results[i];
                s.player = player;
                s.strategy = cand;
                s.old_cost = deviation_cost(player, {}, true);
                s.new_cost = deviation_cost(player, cand, false);
            }
        },
        threads);

    DeviationSampleReport report;
    report.samples = samples;
    report.min_cost_seen = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t i = 0; i < samples; ++i) {
        const Sample& s = results[i];
        report.min_cost_seen = std::min(report.min_cost_seen, s.new_cost);
        if (s.new_cost < s.old_cost) {
            ++report.improving_found;
            if (!report.first_improvement)
                report.first_improvement = Witness{s.player, s.strategy, s.old_cost, s.new_cost};
        }
    }
    if (samples == 0) report.min_cost_seen = 0;
    return report;
}

} // namespace bbng
