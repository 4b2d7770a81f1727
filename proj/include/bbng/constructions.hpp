#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bbng/distance.hpp"
#include "bbng/game.hpp"

namespace bbng {

enum class Provenance {
    HubStar,        // one high-budget vertex covers all zero-budget vertices
    LayeredStar,    // several top-budget vertices share the covering
    IsolatedSplit,  // budget sum below n-1: sub-game equilibrium plus isolated players
    Spider,
    PerfectBinaryTree,
    WordGraph,
    SqrtLogWordGraph,
};

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::HubStar: return "hub-star";
        case Provenance::LayeredStar: return "layered-star";
        case Provenance::IsolatedSplit: return "isolated-split";
        case Provenance::Spider: return "spider";
        case Provenance::PerfectBinaryTree: return "binary-tree";
        case Provenance::WordGraph: return "word-graph";
        default: return "sqrtlog-word-graph";
    }
}

// Machine-checkable statements a construction attaches to its output.
struct ConstructionClaims {
    std::optional<std::int64_t> diameter_exact;
    std::optional<std::int64_t> diameter_at_most;
    bool equilibrium_sum = false;
    bool equilibrium_max = false;
    std::optional<int> min_degree_at_least;
    std::optional<int> max_degree_at_most;
};

// Bookkeeping for the budget-cover builder. Indices refer to the ascending
// budget order; sorted_to_original maps them back to input players.
struct CoverDetails {
    int case_id = 0;                     // 1 hub star, 2 layered star, 3 isolated split
    std::vector<int> sorted_to_original; // 0-based
    int cover_start = 0;                 // 1-based sorted index of the first covering vertex
    int spill_count = 0;                 // zero-budget vertices served by the first cover vertex
    std::vector<int> cover_arc_counts;   // covering arcs per cover vertex, hub first
    int sub_case_id = 0;                 // isolated split: case used by the embedded sub-game
};

struct ConstructionOutput {
    GameSpec spec;
    StrategyProfile profile;
    Provenance provenance = Provenance::HubStar;
    ConstructionClaims claims;
    std::optional<CoverDetails> cover;
    int word_t = 0, word_k = 0;  // word graphs: digit range and tuple length
};

namespace detail {

// Arc lists under construction, 1-based to match hand arithmetic on sorted
// budget indices. Adjacency matrix backs the non-neighbor queries.
struct ArcBuilder {
    int n;
    std::vector<std::vector<int>> out;  // out[1..n]
    std::vector<char> adjacent;         // (n+1)*(n+1)

    explicit ArcBuilder(int n_) : n(n_), out(n_ + 1), adjacent((n_ + 1) * (n_ + 1), 0) {}

    bool adj(int u, int v) const { return adjacent[u * (n + 1) + v] != 0; }
    void add(int u, int v) {
        out[u].push_back(v);
        adjacent[u * (n + 1) + v] = adjacent[v * (n + 1) + u] = 1;
    }
    void replace(int u, int old_target, int new_target) {
        auto& row = out[u];
        *std::find(row.begin(), row.end(), old_target) = new_target;
        // The mutual arc keeps the old adjacency alive; this is only called on
        // braces, so drop nothing.
        adjacent[u * (n + 1) + new_target] = adjacent[new_target * (n + 1) + u] = 1;
    }
    int degree(int u) const {
        int d = 0;
        for (int v = 1; v <= n; ++v) d += adj(u, v);
        return d;
    }
    bool has_arc(int u, int v) const {
        return std::find(out[u].begin(), out[u].end(), v) != out[u].end();
    }
    // Hop counts from source over the current undirected view; -1 unreachable.
    std::vector<int> hops(int source) const {
        std::vector<int> dist(n + 1, -1), queue;
        dist[source] = 0;
        queue.push_back(source);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (int v = 1; v <= n; ++v)
                if (adj(u, v) && dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }
        return dist;
    }
};

inline void require(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("construction invariant violated: ") + what);
}

// Hub star: v_n links the first b_n vertices, everyone else links v_n, spare
// budget goes to the smallest non-neighbor, braces between well-connected
// vertices are then rewired away.
inline void build_hub_star(ArcBuilder& g, const std::vector<int>& b) {
    int n = g.n;
    if (n == 1) return;
    for (int v = 1; v <= b[n]; ++v) g.add(n, v);
    for (int u = b[n] + 1; u <= n - 1; ++u) g.add(u, n);

    for (int u = 1; u <= n; ++u) {
        while (static_cast<int>(g.out[u].size()) < b[u]) {
            int pick = 0;
            for (int w = 1; w <= n && pick == 0; ++w)
                if (w != u && !g.adj(u, w)) pick = w;
            for (int w = 1; w <= n && pick == 0; ++w)
                if (w != u && !g.has_arc(u, w)) pick = w;
            require(pick != 0, "hub star ran out of link targets");
            g.add(u, pick);
        }
    }

    // Brace elimination: while some brace endpoint has a vertex at distance
    // two, point its arc there instead. Each pass removes one brace.
    for (bool changed = true; changed;) {
        changed = false;
        for (int u = 1; u <= n && !changed; ++u) {
            for (int v : g.out[u]) {
                if (!g.has_arc(v, u)) continue;
                int mover = u;
                if (g.degree(mover) == n - 1) {
                    mover = v;
                    if (g.degree(mover) == n - 1 || !g.has_arc(v, u)) continue;
                }
                int other = mover == u ? v : u;
                int w = 0;
                for (int c = 1; c <= n && w == 0; ++c)
                    if (c != mover && !g.adj(mover, c)) w = c;
                require(w != 0, "brace endpoint with local diameter 2 must have a non-neighbor");
                g.replace(mover, other, w);
                changed = true;
                break;
            }
        }
    }
}

// Layered star: t is the largest sorted index whose budget suffix still covers
// the zero-budget set A; {v_t} u C u {v_n} then serve A in four phases.
inline void build_layered_star(ArcBuilder& g, const std::vector<int>& b, CoverDetails& details) {
    int n = g.n;
    int z = 0;
    while (z < n && b[z + 1] == 0) ++z;

    std::int64_t suffix = 0;
    int t = 0;
    for (int j = n; j >= 1; --j) {
        suffix += b[j];
        if (suffix >= z + n - j) {
            t = j;
            break;
        }
    }
    require(t > z && t < n, "cover pivot must fall strictly between the zero block and n");

    // Phase 1: everyone in B u C links the hub.
    for (int u = z + 1; u <= n - 1; ++u) g.add(u, n);

    // Phase 2: cover A. The hub spends its whole budget, each C vertex all but
    // the hub arc, v_t the remainder.
    std::int64_t spent = 0;
    for (int i = t + 1; i <= n; ++i) spent += b[i];
    int s = static_cast<int>(z + n - (t + 1) - spent);
    require(s >= 1, "the first cover vertex must serve at least one zero-budget vertex");
    require(b[t] - 1 >= s, "the first cover vertex cannot exceed its budget");

    int next_a = 1;
    details.cover_arc_counts.push_back(b[n]);
    for (int v = 0; v < b[n]; ++v) g.add(n, next_a++);
    for (int i = n - 1; i >= t + 1; --i) {
        require(b[i] >= 2, "every interior cover vertex needs budget at least 2");
        details.cover_arc_counts.push_back(b[i] - 1);
        for (int v = 0; v < b[i] - 1; ++v) g.add(i, next_a++);
    }
    details.cover_arc_counts.push_back(s);
    for (int v = 0; v < s; ++v) g.add(t, next_a++);
    require(next_a == z + 1, "phase 2 must serve the zero-budget set exactly once");
    details.cover_start = t;
    details.spill_count = s;

    {
        std::vector<int> indeg(n + 1, 0);
        for (int u = 1; u <= n; ++u)
            for (int v : g.out[u]) ++indeg[v];
        for (int a = 1; a <= z; ++a)
            require(indeg[a] == 1, "each zero-budget vertex has exactly one incoming arc");
        auto hub_hops = g.hops(n);
        for (int v = 1; v <= n; ++v)
            require(hub_hops[v] >= 0 && hub_hops[v] <= 2, "hub must reach everyone in two hops");
    }

    // Phase 3: B tops up towards the cover vertices, highest index first.
    for (int u = z + 1; u <= t; ++u) {
        for (int w = n - 1; w >= t && static_cast<int>(g.out[u].size()) < b[u]; --w) {
            if (w == u) continue;
            g.add(u, w);
        }
    }
    // Phase 4: whatever budget is left goes to A in index order.
    for (int u = z + 1; u <= t; ++u) {
        for (int a = 1; a <= z && static_cast<int>(g.out[u].size()) < b[u]; ++a) {
            if (!g.has_arc(u, a)) g.add(u, a);
        }
    }

    for (int u = 1; u <= n; ++u) {
        require(static_cast<int>(g.out[u].size()) == b[u], "every budget is spent exactly");
        for (int v : g.out[u]) require(!g.has_arc(v, u), "the layered star never builds a brace");
    }
    // Every covering arc from C lands on a vertex whose sole neighbor is the
    // arc's owner.
    for (int w = t + 1; w <= n - 1; ++w) {
        for (int x : g.out[w]) {
            if (x > z) continue;
            require(g.degree(x) == 1, "covered vertices outside the hub's reach stay degree one");
        }
    }
}

} // namespace detail

// Deterministic equilibrium for any feasible budget vector, valid in both
// cost versions. Dispatches on the budget sum, the number of zero-budget
// players and the largest budget; profiles come back in the caller's player
// order with the sorting permutation attached.
inline ConstructionOutput construct_equilibrium(const std::vector<int>& budgets,
                                                CostVersion version) {
    int n = static_cast<int>(budgets.size());
    if (n < 1) throw InvalidBudget("at least one player required");
    if (n > kDenseMatrixLimit)
        throw ResourceBound("equilibrium construction is limited to " +
                            std::to_string(kDenseMatrixLimit) + " players");
    for (int b : budgets)
        if (b < 0 || b >= n) throw InvalidBudget("budgets must lie in [0, n-1]");

    CoverDetails details;
    details.sorted_to_original.resize(n);
    std::iota(details.sorted_to_original.begin(), details.sorted_to_original.end(), 0);
    std::stable_sort(details.sorted_to_original.begin(), details.sorted_to_original.end(),
                     [&](int a, int bb) { return budgets[a] < budgets[bb]; });

    std::vector<int> b(n + 1, 0);  // ascending, 1-based
    for (int i = 0; i < n; ++i) b[i + 1] = budgets[details.sorted_to_original[i]];
    std::int64_t sigma = std::accumulate(b.begin(), b.end(), std::int64_t{0});
    int z = 0;
    while (z < n && b[z + 1] == 0) ++z;

    detail::ArcBuilder g(n);
    Provenance provenance;
    ConstructionClaims claims;
    claims.equilibrium_sum = claims.equilibrium_max = true;

    if (n == 1 || (sigma >= n - 1 && b[n] >= z)) {
        detail::build_hub_star(g, b);
        details.case_id = 1;
        provenance = Provenance::HubStar;
        claims.diameter_at_most = n == 1 ? 0 : 2;
    } else if (sigma >= n - 1) {
        detail::build_layered_star(g, b, details);
        details.case_id = 2;
        provenance = Provenance::LayeredStar;
        claims.diameter_at_most = 4;
    } else {
        // Isolated split: the smallest suffix m..n whose budgets can connect
        // itself plays a self-contained equilibrium; the rest stays isolated.
        std::int64_t suffix = 0;
        int m = 0;
        for (int j = n; j >= 1; --j) {
            suffix += b[j];
            if (suffix >= n - j) m = j;
        }
        detail::require(m >= 2, "a split instance always leaves at least one isolated player");
        detail::require(b[m - 1] == 0, "players below the split have zero budget");

        int sub_n = n - m + 1;
        std::vector<int> sub_b(sub_n + 1, 0);
        for (int j = 1; j <= sub_n; ++j) {
            sub_b[j] = b[m - 1 + j];
            detail::require(sub_b[j] <= sub_n - 1, "sub-game budgets stay feasible");
        }
        detail::ArcBuilder sub(sub_n);
        int sub_z = 0;
        while (sub_z < sub_n && sub_b[sub_z + 1] == 0) ++sub_z;
        if (sub_n == 1 || sub_b[sub_n] >= sub_z) {
            detail::build_hub_star(sub, sub_b);
            details.sub_case_id = 1;
        } else {
            CoverDetails sub_details;
            detail::build_layered_star(sub, sub_b, sub_details);
            details.sub_case_id = 2;
        }
        for (int u = 1; u <= sub_n; ++u)
            for (int v : sub.out[u]) g.add(m - 1 + u, m - 1 + v);

        details.case_id = 3;
        provenance = Provenance::IsolatedSplit;
        claims.diameter_exact = static_cast<std::int64_t>(n) * n;
    }

    ConstructionOutput result;
    result.spec = make_game(n, budgets, version);
    result.profile.strategies.assign(n, {});
    for (int u = 1; u <= n; ++u) {
        int src = details.sorted_to_original[u - 1];
        for (int v : g.out[u])
            result.profile.strategies[src].push_back(details.sorted_to_original[v - 1]);
        std::sort(result.profile.strategies[src].begin(), result.profile.strategies[src].end());
    }
    validate_profile(result.spec, result.profile);
    result.provenance = provenance;
    result.claims = claims;
    result.cover = std::move(details);
    return result;
}

// Three directed paths of length k glued to a hub by their owners; a tree
// whose max-version equilibrium has diameter 2k. Vertex order:
// x_1..x_k, y_1..y_k, z_1..z_k, w.
inline ConstructionOutput gen_spider(int k) {
    if (k < 1) throw InvalidParameter("spider needs k >= 1");
    int n = 3 * k + 1;
    int hub = n - 1;  // 0-based

    ConstructionOutput result;
    result.profile.strategies.assign(n, {});
    for (int leg = 0; leg < 3; ++leg) {
        int base = leg * k;
        for (int i = 0; i + 1 < k; ++i) result.profile.strategies[base + i].push_back(base + i + 1);
        result.profile.strategies[base].push_back(hub);
        std::sort(result.profile.strategies[base].begin(), result.profile.strategies[base].end());
    }
    std::vector<int> budgets(n);
    for (int i = 0; i < n; ++i) budgets[i] = static_cast<int>(result.profile.strategies[i].size());
    result.spec = make_game(n, std::move(budgets), CostVersion::Max);
    validate_profile(result.spec, result.profile);
    result.provenance = Provenance::Spider;
    result.claims.equilibrium_max = true;
    result.claims.diameter_exact = 2 * k;
    return result;
}

// Perfect binary tree with 2^(k+1)-1 vertices; vertex i owns arcs to 2i and
// 2i+1 (1-based). A sum-version equilibrium of diameter 2k.
inline ConstructionOutput gen_perfect_binary_tree(int k) {
    if (k < 1) throw InvalidParameter("binary tree needs k >= 1");
    if (k > 20) throw ResourceBound("binary tree generator is limited to k <= 20");
    int n = (1 << (k + 1)) - 1;

    ConstructionOutput result;
    result.profile.strategies.assign(n, {});
    for (int i = 1; 2 * i + 1 <= n; ++i)
        result.profile.strategies[i - 1] = {2 * i - 1, 2 * i};
    std::vector<int> budgets(n);
    for (int i = 0; i < n; ++i) budgets[i] = static_cast<int>(result.profile.strategies[i].size());
    result.spec = make_game(n, std::move(budgets), CostVersion::Sum);
    validate_profile(result.spec, result.profile);
    result.provenance = Provenance::PerfectBinaryTree;
    result.claims.equilibrium_sum = true;
    result.claims.diameter_exact = 2 * k;
    return result;
}

namespace detail {

// Saturates far above any usable graph size; keeps the growth-condition
// arithmetic exact wherever the result could ever be built.
inline unsigned __int128 ipow(std::int64_t base, int exp) {
    const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 126;
    unsigned __int128 r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > limit / static_cast<unsigned __int128>(base)) return limit;
        r *= static_cast<unsigned __int128>(base);
    }
    return r;
}

} // namespace detail

// Word graph on {1..t}^k: tuples are adjacent when one is the other shifted
// by one position. Every orientation of it is a max-version equilibrium; the
// deterministic one here sends each edge from the lexicographically smaller
// tuple and then flips one edge per sink.
inline ConstructionOutput gen_word_graph(int t, int k,
                                         std::int64_t vertex_cap = kDefaultVertexCap) {
    if (t <= 3 || k <= 3)
        throw ConditionViolated("word graph needs t > 3 and k > 3");
    unsigned __int128 lhs = detail::ipow(2 * static_cast<std::int64_t>(t), k) - 1;
    unsigned __int128 rhs = detail::ipow(t, k) * static_cast<unsigned __int128>(2 * t - 1);
    if (lhs >= rhs)
        throw ConditionViolated("degree growth condition fails: (2t)^k - 1 >= t^k (2t - 1)");
    unsigned __int128 size = detail::ipow(t, k);
    if (size > static_cast<unsigned __int128>(vertex_cap))
        throw ResourceBound("word graph would exceed the vertex cap");
    const std::int64_t n = static_cast<std::int64_t>(size);
    const std::int64_t shift = n / t;  // t^(k-1)

    // One generated pair per (vertex, appended digit); duplicates collapse.
    std::vector<std::uint64_t> edges;
    edges.reserve(static_cast<std::size_t>(n) * t);
    for (std::int64_t id = 0; id < n; ++id) {
        std::int64_t tail = (id % shift) * t;
        for (int c = 0; c < t; ++c) {
            std::int64_t nb = tail + c;
            if (nb == id) continue;
            std::uint64_t lo = std::min(id, nb), hi = std::max(id, nb);
            edges.push_back(lo * static_cast<std::uint64_t>(n) + hi);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<std::vector<int>> out(n), adj(n);
    for (std::uint64_t e : edges) {
        int u = static_cast<int>(e / n), v = static_cast<int>(e % n);
        out[u].push_back(v);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (std::int64_t u = 0; u < n; ++u) {
        if (!out[u].empty()) continue;
        // Lex-orientation sinks have every neighbor below them; take the edge
        // to the smallest one.
        int w = *std::min_element(adj[u].begin(), adj[u].end());
        auto& row = out[w];
        row.erase(std::find(row.begin(), row.end(), static_cast<int>(u)));
        out[u].push_back(w);
        detail::require(!row.empty(), "sink fix must not create a new sink");
    }

    ConstructionOutput result;
    result.profile.strategies.resize(n);
    std::vector<int> budgets(n);
    int min_deg = t * 2 + 1, max_deg = 0;
    for (std::int64_t u = 0; u < n; ++u) {
        std::sort(out[u].begin(), out[u].end());
        detail::require(!out[u].empty(), "every vertex keeps outdegree at least 1");
        result.profile.strategies[u] = std::move(out[u]);
        budgets[u] = static_cast<int>(result.profile.strategies[u].size());
        int d = static_cast<int>(adj[u].size());
        min_deg = std::min(min_deg, d);
        max_deg = std::max(max_deg, d);
    }
    detail::require(min_deg >= t - 1 && max_deg <= 2 * t, "degrees stay within [t-1, 2t]");

    result.spec = make_game(static_cast<int>(n), std::move(budgets), CostVersion::Max);
    validate_profile(result.spec, result.profile);
    result.provenance = Provenance::WordGraph;
    result.claims.equilibrium_max = true;
    result.claims.diameter_exact = k;
    result.claims.min_degree_at_least = t - 1;
    result.claims.max_degree_at_most = 2 * t;
    result.word_t = t;
    result.word_k = k;
    return result;
}

// Word graph with t = 2^k, so n = 2^(k^2) and the diameter is sqrt(log2 n).
inline ConstructionOutput gen_sqrtlog_instance(int k,
                                               std::int64_t vertex_cap = kDefaultVertexCap) {
    if (k <= 3) throw InvalidParameter("the sqrt-log family needs k > 3");
    if (k > 30) throw ResourceBound("the sqrt-log family is limited to k <= 30");
    auto result = gen_word_graph(1 << k, k, vertex_cap);
    result.provenance = Provenance::SqrtLogWordGraph;
    for (int b : result.spec.budgets)
        detail::require(b >= 1, "all budgets in the sqrt-log family are positive");
    return result;
}

} // namespace bbng
