#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bbng/game.hpp"
#include "bbng/parallel.hpp"

namespace bbng {

namespace detail {

// Flattened adjacency; BFS over vectors-of-vectors is too slow for the
// big generated graphs.
struct Csr {
    std::vector<std::int32_t> offsets;
    std::vector<std::int32_t> targets;

    explicit Csr(const std::vector<std::vector<int>>& adj) {
        offsets.resize(adj.size() + 1);
        std::size_t m = 0;
        for (std::size_t i = 0; i < adj.size(); ++i) {
            offsets[i] = static_cast<std::int32_t>(m);
            m += adj[i].size();
        }
        offsets[adj.size()] = static_cast<std::int32_t>(m);
        targets.reserve(m);
        for (const auto& row : adj)
            for (int v : row) targets.push_back(v);
    }
};

struct BfsScratch {
    std::vector<std::int32_t> dist;
    std::vector<std::int32_t> queue;
};

struct BfsStats {
    int reach = 0;             // vertices reached, source included
    std::int64_t sum = 0;      // sum of hop counts over reached vertices
    std::int32_t ecc = 0;      // max hop count over reached vertices
};

inline BfsStats bfs_stats(const Csr& g, int n, int source, BfsScratch& s) {
    s.dist.assign(n, -1);
    s.queue.resize(n);
    s.dist[source] = 0;
    s.queue[0] = source;
    int head = 0, tail = 1;
    BfsStats st;
    while (head < tail) {
        std::int32_t u = s.queue[head++];
        std::int32_t du = s.dist[u];
        st.sum += du;
        if (du > st.ecc) st.ecc = du;
        for (std::int32_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
            std::int32_t v = g.targets[e];
            if (s.dist[v] < 0) {
                s.dist[v] = du + 1;
                s.queue[tail++] = v;
            }
        }
    }
    st.reach = tail;
    return st;
}

// Component ids over an undirected adjacency; returns the component count.
inline int components(const std::vector<std::vector<int>>& adj, std::vector<int>& comp) {
    int n = static_cast<int>(adj.size());
    comp.assign(n, -1);
    std::vector<int> stack;
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u])
                if (comp[v] < 0) {
                    comp[v] = count;
                    stack.push_back(v);
                }
        }
        ++count;
    }
    return count;
}

} // namespace detail

// All-pairs distances with the n^2 cross-component convention. Dense storage,
// so this is for desk-scale graphs; the sweep functions below cover large n.
struct DistanceMatrix {
    int n = 0;
    std::int64_t infinity = 0;       // n^2
    std::vector<std::int64_t> d;     // row-major n*n
    std::vector<int> component;
    int kappa = 0;

    std::int64_t at(int u, int v) const { return d[static_cast<std::size_t>(u) * n + v]; }
};

inline constexpr int kDenseMatrixLimit = 4096;

inline DistanceMatrix underlying_distances(const Realization& r) {
    if (r.n > kDenseMatrixLimit)
        throw ResourceBound("dense distance matrix is limited to " +
                            std::to_string(kDenseMatrixLimit) + " vertices");
    DistanceMatrix m;
    m.n = r.n;
    m.infinity = static_cast<std::int64_t>(r.n) * r.n;
    m.kappa = detail::components(r.adj, m.component);
    m.d.assign(static_cast<std::size_t>(r.n) * r.n, m.infinity);

    detail::Csr g(r.adj);
    detail::BfsScratch s;
    for (int u = 0; u < r.n; ++u) {
        detail::bfs_stats(g, r.n, u, s);
        std::int64_t* row = m.d.data() + static_cast<std::size_t>(u) * r.n;
        for (int v = 0; v < r.n; ++v)
            if (s.dist[v] >= 0) row[v] = s.dist[v];
    }
    return m;
}

inline std::int64_t cost_from_bfs(const detail::BfsStats& st, int n, std::int64_t inf,
                                  int kappa, CostVersion version) {
    if (n == 1) return 0;
    if (version == CostVersion::Sum)
        return st.sum + static_cast<std::int64_t>(n - st.reach) * inf;
    std::int64_t local = st.reach == n ? st.ecc : inf;
    return local + static_cast<std::int64_t>(kappa - 1) * inf;
}

inline std::int64_t cost(const Realization& r, int player, CostVersion version) {
    if (player < 0 || player >= r.n) throw IndexOutOfRange("player index out of range");
    if (r.n == 1) return 0;
    detail::Csr g(r.adj);
    detail::BfsScratch s;
    auto st = detail::bfs_stats(g, r.n, player, s);
    int kappa = 1;
    if (version == CostVersion::Max) {
        std::vector<int> comp;
        kappa = detail::components(r.adj, comp);
    }
    std::int64_t inf = static_cast<std::int64_t>(r.n) * r.n;
    return cost_from_bfs(st, r.n, inf, kappa, version);
}

inline std::int64_t local_diameter(const Realization& r, int player) {
    if (player < 0 || player >= r.n) throw IndexOutOfRange("player index out of range");
    if (r.n == 1) return 0;
    detail::Csr g(r.adj);
    detail::BfsScratch s;
    auto st = detail::bfs_stats(g, r.n, player, s);
    std::int64_t inf = static_cast<std::int64_t>(r.n) * r.n;
    return st.reach == r.n ? st.ecc : inf;
}

// Per-vertex local diameters via a parallel BFS sweep; n^2 everywhere when
// the underlying graph is disconnected.
inline std::vector<std::int64_t> all_local_diameters(const Realization& r, int threads = 0) {
    std::int64_t inf = static_cast<std::int64_t>(r.n) * r.n;
    std::vector<std::int64_t> ecc(r.n, 0);
    if (r.n == 1) return ecc;
    detail::Csr g(r.adj);
    parallel_blocks(
        r.n,
        [&](std::int64_t begin, std::int64_t end) {
            detail::BfsScratch s;
            for (std::int64_t u = begin; u < end; ++u) {
                auto st = detail::bfs_stats(g, r.n, static_cast<int>(u), s);
                ecc[u] = st.reach == r.n ? st.ecc : inf;
            }
        },
        threads);
    return ecc;
}

inline std::int64_t diameter(const Realization& r, int threads = 0) {
    if (r.n == 1) return 0;
    auto ecc = all_local_diameters(r, threads);
    return *std::max_element(ecc.begin(), ecc.end());
}

// Costs and local diameters for every player at once.
struct CostReport {
    CostVersion version = CostVersion::Sum;
    int kappa = 1;
    std::vector<std::int64_t> costs;
    std::vector<std::int64_t> local_diameters;
};

inline CostReport cost_report(const Realization& r, CostVersion version, int threads = 0) {
    CostReport rep;
    rep.version = version;
    rep.costs.assign(r.n, 0);
    rep.local_diameters.assign(r.n, 0);
    {
        std::vector<int> comp;
        rep.kappa = detail::components(r.adj, comp);
    }
    if (r.n == 1) return rep;
    std::int64_t inf = static_cast<std::int64_t>(r.n) * r.n;
    detail::Csr g(r.adj);
    parallel_blocks(
        r.n,
        [&](std::int64_t begin, std::int64_t end) {
            detail::BfsScratch s;
            for (std::int64_t u = begin; u < end; ++u) {
                auto st = detail::bfs_stats(g, r.n, static_cast<int>(u), s);
                rep.local_diameters[u] = st.reach == r.n ? st.ecc : inf;
                rep.costs[u] = cost_from_bfs(st, r.n, inf, rep.kappa, version);
            }
        },
        threads);
    return rep;
}

} // namespace bbng
