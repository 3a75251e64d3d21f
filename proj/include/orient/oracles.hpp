#pragma once

#include <bit>
#include <queue>
#include <vector>

#include "orient/common.hpp"

// Ground-truth oracles for test and verification use only; both carry hard
// size guards because they do exact (flow / exponential) computation.

namespace orient::oracles {

namespace detail {

// Dinic's max flow on a small unit-ish network.
class Dinic {
public:
    explicit Dinic(int n) : head_(n, -1), level_(n), it_(n) {}

    void add_edge(int a, int b, int64_t cap) {
        es_.push_back({b, head_[a], cap});
        head_[a] = static_cast<int>(es_.size()) - 1;
        es_.push_back({a, head_[b], 0});
        head_[b] = static_cast<int>(es_.size()) - 1;
    }

    int64_t max_flow(int s, int t) {
        int64_t flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            while (int64_t f = dfs(s, t, INT64_MAX)) flow += f;
        }
        return flow;
    }

private:
    struct E {
        int to, next;
        int64_t cap;
    };
    std::vector<int> head_, level_, it_;
    std::vector<E> es_;

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[u]; e >= 0; e = es_[e].next)
                if (es_[e].cap > 0 && level_[es_[e].to] < 0) {
                    level_[es_[e].to] = level_[u] + 1;
                    q.push(es_[e].to);
                }
        }
        return level_[t] >= 0;
    }

    int64_t dfs(int u, int t, int64_t lim) {
        if (u == t || lim == 0) return lim;
        for (int& e = it_[u]; e >= 0; e = es_[e].next) {
            if (es_[e].cap > 0 && level_[es_[e].to] == level_[u] + 1) {
                int64_t f = dfs(es_[e].to, t, std::min(lim, es_[e].cap));
                if (f > 0) {
                    es_[e].cap -= f;
                    es_[e ^ 1].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }
};

}  // namespace detail

// An orientation with max out-degree <= k exists iff assigning each edge to
// one endpoint with vertex capacity k saturates every edge.
inline bool orientation_feasible(const std::vector<std::pair<VertexId, VertexId>>& edges, int n, int64_t k) {
    const int m = static_cast<int>(edges.size());
    detail::Dinic d(2 + m + n);
    const int s = 0, t = 1;
    for (int i = 0; i < m; ++i) {
        d.add_edge(s, 2 + i, 1);
        d.add_edge(2 + i, 2 + m + edges[i].first, 1);
        d.add_edge(2 + i, 2 + m + edges[i].second, 1);
    }
    for (int v = 0; v < n; ++v) d.add_edge(2 + m + v, t, k);
    return d.max_flow(s, t) == m;
}

// Exact minimum achievable maximum out-degree, by binary search on the
// feasibility check above.
inline int64_t min_max_outdegree(const std::vector<std::pair<VertexId, VertexId>>& edges, int n) {
    if (edges.size() > 10000) throw Error("min_max_outdegree oracle: too many edges");
    if (edges.empty()) return 0;
    int64_t lo = 1, hi = static_cast<int64_t>(edges.size());
    while (lo < hi) {
        const int64_t mid = (lo + hi) / 2;
        if (orientation_feasible(edges, n, mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// max over subsets S (|S| >= 2) of ceil(|E(S)| / (|S|-1)); exponential scan.
inline int64_t arboricity(const std::vector<std::pair<VertexId, VertexId>>& edges, int n) {
    if (n > 15) throw Error("arboricity oracle: too many vertices");
    if (edges.empty()) return 0;
    int64_t best = 0;
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
        const int sz = std::popcount(mask);
        if (sz < 2) continue;
        int64_t inside = 0;
        for (const auto& [u, v] : edges)
            if ((mask >> u & 1) && (mask >> v & 1)) ++inside;
        if (inside == 0) continue;
        best = std::max(best, (inside + sz - 2) / (sz - 1));
    }
    return best;
}

}  // namespace orient::oracles
