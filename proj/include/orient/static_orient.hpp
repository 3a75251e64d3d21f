#pragma once

#include <unordered_map>
#include <vector>

#include "orient/common.hpp"
#include "orient/prims.hpp"

namespace orient {

struct StaticOrientResult {
    std::vector<VertexId> tails;          // per input edge
    std::vector<int64_t> round_survivors; // remaining edges after each round
    int rounds = 0;
};

// Peeling orientation: each round marks every vertex whose remaining degree
// is at most (2+eps)*c, orients the edges of marked vertices away from them
// (lower id wins when both ends are marked), and deletes those edges. The
// degree threshold is compared in exact rational arithmetic.
//
// Requires the subgraph induced on `edges` to have arboricity <= c; if a
// round strands every vertex above threshold the precondition is broken and
// we fail loudly rather than loop.
inline StaticOrientResult static_orientation(const std::vector<std::pair<VertexId, VertexId>>& edges,
                                             int64_t c, const Rational& eps, uint64_t seed) {
    if (c < 1) throw Error("static orientation: arboricity bound must be >= 1");
    if (!(eps > Rational(0)) || eps > Rational(2))
        throw Error("static orientation: eps must be in (0, 2]");

    StaticOrientResult res;
    res.tails.assign(edges.size(), -1);
    if (edges.empty()) return res;

    // local dense ids keep per-round work proportional to the subgraph
    std::vector<VertexId> verts;
    {
        std::vector<VertexId> endpoints;
        endpoints.reserve(edges.size() * 2);
        for (const auto& [u, v] : edges) {
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
        verts = prims::remove_duplicates(endpoints, splitmix64(seed));
    }
    std::unordered_map<VertexId, int> local;
    local.reserve(verts.size() * 2);
    for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);

    std::vector<int32_t> active(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) active[i] = static_cast<int32_t>(i);

    // marking predicate: d <= (2+eps)*c, cross-multiplied
    const __int128 rhs = (static_cast<__int128>(2) * eps.den + eps.num) * c;

    std::vector<int64_t> deg(verts.size());
    std::vector<char> marked(verts.size());
    uint64_t round_seed = seed;

    while (!active.empty()) {
        ++res.rounds;
        if (res.rounds > 64 + 4 * static_cast<int>(log2_ceil(static_cast<int64_t>(edges.size()) + 2)))
            throw Error("static orientation: round guard tripped (arboricity bound violated?)");
        std::fill(deg.begin(), deg.end(), 0);
        std::fill(marked.begin(), marked.end(), 0);

        std::vector<std::pair<int, int32_t>> directed;
        directed.reserve(active.size() * 2);
        for (int32_t ei : active) {
            directed.emplace_back(local[edges[ei].first], ei);
            directed.emplace_back(local[edges[ei].second], ei);
        }
        round_seed = splitmix64(round_seed);
        auto groups = prims::semisort_group(directed, round_seed);
        for (const auto& g : groups) deg[g.key] = static_cast<int64_t>(g.values.size());

        bool any = false;
        for (const auto& g : groups) {
            if (static_cast<__int128>(deg[g.key]) * eps.den <= rhs) {
                marked[g.key] = 1;
                any = true;
            }
        }
        if (!any)
            throw Error("static orientation: no vertex below threshold; arboricity bound violated");

        std::vector<int32_t> next;
        for (int32_t ei : active) {
            const VertexId u = edges[ei].first, v = edges[ei].second;
            const bool mu = marked[local[u]], mv = marked[local[v]];
            if (!mu && !mv) {
                next.push_back(ei);
                continue;
            }
            if (mu && (!mv || u < v))
                res.tails[ei] = u;
            else
                res.tails[ei] = v;
            touch();
        }
        active.swap(next);
        res.round_survivors.push_back(static_cast<int64_t>(active.size()));
    }
    return res;
}

namespace detail {

// little-endian base-2^64 natural number, just enough for exact pow compares
struct BigNat {
    std::vector<uint64_t> w;

    explicit BigNat(uint64_t x) : w{x} {}

    void mul_small(uint64_t m) {
        unsigned __int128 carry = 0;
        for (auto& d : w) {
            unsigned __int128 p = static_cast<unsigned __int128>(d) * m + carry;
            d = static_cast<uint64_t>(p);
            carry = p >> 64;
        }
        while (carry) {
            w.push_back(static_cast<uint64_t>(carry));
            carry >>= 64;
        }
    }

    bool operator>=(const BigNat& o) const {
        size_t a = w.size(), b = o.w.size();
        while (a > 0 && w[a - 1] == 0) --a;
        while (b > 0 && o.w[b - 1] == 0) --b;
        if (a != b) return a > b;
        for (size_t i = a; i-- > 0;)
            if (w[i] != o.w[i]) return w[i] > o.w[i];
        return true;
    }
};

}  // namespace detail

// ceil(log_{(2+eps)/2}(2m)) + 1, evaluated exactly: the smallest r with
// (2*den+num)^r >= 2m * (2*den)^r, plus one.
inline int static_orient_round_bound(int64_t m, const Rational& eps) {
    if (m <= 0) return 1;
    const uint64_t a = static_cast<uint64_t>(2 * eps.den + eps.num);
    const uint64_t b = static_cast<uint64_t>(2 * eps.den);
    detail::BigNat lhs(1), rhs(static_cast<uint64_t>(2 * m));
    int r = 0;
    while (!(lhs >= rhs)) {
        lhs.mul_small(a);
        rhs.mul_small(b);
        ++r;
        if (r > 100000) throw Error("round bound: ratio too close to 1");
    }
    return r + 1;
}

}  // namespace orient
