#pragma once

#include <vector>

#include "orient/graph.hpp"
#include "orient/static_orient.hpp"

namespace orient {

// A skyline of size x takes, from each vertex, a pop-order prefix of its
// out-edges: everything above T+c' is mandatory, nothing below T may be
// touched, and the slack in (T, T+c'] is distributed to reach exactly x.
// T is the unique multiple of c' with weight_above(T) >= x > weight_above(T+c').
struct SkylineDemands {
    int64_t x = 0;          // total demand (sum over vertices)
    int64_t threshold = 0;  // T
    int64_t cprime = 1;
    std::vector<std::pair<VertexId, int64_t>> demands;        // demand > 0, deterministic order
    std::vector<int64_t> degree_snapshot;                     // d+ of each demanded vertex at computation time
    int64_t weight_above_t = 0;                               // C_T
    int64_t weight_above_tc = 0;                              // C_{T+c'}
    bool empty() const { return x == 0; }
};

namespace skyline_detail {

struct Band {
    int64_t index;   // values in ((index-1)c', index*c']
    int64_t count;
    int64_t excess;  // sum of d - (index-1)c' over members
    int64_t degsum;
    std::vector<std::pair<VertexId, int64_t>> members;  // (vertex, degree), peek order; may be partial
    bool full = false;                                  // members covers the whole band
};

}  // namespace skyline_detail

// Demand computation per the threshold walk: descend nonempty strata (the
// special bag expanded by exact degree), solve empty gaps in closed form,
// then fill the last stratum with c'-sized units from old vertices before
// touching new ones. Read-only on the graph.
inline SkylineDemands get_demands(OrientedGraph& g, int64_t x) {
    SkylineDemands out;
    out.cprime = g.rsl().rounding();
    if (x < 0) throw Error("skyline: negative size");
    if (x == 0) return out;
    if (x > g.num_edges())
        throw Error("skyline: size " + std::to_string(x) + " exceeds available weight " +
                    std::to_string(g.num_edges()));
    out.x = x;
    const RoughlySortedList& rsl = g.rsl();
    const int64_t cp = out.cprime;
    const int m = rsl.main_strata();

    using skyline_detail::Band;
    std::vector<Band> bands;  // descending by index

    // special bag expanded into exact virtual bands
    if (!rsl.special_empty()) {
        auto specials = rsl.peek_stratum(m + 1, rsl.stratum_size(m + 1));
        std::vector<std::pair<VertexId, int64_t>> sv;
        sv.reserve(specials.size());
        for (VertexId v : specials) sv.emplace_back(v, rsl.value(v));
        std::stable_sort(sv.begin(), sv.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        for (size_t i = 0; i < sv.size();) {
            const int64_t band = (sv[i].second + cp - 1) / cp;
            Band b{band, 0, 0, 0, {}, true};
            while (i < sv.size() && (sv[i].second + cp - 1) / cp == band) {
                b.count++;
                b.excess += sv[i].second - (band - 1) * cp;
                b.degsum += sv[i].second;
                b.members.push_back(sv[i]);
                ++i;
            }
            bands.push_back(std::move(b));
        }
    }

    // regular strata, highest first; members peeked lazily below
    for (int s = rsl.top_nonempty(m + 1); s >= 1; s = rsl.top_nonempty(s)) {
        Band b{s, rsl.stratum_size(s), 0, 0, {}, false};
        bands.push_back(std::move(b));
    }

    auto load_members = [&](Band& b, int64_t want) {
        // want < 0 loads everything
        if (b.full) return;
        const int64_t k = want < 0 ? b.count : std::min(b.count, want);
        if (static_cast<int64_t>(b.members.size()) >= k && want >= 0) return;
        auto vs = rsl.peek_stratum(static_cast<int>(b.index), k);
        b.members.clear();
        b.excess = 0;
        b.degsum = 0;
        for (VertexId v : vs) {
            const int64_t d = rsl.value(v);
            b.members.emplace_back(v, d);
            b.excess += d - (b.index - 1) * cp;
            b.degsum += d;
        }
        b.full = static_cast<int64_t>(b.members.size()) == b.count;
    };

    // threshold walk: l = vertices strictly above the current band,
    // degsum_above = their degree total, so C_L = degsum_above - l*L there.
    int64_t l = 0, degsum_above = 0;
    int64_t tfound = INT64_MIN;
    for (size_t bi = 0; bi < bands.size(); ++bi) {
        Band& b = bands[bi];
        // candidates strictly above this band's top
        if (l > 0 && degsum_above - l * (b.index * cp) >= x) {
            int64_t lstar = (degsum_above - x) / l;  // largest real L with C_L >= x
            tfound = (lstar / cp) * cp;              // round down to multiple of c'
            break;
        }
        // candidate at this band's floor
        if (b.count >= x) {
            // each member carries at least 1 above the floor
            tfound = (b.index - 1) * cp;
            break;
        }
        load_members(b, -1);
        if (degsum_above - l * ((b.index - 1) * cp) + b.excess >= x) {
            tfound = (b.index - 1) * cp;
            break;
        }
        l += b.count;
        degsum_above += b.degsum;
    }
    // below every nonempty band, weight is linear in the level down to 0
    if (tfound == INT64_MIN && l > 0 && degsum_above >= x) {
        const int64_t lstar = (degsum_above - x) / l;
        tfound = (lstar / cp) * cp;
    }
    if (tfound == INT64_MIN)
        throw Error("skyline: threshold search exhausted (size exceeds weight)");
    out.threshold = tfound;
    const int64_t T = tfound;

    // old vertices: d > T + c'  (bands with index*c' > T+c', i.e. floor >= T+c')
    // new vertices: d in (T, T+c']  (the band with floor exactly T, if any)
    std::vector<std::pair<VertexId, int64_t>> olds;
    std::vector<std::pair<VertexId, int64_t>> news;
    for (size_t bi = 0; bi < bands.size(); ++bi) {
        Band& b = bands[bi];
        const int64_t floor = (b.index - 1) * cp;
        if (floor > T) {
            load_members(b, -1);
            olds.insert(olds.end(), b.members.begin(), b.members.end());
        } else if (floor == T) {
            // threshold band: each member yields at least 1, so x of them
            // always cover the remainder — no need to touch the whole band
            load_members(b, std::min(b.count, x));
            news.insert(news.end(), b.members.begin(), b.members.end());
        }
        if (floor <= T) break;
    }

    int64_t initial = 0;  // mandatory part: sum of d - T - c' over old vertices
    int64_t collect = 0;  // everything old vertices can give: sum of d - T
    for (const auto& [v, d] : olds) {
        initial += d - T - cp;
        collect += d - T;
    }
    out.weight_above_tc = initial;
    out.weight_above_t = collect;  // lower bound if the threshold band was partially peeked
    for (const auto& [v, d] : news) out.weight_above_t += d - T;
    if (out.weight_above_t < x || out.weight_above_tc >= x)
        throw Error("skyline: induced threshold is inconsistent");

    auto push_demand = [&](VertexId v, int64_t d, int64_t demand) {
        if (demand <= 0) return;
        out.demands.emplace_back(v, demand);
        out.degree_snapshot.push_back(d);
    };

    if (collect >= x) {
        // oldDemands: mandatory first, then whole c' units, then one remainder
        const int64_t left = x - initial;
        const int64_t num_take = left / cp;
        const int64_t last_rem = left % cp;
        for (size_t i = 0; i < olds.size(); ++i) {
            const auto& [v, d] = olds[i];
            int64_t demand = d - T - cp;
            if (static_cast<int64_t>(i) < num_take)
                demand += cp;
            else if (static_cast<int64_t>(i) == num_take)
                demand += last_rem;
            push_demand(v, d, demand);
        }
    } else {
        // newDemands: old vertices fully, the rest from the threshold band
        for (const auto& [v, d] : olds) push_demand(v, d, d - T);
        int64_t left = x - collect;
        for (const auto& [v, d] : news) {
            if (left <= 0) break;
            const int64_t take = std::min(left, d - T);
            push_demand(v, d, take);
            left -= take;
        }
        if (left > 0) throw Error("skyline: demand fill fell short");
    }
    return out;
}

// Well-formedness per the size definition, checked against a degree snapshot
// of the whole graph taken just before extraction.
inline void check_skyline_wellformed(const SkylineDemands& s, const std::vector<int64_t>& degrees) {
    if (s.empty()) return;
    const int64_t T = s.threshold, cp = s.cprime;
    if (T % cp != 0) throw Error("skyline check: threshold not a multiple of the rounding");
    int64_t ct = 0, ctc = 0;
    for (int64_t d : degrees) {
        ct += std::max<int64_t>(0, d - T);
        ctc += std::max<int64_t>(0, d - T - cp);
    }
    if (!(ct >= s.x && ctc < s.x)) throw Error("skyline check: threshold not induced by the size");
    std::vector<int64_t> demand(degrees.size(), 0);
    int64_t total = 0;
    for (size_t i = 0; i < s.demands.size(); ++i) {
        demand[s.demands[i].first] = s.demands[i].second;
        total += s.demands[i].second;
    }
    if (total != s.x) throw Error("skyline check: demands do not sum to the size");
    for (size_t v = 0; v < degrees.size(); ++v) {
        const int64_t lo = std::max<int64_t>(0, degrees[v] - T - cp);
        const int64_t hi = std::max<int64_t>(0, degrees[v] - T);
        if (demand[v] < lo || demand[v] > hi)
            throw Error("skyline check: demand out of range at vertex " + std::to_string(v));
    }
}

struct SkylineTaken {
    int64_t threshold = 0;
    int64_t x = 0;
    int64_t flips = 0;
    // edges in deterministic order: per final tail, popped-from-self edges in
    // pop order first, then edges reoriented here by the pass
    std::vector<std::pair<EdgeId, VertexId>> edges;  // (edge, final tail)
};

// Pop the demanded prefixes and reverse every edge taken.
inline SkylineTaken flip_skyline(OrientedGraph& g, const SkylineDemands& s) {
    SkylineTaken taken;
    taken.threshold = s.threshold;
    taken.x = s.x;
    if (s.empty()) return taken;
    const bool outer = !g.step_open();
    if (outer) g.begin_degree_step();
    auto popped = g.pop_out_edges(s.demands);
    std::vector<std::pair<VertexId, EdgeId>> by_new;
    by_new.reserve(popped.size());
    for (const auto& p : popped) {
        const VertexId nt = g.edge(p.id).other(p.from);
        g.log_flip(p.id, p.from, nt);
        by_new.emplace_back(nt, p.id);
        taken.edges.emplace_back(p.id, nt);
    }
    // commit new tails, then reinsert into the new owners' back bags
    for (const auto& [nt, id] : by_new) g.set_tail(id, nt);
    g.insert_out_back(by_new);
    std::vector<EdgeId> ids;
    ids.reserve(popped.size());
    for (const auto& p : popped) ids.push_back(p.id);
    g.clear_prev_tail(ids);
    taken.flips = static_cast<int64_t>(popped.size());
    if (outer) g.finish_degree_step();
    return taken;
}

// Pop the demanded prefixes, statically (2+eps)c-orient the extracted
// subgraph, flip only the edges whose direction changed; unchanged edges go
// back into the same front bags they came from.
inline SkylineTaken static_orient_skyline(OrientedGraph& g, const SkylineDemands& s, int64_t c,
                                          const Rational& eps) {
    SkylineTaken taken;
    taken.threshold = s.threshold;
    taken.x = s.x;
    if (s.empty()) return taken;
    const bool outer = !g.step_open();
    if (outer) g.begin_degree_step();
    auto popped = g.pop_out_edges(s.demands);
    std::vector<std::pair<VertexId, VertexId>> pairs;
    pairs.reserve(popped.size());
    for (const auto& p : popped) pairs.emplace_back(g.edge(p.id).u, g.edge(p.id).v);
    const auto oriented = static_orientation(pairs, c, eps, g.next_seed());

    std::vector<std::pair<VertexId, EdgeId>> unchanged, changed;
    for (size_t i = 0; i < popped.size(); ++i) {
        const EdgeId id = popped[i].id;
        const VertexId was = popped[i].from;
        const VertexId now = oriented.tails[i];
        if (now == was) {
            unchanged.emplace_back(was, id);
        } else {
            g.log_flip(id, was, now);
            g.set_tail(id, now);
            changed.emplace_back(now, id);
            ++taken.flips;
        }
    }
    g.insert_out_front(unchanged);
    g.insert_out_back(changed);
    for (const auto& [v, id] : unchanged) taken.edges.emplace_back(id, v);
    for (const auto& [v, id] : changed) taken.edges.emplace_back(id, v);
    std::vector<EdgeId> ids;
    ids.reserve(popped.size());
    for (const auto& p : popped) ids.push_back(p.id);
    g.clear_prev_tail(ids);
    if (outer) g.finish_degree_step();
    return taken;
}

// spec-shaped wrappers
inline SkylineTaken flip_skyline(OrientedGraph& g, int64_t x) { return flip_skyline(g, get_demands(g, x)); }
inline SkylineTaken static_orient_skyline(OrientedGraph& g, int64_t x, int64_t c, const Rational& eps) {
    return static_orient_skyline(g, get_demands(g, x), c, eps);
}

struct HighSubset {
    std::vector<EdgeId> edges;
    int64_t per_vertex_cap = 0;  // floor(alpha*lambda)
};

// (alpha, lambda)-high subset of an oriented skyline: per vertex, the deepest
// max(0, d_S - ceil(alpha*lambda)) of its in-skyline out-edges. The ceiling
// keeps |F| <= (1-lambda)|S| in integers (a floor cap of 0 would take whole
// skylines and break the recursion's shrink). Precondition: every in-skyline
// out-degree is at most alpha.
inline HighSubset high_subset(const SkylineTaken& s, int64_t alpha, const Rational& lambda,
                              uint64_t seed) {
    HighSubset f;
    f.per_vertex_cap = (lambda * Rational(alpha)).ceil();
    std::vector<std::pair<VertexId, EdgeId>> by_tail;
    by_tail.reserve(s.edges.size());
    for (const auto& [id, tail] : s.edges) by_tail.emplace_back(tail, id);
    for (const auto& gr : prims::semisort_group(by_tail, splitmix64(seed))) {
        const int64_t d = static_cast<int64_t>(gr.values.size());
        if (d > alpha)
            throw Error("high subset: vertex " + std::to_string(gr.key) + " has in-skyline out-degree " +
                        std::to_string(d) + " > alpha " + std::to_string(alpha));
        const int64_t take = std::max<int64_t>(0, d - f.per_vertex_cap);
        for (int64_t i = d - take; i < d; ++i) f.edges.push_back(gr.values[i]);
    }
    return f;
}

// Verification hook points the worst-case algorithms announce themselves on;
// production runs pass nullptr.
struct AlgoHooks {
    virtual ~AlgoHooks() = default;
    virtual void on_call_begin(const Batch& /*b*/) {}
    virtual void on_batch_applied() {}
    // fired just before a skyline operation mutates the graph
    virtual void on_skyline_op(bool /*is_flip*/, const SkylineDemands& /*s*/, bool /*sufficient*/) {}
    virtual void on_skyline_op_end() {}
    virtual void on_call_end() {}
};

}  // namespace orient
