#pragma once

#include "orient/algo_twostage.hpp"
#include "orient/graph.hpp"
#include "orient/report.hpp"
#include "orient/skyline.hpp"

namespace orient {

struct ReinsertionParams {
    WorstCaseParams wc;
    Rational lambda;      // 1 / ceil(log2 n)
    int64_t alpha = 0;    // 3c

    static ReinsertionParams defaults(int64_t c, int n) {
        ReinsertionParams p;
        p.wc = WorstCaseParams::reinsertion_defaults(c, n);
        const int64_t logn = log2_ceil(n);
        p.lambda = Rational(1, logn);
        p.alpha = 3 * c;
        return p;
    }
};

// Reinsertion: up to eta same-size skyline flips release potential; one more
// skyline is 3c-oriented, its high subset is cut out of the graph entirely,
// and the removed edges come back as a recursive insertion batch. The batch
// shrinks by a (1 - lambda) factor per level, so the recursion is shallow;
// the depth guard turns any violation of that into a loud failure.
inline void reinsertion_update_level(OrientedGraph& g, const Batch& b, const ReinsertionParams& p,
                                     UpdateStats& st, int depth, int depth_guard, AlgoHooks* hooks) {
    if (b.empty()) return;
    if (depth >= depth_guard)
        throw Error("reinsertion: recursion depth " + std::to_string(depth) +
                    " hit the guard; shrink invariant broken");
    st.recursion_depth = std::max<int64_t>(st.recursion_depth, depth + 1);
    st.level_batch.push_back(static_cast<int64_t>(b.size()));
    st.begin_run();
    if (hooks) hooks->on_call_begin(b);
    g.apply_batch(b);
    if (hooks) hooks->on_batch_applied();

    const int64_t bsz = static_cast<int64_t>(b.size());
    const int64_t c = g.arboricity_bound();
    const int64_t x = std::min(bsz, g.num_edges());
    if (x == 0) {
        if (hooks) hooks->on_call_end();
        return;
    }

    for (int64_t i = 0; i < p.wc.eta; ++i) {
        auto s = get_demands(g, std::min(x, g.num_edges()));
        st.saw_threshold(s.threshold);
        const bool tall = p.wc.sufficient_height(s.threshold);
        if (hooks) hooks->on_skyline_op(tall, s, tall);
        if (tall) {
            flip_skyline(g, s);
            if (hooks) hooks->on_skyline_op_end();
        } else {
            st.trivial_branch = true;
            auto taken = static_orient_skyline(g, s, c, Rational(1));
            if (hooks) hooks->on_skyline_op_end();
            st.edges_to_static += taken.x;
            if (hooks) hooks->on_call_end();
            return;
        }
    }
    auto s = get_demands(g, std::min(x, g.num_edges()));
    st.saw_threshold(s.threshold);
    const bool short_final = !p.wc.sufficient_height(s.threshold);
    if (hooks) hooks->on_skyline_op(false, s, !short_final);
    auto taken = static_orient_skyline(g, s, c, Rational(1));
    if (hooks) hooks->on_skyline_op_end();
    st.edges_to_static += taken.x;
    if (short_final) {  // oriented first, then the height test — pseudocode order
        st.trivial_branch = true;
        if (hooks) hooks->on_call_end();
        return;
    }

    auto f = high_subset(taken, p.alpha, p.lambda, g.next_seed());
    // exact shrink: |F| <= (1 - lambda) * |B|
    if (Rational(static_cast<int64_t>(f.edges.size())) > (Rational(1) - p.lambda) * Rational(bsz))
        throw Error("reinsertion: high subset failed to shrink (" + std::to_string(f.edges.size()) +
                    " of " + std::to_string(bsz) + ")");

    Batch next;
    next.kind = Batch::Kind::Insert;
    next.edges.reserve(f.edges.size());
    for (EdgeId id : f.edges) next.edges.emplace_back(g.edge(id).u, g.edge(id).v);
    if (!f.edges.empty()) g.remove_edges(f.edges);
    if (hooks) hooks->on_call_end();
    if (!next.edges.empty()) reinsertion_update_level(g, next, p, st, depth + 1, depth_guard, hooks);
}

inline UpdateStats reinsertion_update(OrientedGraph& g, const Batch& b, const ReinsertionParams& p,
                                      AlgoHooks* hooks = nullptr) {
    UpdateStats st;
    st.batch_size = static_cast<int64_t>(b.size());
    const int64_t flips0 = g.total_flips();
    const int guard = static_cast<int>(4 * log2_ceil(static_cast<int64_t>(b.size()) + 2) *
                                       log2_ceil(g.n()));
    reinsertion_update_level(g, b, p, st, 0, std::max(guard, 1), hooks);
    st.flips = g.total_flips() - flips0;
    return st;
}

}  // namespace orient
