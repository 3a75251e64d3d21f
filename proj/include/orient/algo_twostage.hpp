#pragma once

#include "orient/graph.hpp"
#include "orient/report.hpp"
#include "orient/skyline.hpp"

namespace orient {

// Shared knobs of the worst-case algorithms. delta/sigma describe the offline
// strategy assumed by the accounting, eps is the potential released per high
// flip, and eta = ceil(1 + 1/eps + 2*sigma) sizes the skylines.
struct WorstCaseParams {
    int64_t delta = 0;
    int64_t sigma = 0;
    Rational eps;
    int64_t eta = 0;
    int64_t cprime = 1;  // rounding of the RSL and every skyline
    int m = 1;           // main strata in the RSL

    static int64_t compute_eta(const Rational& eps, int64_t sigma) {
        return (Rational(1) + Rational(1) / eps + Rational(2 * sigma)).ceil();
    }

    void validate() const {
        if (!(eps > Rational(0)) || !(eps < Rational(1)))
            throw Error("worst-case params: eps must be in (0,1)");
        if (delta < 1 || sigma < 1 || eta < 1 || cprime < 1)
            throw Error("worst-case params: counts must be positive");
    }

    // strata to cover degree bound z with rounding cp
    static int strata_for(int64_t z, int64_t cp) {
        return static_cast<int>((z + cp - 1) / cp) + 2;
    }

    static WorstCaseParams twostage_defaults(int64_t c, int n) {
        const int64_t logn = log2_ceil(n);
        int64_t root = 1;
        while (root * root < logn) ++root;  // ceil(sqrt(log n))
        WorstCaseParams p;
        p.sigma = root;
        p.eps = Rational(1, root);
        p.delta = std::max<int64_t>(3 * c, c * root);
        p.eta = compute_eta(p.eps, p.sigma);
        p.cprime = c;
        const int64_t z = 8 * p.delta + (5 * c + (p.eps * Rational(p.delta)).ceil() + 1) * 4 * (logn + 2);
        p.m = strata_for(z, p.cprime);
        p.validate();
        return p;
    }

    static WorstCaseParams reinsertion_defaults(int64_t c, int n) {
        const int64_t logn = log2_ceil(n);
        WorstCaseParams p;
        p.sigma = logn;
        p.eps = Rational(1, logn == 1 ? 2 : logn);
        p.delta = 3 * c;
        p.eta = compute_eta(p.eps, p.sigma);
        p.cprime = (c + logn - 1) / logn;
        const int64_t z = 8 * p.delta + (5 * p.cprime + (p.eps * Rational(p.delta)).ceil() + 1) * 4 * (logn + 2);
        p.m = strata_for(z, p.cprime);
        p.validate();
        return p;
    }

    bool sufficient_height(int64_t threshold) const { return threshold >= 4 * delta; }
};

// Two-Stage: apply the batch, flip one skyline of size |B|*eta to release
// potential, then statically 3c-orient a second skyline of the same size to
// cap the damage. A first skyline below 4*delta is just 3c-oriented instead.
inline UpdateStats two_stage_update(OrientedGraph& g, const Batch& b, const WorstCaseParams& p,
                                    AlgoHooks* hooks = nullptr) {
    UpdateStats st;
    st.batch_size = static_cast<int64_t>(b.size());
    const int64_t flips0 = g.total_flips();
    if (hooks) hooks->on_call_begin(b);
    g.apply_batch(b);
    if (hooks) hooks->on_batch_applied();
    if (b.empty()) {
        if (hooks) hooks->on_call_end();
        return st;
    }

    const int64_t want = static_cast<int64_t>(b.size()) * p.eta;
    const int64_t x = std::min(want, g.num_edges());
    const int64_t c = g.arboricity_bound();

    if (x > 0) {
        auto s1 = get_demands(g, x);
        st.saw_threshold(s1.threshold);
        if (!p.sufficient_height(s1.threshold)) {
            st.trivial_branch = true;
            if (hooks) hooks->on_skyline_op(false, s1, false);
            auto taken = static_orient_skyline(g, s1, c, Rational(1));
            if (hooks) hooks->on_skyline_op_end();
            st.edges_to_static += taken.x;
        } else {
            if (hooks) hooks->on_skyline_op(true, s1, true);
            flip_skyline(g, s1);
            if (hooks) hooks->on_skyline_op_end();
            auto s2 = get_demands(g, std::min(x, g.num_edges()));
            st.saw_threshold(s2.threshold);
            if (hooks) hooks->on_skyline_op(false, s2, p.sufficient_height(s2.threshold));
            auto taken = static_orient_skyline(g, s2, c, Rational(1));
            if (hooks) hooks->on_skyline_op_end();
            st.edges_to_static += taken.x;
        }
    }
    st.flips = g.total_flips() - flips0;
    if (hooks) hooks->on_call_end();
    return st;
}

}  // namespace orient
