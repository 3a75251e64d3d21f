#pragma once

#include <memory>
#include <vector>

#include "orient/graph.hpp"
#include "orient/report.hpp"
#include "orient/skyline.hpp"
#include "orient/static_orient.hpp"

namespace orient {

// Thresholds for the amortized algorithm. tau is the cutoff above which a
// vertex's out-edges are sent to static orientation; tau_prime = (2+eps)c is
// what static orientation guarantees; tau_star is the offline bound used in
// the accounting. Post-update out-degrees never exceed tau + tau_prime,
// which the default instantiation makes exactly 7c.
struct AmortizedParams {
    Rational tau_star, tau_prime, tau;
    Rational eps;  // tau_prime / c - 2, so (2+eps)c == tau_prime

    static AmortizedParams defaults(int64_t c) {
        AmortizedParams p;
        p.tau_star = Rational(6 * c, 5);
        p.tau_prime = Rational(11 * c, 5);
        p.tau = p.tau_star * Rational(2) + p.tau_prime + Rational(c, 5);
        p.eps = Rational(1, 5);
        return p;
    }

    static AmortizedParams make(int64_t c, Rational tau_star, Rational tau_prime, Rational tau) {
        AmortizedParams p;
        p.tau_star = tau_star;
        p.tau_prime = tau_prime;
        p.tau = tau;
        p.eps = tau_prime / Rational(c) - Rational(2);
        p.validate(c);
        return p;
    }

    void validate(int64_t c) const {
        const Rational rc(c);
        if (!(tau_star > rc) || !(tau_prime > rc) || !(tau > rc))
            throw Error("amortized params: thresholds must exceed the arboricity bound");
        if (!(tau > tau_star * Rational(2) + tau_prime - Rational(1)))
            throw Error("amortized params: need tau > 2*tau_star + tau_prime - 1");
        if (!(eps > Rational(0)) || eps > Rational(2))
            throw Error("amortized params: static quality eps out of (0,2]");
    }

    Rational bound() const { return tau + tau_prime; }  // 7c at defaults
};

// Insert arbitrarily, then statically reorient all out-edges of vertices that
// ended up above the cutoff. Deletes just delete.
class AmortizedAlgo {
public:
    AmortizedAlgo(OrientedGraph& g, AmortizedParams p) : g_(g), p_(p) {
        p_.validate(g.arboricity_bound());
        vlow_ = std::make_unique<Bag<VertexId>>();
        vhigh_ = std::make_unique<Bag<VertexId>>();
        side_.assign(g.n(), 0);
        handle_.resize(g.n());
        std::vector<VertexId> all(g.n());
        for (int v = 0; v < g.n(); ++v) all[v] = v;
        auto hs = vlow_->batch_insert(all);
        for (int v = 0; v < g.n(); ++v) handle_[v] = hs[v];
    }

    int64_t high_count() const { return vhigh_->size(); }

    bool is_high(VertexId v) const { return side_[v] == 1; }

    UpdateStats update(const Batch& b) {
        UpdateStats st;
        st.batch_size = static_cast<int64_t>(b.size());
        const int64_t flips0 = g_.total_flips();
        if (b.kind == Batch::Kind::Insert) {
            auto ids = g_.apply_batch(b);
            refresh_partition(endpoints_of(ids));

            // collect every out-edge of every high vertex
            std::vector<std::pair<VertexId, int64_t>> demands;
            for (VertexId v : vhigh_->peek(vhigh_->size())) demands.emplace_back(v, g_.out_degree(v));
            if (!demands.empty()) {
                SkylineDemands all;
                all.cprime = g_.rsl().rounding();
                all.threshold = 0;
                for (const auto& [v, k] : demands) {
                    all.x += k;
                    all.demands.emplace_back(v, k);
                    all.degree_snapshot.push_back(k);
                }
                st.edges_to_static = all.x;
                auto taken = static_orient_skyline(g_, all, g_.arboricity_bound(), p_.eps);
                std::vector<VertexId> touched;
                touched.reserve(taken.edges.size() * 2);
                for (const auto& [id, tail] : taken.edges) {
                    touched.push_back(g_.edge(id).u);
                    touched.push_back(g_.edge(id).v);
                }
                refresh_partition(touched);
            }
        } else {
            auto ids = endpoints_of_pairs(b.edges);
            g_.apply_batch(b);
            refresh_partition(ids);
        }
        st.flips = g_.total_flips() - flips0;
        return st;
    }

private:
    OrientedGraph& g_;
    AmortizedParams p_;
    std::unique_ptr<Bag<VertexId>> vlow_, vhigh_;
    std::vector<char> side_;  // 0 low, 1 high
    std::vector<Bag<VertexId>::Handle> handle_;

    std::vector<VertexId> endpoints_of(const std::vector<EdgeId>& ids) const {
        std::vector<VertexId> out;
        out.reserve(ids.size() * 2);
        for (EdgeId id : ids) {
            out.push_back(g_.edge(id).u);
            out.push_back(g_.edge(id).v);
        }
        return out;
    }

    static std::vector<VertexId> endpoints_of_pairs(const std::vector<std::pair<VertexId, VertexId>>& ps) {
        std::vector<VertexId> out;
        out.reserve(ps.size() * 2);
        for (const auto& [a, b] : ps) {
            out.push_back(a);
            out.push_back(b);
        }
        return out;
    }

    // move only the vertices whose side changed
    void refresh_partition(const std::vector<VertexId>& candidates) {
        auto uniq = prims::remove_duplicates(candidates, g_.next_seed());
        std::vector<VertexId> to_high, to_low;
        std::vector<Bag<VertexId>::Handle> from_low, from_high;
        for (VertexId v : uniq) {
            const bool high = Rational(g_.out_degree(v)) > p_.tau;
            if (high && side_[v] == 0) {
                to_high.push_back(v);
                from_low.push_back(handle_[v]);
            } else if (!high && side_[v] == 1) {
                to_low.push_back(v);
                from_high.push_back(handle_[v]);
            }
        }
        if (!from_low.empty()) vlow_->batch_delete(from_low);
        if (!from_high.empty()) vhigh_->batch_delete(from_high);
        if (!to_high.empty()) {
            auto hs = vhigh_->batch_insert(to_high);
            for (size_t i = 0; i < to_high.size(); ++i) {
                handle_[to_high[i]] = hs[i];
                side_[to_high[i]] = 1;
            }
        }
        if (!to_low.empty()) {
            auto hs = vlow_->batch_insert(to_low);
            for (size_t i = 0; i < to_low.size(); ++i) {
                handle_[to_low[i]] = hs[i];
                side_[to_low[i]] = 0;
            }
        }
    }
};

}  // namespace orient
