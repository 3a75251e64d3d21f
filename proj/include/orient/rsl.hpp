#pragma once

#include <bit>
#include <memory>
#include <tuple>
#include <vector>

#include "orient/bag.hpp"
#include "orient/common.hpp"
#include "orient/prims.hpp"

namespace orient {

// Vertices bucketed by value (out-degree) rounded to multiples of c'.
// Stratum 0 holds value 0, stratum i in [1,M] holds values in ((i-1)c', ic'],
// and stratum M+1 is the special bag for anything above Mc'. An occupancy
// bitmask (one bit per stratum, multiple words so M is unconstrained) lets
// prefix walks skip empty strata.
class RoughlySortedList {
public:
    RoughlySortedList(int n, int64_t cprime, int m)
        : n_(n), cprime_(cprime), m_(m), value_(n, 0), handle_(n) {
        if (cprime_ < 1) throw Error("RSL: rounding must be positive");
        if (m_ < 1) throw Error("RSL: need at least one main stratum");
        strata_.resize(m_ + 2);
        for (auto& s : strata_) s = std::make_unique<Bag<VertexId>>();
        occupancy_.assign((m_ + 2 + 63) / 64, 0);
        std::vector<VertexId> all(n);
        for (int v = 0; v < n; ++v) all[v] = v;
        auto hs = strata_[0]->batch_insert(all);
        for (int v = 0; v < n; ++v) handle_[v] = hs[v];
        if (n > 0) set_bit(0);
        dedupe_.resize(n);
    }

    int64_t rounding() const { return cprime_; }
    int main_strata() const { return m_; }
    int tracked() const { return n_; }
    int64_t value(VertexId v) const { return value_[v]; }

    int stratum_of(int64_t val) const {
        if (val == 0) return 0;
        if (val > static_cast<int64_t>(m_) * cprime_) return m_ + 1;
        return static_cast<int>((val + cprime_ - 1) / cprime_);
    }

    int64_t stratum_size(int i) const { return strata_[i]->size(); }
    bool special_empty() const { return strata_[m_ + 1]->empty(); }

    std::vector<VertexId> peek_stratum(int i, int64_t k) const { return strata_[i]->peek(k); }

    // highest nonempty stratum index strictly below `below`, or -1
    int top_nonempty(int below) const {
        if (below > m_ + 2) below = m_ + 2;
        if (below <= 0) return -1;
        int word = (below - 1) / 64;
        int bit = (below - 1) % 64;
        uint64_t w = occupancy_[word] & (bit == 63 ? ~uint64_t(0) : ((uint64_t(1) << (bit + 1)) - 1));
        while (true) {
            if (w != 0) return word * 64 + 63 - std::countl_zero(w);
            if (--word < 0) return -1;
            w = occupancy_[word];
        }
    }

    void batch_update(const std::vector<std::tuple<VertexId, int64_t, int64_t>>& updates) {
        if (updates.empty()) return;
        dedupe_.clear();
        std::vector<std::pair<int, size_t>> moves;  // (old stratum, update index)
        for (size_t i = 0; i < updates.size(); ++i) {
            const auto& [v, oldv, newv] = updates[i];
            if (v < 0 || v >= n_) throw Error("RSL: unknown vertex " + std::to_string(v));
            if (!dedupe_.insert(static_cast<size_t>(v)))
                throw Error("RSL: duplicate vertex " + std::to_string(v) + " in batch update");
            if (value_[v] != oldv)
                throw Error("RSL: stale value for vertex " + std::to_string(v) + " (stored " +
                            std::to_string(value_[v]) + ", claimed " + std::to_string(oldv) + ")");
            if (newv < 0) throw Error("RSL: negative value for vertex " + std::to_string(v));
            const int so = stratum_of(oldv);
            const int sn = stratum_of(newv);
            value_[v] = newv;
            if (so != sn) moves.emplace_back(so, i);
        }
        if (moves.empty()) return;
        // group per source stratum for the deletes, then per target for inserts
        for (const auto& g : prims::semisort_group(moves, seed_next())) {
            std::vector<typename Bag<VertexId>::Handle> hs;
            hs.reserve(g.values.size());
            for (size_t idx : g.values) hs.push_back(handle_[std::get<0>(updates[idx])]);
            strata_[g.key]->batch_delete(hs);
            if (strata_[g.key]->empty()) clear_bit(g.key);
        }
        std::vector<std::pair<int, VertexId>> ins;
        ins.reserve(moves.size());
        for (const auto& [so, idx] : moves) {
            const VertexId v = std::get<0>(updates[idx]);
            ins.emplace_back(stratum_of(value_[v]), v);
        }
        for (const auto& g : prims::semisort_group(ins, seed_next())) {
            auto hs = strata_[g.key]->batch_insert(g.values);
            for (size_t t = 0; t < g.values.size(); ++t) handle_[g.values[t]] = hs[t];
            set_bit(g.key);
        }
    }

    // Size-w banded-dominance prefix: whole strata from the top; the lowest
    // stratum is only partially used, so its members are emitted in
    // descending rounded-value order (stable on peek order) — a stratum
    // spans two rounded values at exact multiples of c'. No mutation.
    std::vector<VertexId> prefix(int64_t w) const {
        if (w < 0 || w > n_) throw Error("RSL: prefix of " + std::to_string(w) + " from " + std::to_string(n_));
        std::vector<VertexId> out;
        out.reserve(static_cast<size_t>(w));
        int s = m_ + 2;
        while (w > 0) {
            s = top_nonempty(s);
            if (s < 0) throw Error("RSL: prefix ran out of vertices");
            const int64_t sz = strata_[s]->size();
            if (sz <= w) {
                const auto whole = strata_[s]->peek(sz);
                out.insert(out.end(), whole.begin(), whole.end());
                w -= sz;
            } else {
                auto members = strata_[s]->peek(sz);
                std::stable_sort(members.begin(), members.end(), [&](VertexId a, VertexId b) {
                    return (value_[a] / cprime_) > (value_[b] / cprime_);
                });
                out.insert(out.end(), members.begin(), members.begin() + w);
                w = 0;
            }
        }
        return out;
    }

private:
    int n_;
    int64_t cprime_;
    int m_;
    std::vector<std::unique_ptr<Bag<VertexId>>> strata_;
    std::vector<uint64_t> occupancy_;
    std::vector<int64_t> value_;
    std::vector<typename Bag<VertexId>::Handle> handle_;
    StampSet dedupe_;
    uint64_t seed_state_ = 0x5eedba6ULL;

    uint64_t seed_next() { return seed_state_ = splitmix64(seed_state_); }

    void set_bit(int i) { occupancy_[i / 64] |= uint64_t(1) << (i % 64); }
    void clear_bit(int i) { occupancy_[i / 64] &= ~(uint64_t(1) << (i % 64)); }
};

}  // namespace orient
