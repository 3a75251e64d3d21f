#pragma once

#include <optional>
#include <vector>

#include "orient/common.hpp"

// The batch counter game: n nonnegative weights, moves parameterized by a
// threshold T with cap H. A legal T-move may rearrange or discard weight
// sitting above T, but cannot take from below T, cannot create weight, and
// cannot push any counter above T + H. All arithmetic is exact rational.

namespace orient::counter {

using State = std::vector<Rational>;

struct Violation {
    int rule = 0;    // 1..3
    int index = -1;  // offending counter, -1 for aggregate rules
};

inline std::optional<Violation> check_move(const State& u, const State& u2, const Rational& t,
                                           const Rational& h) {
    if (u.size() != u2.size()) throw Error("counter game: state length mismatch");
    for (size_t i = 0; i < u.size(); ++i) {
        const Rational floor = u[i] < t ? u[i] : t;
        if (u2[i] < floor) return Violation{1, static_cast<int>(i)};
    }
    Rational s1(0), s2(0);
    for (const auto& x : u) s1 = s1 + x;
    for (const auto& x : u2) s2 = s2 + x;
    if (s2 > s1) return Violation{2, -1};
    const Rational cap = t + h;
    for (size_t i = 0; i < u2.size(); ++i)
        if (u2[i] > cap) return Violation{3, static_cast<int>(i)};
    return std::nullopt;
}

inline bool is_legal_move(const State& u, const State& u2, const Rational& t, const Rational& h) {
    return !check_move(u, u2, t, h).has_value();
}

inline Rational weight_above(const State& u, const Rational& level) {
    Rational s(0);
    for (const auto& x : u)
        if (x > level) s = s + (x - level);
    return s;
}

struct Move {
    Rational threshold;
    State after;
};

struct GameSequence {
    State start;
    std::vector<Move> moves;

    const State& state_at(size_t t) const { return t == 0 ? start : moves[t - 1].after; }
    const State& final_state() const { return moves.empty() ? start : moves.back().after; }
};

inline void validate_sequence(const GameSequence& seq, const Rational& h) {
    const State* cur = &seq.start;
    for (size_t i = 0; i < seq.moves.size(); ++i) {
        if (auto v = check_move(*cur, seq.moves[i].after, seq.moves[i].threshold, h))
            throw Error("counter game: illegal move " + std::to_string(i) + " breaks R" +
                        std::to_string(v->rule) +
                        (v->index >= 0 ? " at counter " + std::to_string(v->index) : ""));
        cur = &seq.moves[i].after;
    }
}

// Repeatedly replace the first threshold dip (T1 < T2, T2 >= T3) by the
// direct move u2 ->_{T3} u4, yielding a strictly increasing sequence that
// reaches the same final state. Every emitted move is re-validated.
inline GameSequence compress_dips(GameSequence seq, const Rational& h) {
    validate_sequence(seq, h);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < seq.moves.size(); ++i) {
            if (seq.moves[i].threshold >= seq.moves[i + 1].threshold) {
                // merge moves i and i+1 into one with the later threshold
                Move merged{seq.moves[i + 1].threshold, seq.moves[i + 1].after};
                const State& before = seq.state_at(i);
                if (auto v = check_move(before, merged.after, merged.threshold, h))
                    throw Error("counter game: dip compression produced an illegal move (R" +
                                std::to_string(v->rule) + ")");
                seq.moves[i] = std::move(merged);
                seq.moves.erase(seq.moves.begin() + static_cast<long>(i) + 1);
                changed = true;
                break;
            }
        }
    }
    validate_sequence(seq, h);
    return seq;
}

struct Milestone {
    size_t move_index;       // y_j
    Rational threshold;      // T_{y_j}
    Rational weight;         // weight above T_{y_j} just before the move
};

struct GameStats {
    Rational max_weight{0};
    std::vector<Rational> weight_at_threshold;  // per move, before applying it
    std::vector<Milestone> milestones;          // thresholds >= 2H apart
};

inline GameStats play_sequence(const GameSequence& seq, const Rational& h) {
    validate_sequence(seq, h);
    GameStats st;
    for (const auto& x : seq.start) st.max_weight = std::max(st.max_weight, x);
    std::optional<Rational> last_milestone_t;
    for (size_t i = 0; i < seq.moves.size(); ++i) {
        const State& before = seq.state_at(i);
        const Rational w = weight_above(before, seq.moves[i].threshold);
        st.weight_at_threshold.push_back(w);
        if (!last_milestone_t || seq.moves[i].threshold - *last_milestone_t >= h * Rational(2)) {
            st.milestones.push_back({i, seq.moves[i].threshold, w});
            last_milestone_t = seq.moves[i].threshold;
        }
        for (const auto& x : seq.moves[i].after) st.max_weight = std::max(st.max_weight, x);
    }
    return st;
}

// Greedy adversary probe: each move picks the threshold that maximizes one
// target counter's final weight min(u(target) + freed(t), t + H), where
// freed(t) is the weight the other counters hold above t. freed is piecewise
// linear in t, so the optimum sits at a weight breakpoint or at the exact
// crossing inside an interval; both are scanned. The move drains every other
// counter to the threshold and piles what fits onto the target. A heuristic
// pressure test, not a proof.
inline GameSequence greedy_adversary(int n, const Rational& start_y, const Rational& h, int moves,
                                     uint64_t seed) {
    GameSequence seq;
    seq.start.assign(n, start_y);
    Rng rng(seed);
    State cur = seq.start;
    for (int step = 0; step < moves; ++step) {
        const size_t target = rng.below(static_cast<uint64_t>(n));
        std::vector<Rational> bps;
        bps.reserve(cur.size() + 1);
        bps.push_back(Rational(0));
        for (size_t i = 0; i < cur.size(); ++i)
            if (i != target) bps.push_back(cur[i]);
        std::sort(bps.begin(), bps.end());
        bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

        Rational best_val(-1), best_t(0);
        auto consider = [&](const Rational& t) {
            if (t < Rational(0)) return;
            Rational freed(0);
            for (size_t i = 0; i < cur.size(); ++i)
                if (i != target && cur[i] > t) freed = freed + (cur[i] - t);
            Rational lifted = cur[target] + freed;
            const Rational cap = t + h;
            if (lifted > cap) lifted = cap;
            if (lifted < cur[target]) return;  // R1 would bind on the target
            if (lifted > best_val) {
                best_val = lifted;
                best_t = t;
            }
        };
        for (size_t k = 0; k < bps.size(); ++k) {
            consider(bps[k]);
            // inside [bps[k], next): freed = S - t*m with m counters above
            Rational s(0);
            int64_t m = 0;
            for (size_t i = 0; i < cur.size(); ++i)
                if (i != target && cur[i] > bps[k]) {
                    s = s + cur[i];
                    ++m;
                }
            if (m == 0) continue;
            // crossing of u(target) + S - t*m with t + h
            const Rational cross = (cur[target] + s - h) / Rational(m + 1);
            if (cross >= bps[k] && (k + 1 == bps.size() || cross < bps[k + 1])) consider(cross);
        }
        if (best_val <= cur[target]) continue;  // nothing to gain on this target
        State next = cur;
        Rational freed(0);
        for (size_t i = 0; i < next.size(); ++i)
            if (i != target && next[i] > best_t) {
                freed = freed + (next[i] - best_t);
                next[i] = best_t;
            }
        next[target] = best_val;
        seq.moves.push_back({best_t, next});
        cur = std::move(next);
    }
    return seq;
}

}  // namespace orient::counter
