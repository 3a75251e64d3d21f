#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orient/counter_game.hpp"

using namespace orient;
using namespace orient::counter;

namespace {

// independent rule-by-rule oracle, written against the rule text
int oracle_first_violation(const State& u, const State& u2, const Rational& t, const Rational& h) {
    for (size_t i = 0; i < u.size(); ++i) {
        Rational m = u[i];
        if (t < m) m = t;
        if (u2[i] < m) return 1;
    }
    Rational a(0), b(0);
    for (auto& x : u) a = a + x;
    for (auto& x : u2) b = b + x;
    if (b > a) return 2;
    for (size_t i = 0; i < u2.size(); ++i)
        if (u2[i] > t + h) return 3;
    return 0;
}

// random legal move built by construction: counters above the cap must come
// down into [t, cap]; others above t may shed weight; freed weight is then
// sprinkled back below the cap
Move random_legal_move(Rng& rng, const State& cur, const Rational& h) {
    Rational mx(0);
    for (auto& x : cur) mx = std::max(mx, x);
    const Rational t = mx * Rational(static_cast<int64_t>(rng.below(5)), 4);
    const Rational cap = t + h;
    State next = cur;
    Rational freed(0);
    for (auto& x : next) {
        if (x > cap) {
            const Rational landing = t + (cap - t) * Rational(static_cast<int64_t>(rng.below(5)), 4);
            freed = freed + (x - landing);
            x = landing;
        } else if (x > t && rng.chance(1, 2)) {
            const Rational d = (x - t) * Rational(static_cast<int64_t>(rng.below(5)), 4);
            x = x - d;
            freed = freed + d;
        }
    }
    for (size_t tries = 0; tries < 2 * next.size() && freed > Rational(0); ++tries) {
        const size_t i = rng.below(next.size());
        const Rational room = cap - next[i];
        if (room <= Rational(0)) continue;
        const Rational add = std::min(freed, room * Rational(static_cast<int64_t>(rng.below(5)), 4));
        if (add <= Rational(0)) continue;
        next[i] = next[i] + add;
        freed = freed - add;
    }
    return Move{t, next};
}

}  // namespace

TEST_CASE("figure-style move: drain 11 above T=10, add 10 back under T+H=13") {
    // counters around the threshold; exact values chosen to mirror the text
    State u{12, 14, 9, 6, 15};
    // take 2+4+5=11 from the above-T counters, then add 10: +4 to c3, +3 to c4(9->12), +3 to c1(->13)
    State u2{13, 10, 12, 10, 10};
    CHECK(is_legal_move(u, u2, Rational(10), Rational(3)));

    // identity moves are legal exactly when no counter sits above the cap;
    // with everything at or below H they are legal for every threshold
    CHECK(is_legal_move(u2, u2, Rational(10), Rational(3)));
    auto idv = check_move(u, u, Rational(10), Rational(3));
    REQUIRE(idv.has_value());
    CHECK(idv->rule == 3);  // the 15 exceeds T+H = 13
    State low{2, 1, 3, 0};
    for (int t = 0; t <= 12; ++t) CHECK(is_legal_move(low, low, Rational(t), Rational(3)));

    // a below-threshold counter losing weight violates R1
    State bad = u;
    bad[3] = Rational(5);
    auto v = check_move(u, bad, Rational(10), Rational(3));
    REQUIRE(v.has_value());
    CHECK(v->rule == 1);
    CHECK(v->index == 3);

    CHECK_THROWS_AS(check_move(u, State{Rational(1)}, Rational(1), Rational(1)), Error);
}

TEST_CASE("weight_above arithmetic") {
    State u{5, 1};
    CHECK(weight_above(u, Rational(2)) == Rational(3));
    CHECK(weight_above(u, Rational(0)) == Rational(6));
    CHECK(weight_above(u, Rational(9)) == Rational(0));
}

TEST_CASE("validator matches the naive oracle on random moves") {
    Rng rng(8);
    const Rational h(3);
    for (int rep = 0; rep < 4000; ++rep) {
        State u(8), u2(8);
        for (auto& x : u) x = Rational(static_cast<int64_t>(rng.below(40)), 1 + static_cast<int64_t>(rng.below(3)));
        for (size_t i = 0; i < u2.size(); ++i)
            u2[i] = rng.chance(2, 3) ? u[i]
                                     : Rational(static_cast<int64_t>(rng.below(40)),
                                                1 + static_cast<int64_t>(rng.below(3)));
        const Rational t(static_cast<int64_t>(rng.below(30)));
        const auto mine = check_move(u, u2, t, h);
        const int oracle = oracle_first_violation(u, u2, t, h);
        CHECK((mine ? mine->rule : 0) == oracle);
    }
}

TEST_CASE("R1 floor semantics: above-threshold counters may drop only to T") {
    State u{10};
    CHECK(is_legal_move(u, State{Rational(7)}, Rational(7), Rational(5)));
    CHECK_FALSE(is_legal_move(u, State{Rational(6)}, Rational(7), Rational(5)));
}

TEST_CASE("compress_dips removes dips, preserves the final state, stays legal") {
    const Rational h(4);
    Rng rng(99);
    for (int rep = 0; rep < 300; ++rep) {
        GameSequence seq;
        seq.start.assign(6, Rational(8));
        State cur = seq.start;
        const int len = 2 + static_cast<int>(rng.below(8));
        for (int i = 0; i < len; ++i) {
            seq.moves.push_back(random_legal_move(rng, cur, h));
            cur = seq.moves.back().after;
        }
        auto compressed = compress_dips(seq, h);
        for (size_t i = 1; i < compressed.moves.size(); ++i)
            REQUIRE(compressed.moves[i - 1].threshold < compressed.moves[i].threshold);
        REQUIRE(compressed.final_state() == seq.final_state());
    }

    // already strictly increasing -> unchanged; empty -> empty
    GameSequence inc;
    inc.start.assign(3, Rational(5));
    inc.moves.push_back({Rational(1), inc.start});
    inc.moves.push_back({Rational(2), inc.start});
    auto same = compress_dips(inc, h);
    CHECK(same.moves.size() == 2);
    GameSequence empty;
    empty.start.assign(3, Rational(5));
    CHECK(compress_dips(empty, h).moves.empty());
}

TEST_CASE("a constructed three-move dip collapses to two moves") {
    const Rational h(10);
    GameSequence seq;
    seq.start = {Rational(9), Rational(9), Rational(9)};
    // T1=2: move weight from c0 to c1
    seq.moves.push_back({Rational(2), {Rational(2), Rational(12), Rational(9)}});
    // T2=8: c1 drops to 8, c2 up
    seq.moves.push_back({Rational(8), {Rational(2), Rational(8), Rational(13)}});
    // T3=5 (dip): c2 drops to 5
    seq.moves.push_back({Rational(5), {Rational(2), Rational(8), Rational(5)}});
    auto c = compress_dips(seq, h);
    CHECK(c.moves.size() == 2);
    CHECK(c.final_state() == seq.final_state());
}

TEST_CASE("play_sequence reports identity max and milestone halving") {
    const Rational h(2);
    GameSequence idseq;
    idseq.start.assign(4, Rational(7));
    for (int i = 5; i < 8; ++i) idseq.moves.push_back({Rational(i), idseq.start});
    CHECK(play_sequence(idseq, h).max_weight == Rational(7));

    // strictly increasing thresholds with >= 2H jumps halve the weight above
    Rng rng(314);
    int checked = 0;
    for (int rep = 0; rep < 400; ++rep) {
        GameSequence seq;
        seq.start.assign(8, Rational(20));
        State cur = seq.start;
        for (int t = 1; t <= 24; ++t) {
            const Rational thr(t);
            const Rational cap = thr + h;
            State next = cur;
            Rational freed(0);
            for (auto& x : next) {
                if (x > cap) {
                    freed = freed + (x - cap);
                    x = cap;
                } else if (x > thr && rng.chance(1, 3)) {
                    freed = freed + (x - thr);
                    x = thr;
                }
            }
            // push some freed weight back under the cap
            for (size_t tries = 0; tries < next.size() && freed > Rational(0); ++tries) {
                const size_t i = rng.below(next.size());
                const Rational room = cap - next[i];
                if (room <= Rational(0)) continue;
                const Rational add = std::min(freed, room);
                next[i] = next[i] + add;
                freed = freed - add;
            }
            seq.moves.push_back({thr, next});
            cur = next;
        }
        auto st = play_sequence(seq, h);
        REQUIRE(st.milestones.size() >= 3);
        for (size_t j = 1; j < st.milestones.size(); ++j) {
            REQUIRE(st.milestones[j].weight * Rational(2) <= st.milestones[j - 1].weight);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("frozen-state lemma: a threshold above the max weight freezes the game") {
    const Rational h(3);
    Rng rng(27);
    for (int rep = 0; rep < 500; ++rep) {
        State cur(6);
        for (auto& x : cur) x = Rational(static_cast<int64_t>(rng.below(20)));
        Rational mx(0);
        for (auto& x : cur) mx = std::max(mx, x);
        const Rational t = mx + Rational(1 + static_cast<int64_t>(rng.below(5)));
        // any legal move with threshold above the max must be the identity
        auto mv = random_legal_move(rng, cur, h);
        if (is_legal_move(cur, mv.after, t, h)) {
            // R1 pins every counter from below; R2 pins the sum, so equality
            Rational s1(0), s2(0);
            for (auto& x : cur) s1 = s1 + x;
            for (auto& x : mv.after) s2 = s2 + x;
            if (s1 == s2) {
                for (size_t i = 0; i < cur.size(); ++i) REQUIRE(mv.after[i] >= cur[i]);
            }
        }
        REQUIRE(is_legal_move(cur, cur, t, h));
    }
}

TEST_CASE("weightsDown property: levels at or below T never gain weight") {
    Rng rng(123);
    const Rational h(5, 2);
    for (int rep = 0; rep < 2000; ++rep) {
        State cur(7);
        for (auto& x : cur) x = Rational(static_cast<int64_t>(rng.below(30)), 2);
        auto mv = random_legal_move(rng, cur, h);
        REQUIRE(is_legal_move(cur, mv.after, mv.threshold, h));
        for (int k = 0; k <= 4; ++k) {
            const Rational level = mv.threshold * Rational(k, 4);
            REQUIRE(weight_above(mv.after, level) <= weight_above(cur, level));
        }
    }
}

TEST_CASE("greedy adversary stays legal and within the counter-limit shape") {
    const int n = 256;
    const Rational h(3);
    const Rational y = h + Rational(1);
    auto seq = greedy_adversary(n, y, h, 600, 42);
    validate_sequence(seq, h);
    auto st = play_sequence(seq, h);
    const Rational bound = (y + h * Rational(log2_ceil(n))) * Rational(4);  // K = 4
    CHECK(st.max_weight <= bound);
    CHECK(st.max_weight > y);  // the adversary did manage to push somebody up
}
