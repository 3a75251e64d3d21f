#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "orient/rsl.hpp"

using namespace orient;

namespace {

int64_t round_down(int64_t x, int64_t c) { return (x / c) * c; }

// the banded-dominance predicate a prefix must satisfy
void check_dominance(const RoughlySortedList& r, const std::vector<VertexId>& prefix, int64_t cprime) {
    std::set<VertexId> in(prefix.begin(), prefix.end());
    REQUIRE(in.size() == prefix.size());
    for (int u = 0; u < r.tracked(); ++u) {
        for (VertexId v : prefix) {
            if (round_down(r.value(u), cprime) > round_down(r.value(v), cprime)) {
                REQUIRE(in.count(u) == 1);
            }
        }
    }
}

}  // namespace

TEST_CASE("stratum banding matches the rounding arithmetic") {
    RoughlySortedList r(4, 3, 5);
    CHECK(r.stratum_of(0) == 0);
    CHECK(r.stratum_of(1) == 1);
    CHECK(r.stratum_of(3) == 1);
    CHECK(r.stratum_of(4) == 2);
    CHECK(r.stratum_of(7) == 3);  // value 7 with c'=3 sits in ((2)*3, 3*3]
    CHECK(r.stratum_of(15) == 5);
    CHECK(r.stratum_of(16) == 6);  // special bag

    r.batch_update({{0, 0, 7}});
    CHECK(r.value(0) == 7);
    r.batch_update({{0, 7, 2}});
    CHECK(r.value(0) == 2);
    CHECK(r.stratum_size(1) == 1);
    r.batch_update({});  // no-op
    CHECK(r.value(0) == 2);
}

TEST_CASE("stale old value and duplicates are rejected by vertex") {
    RoughlySortedList r(3, 2, 4);
    r.batch_update({{1, 0, 5}});
    CHECK_THROWS_WITH_AS(r.batch_update({{1, 3, 6}}), doctest::Contains("vertex 1"), Error);
    CHECK_THROWS_WITH_AS(r.batch_update({{2, 0, 1}, {2, 0, 2}}), doctest::Contains("duplicate"), Error);
}

TEST_CASE("prefix edge cases") {
    RoughlySortedList r(4, 3, 4);
    r.batch_update({{0, 0, 9}, {1, 0, 9}, {2, 0, 4}, {3, 0, 1}});
    CHECK(r.prefix(0).empty());

    auto p3 = r.prefix(3);
    REQUIRE(p3.size() == 3);
    std::set<VertexId> s(p3.begin(), p3.end());
    CHECK(s.count(0) == 1);
    CHECK(s.count(1) == 1);
    CHECK(s.count(2) == 1);  // the 4 (stratum 2) beats the 1 (stratum 1)

    auto pall = r.prefix(4);
    CHECK(pall.size() == 4);
    CHECK_THROWS_AS(r.prefix(5), Error);

    // side-effect free: consecutive identical calls agree
    CHECK(r.prefix(3) == r.prefix(3));
}

TEST_CASE("random updates against a naive oracle keep the dominance property") {
    const int n = 60;
    const int64_t cprime = 4;
    RoughlySortedList r(n, cprime, 8);
    std::vector<int64_t> oracle(n, 0);
    Rng rng(12);
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<std::tuple<VertexId, int64_t, int64_t>> ups;
        StampSet seen(n);
        seen.clear();
        const int k = static_cast<int>(rng.below(10)) + 1;
        for (int i = 0; i < k; ++i) {
            const VertexId v = static_cast<VertexId>(rng.below(n));
            if (!seen.insert(v)) continue;
            const int64_t nv = static_cast<int64_t>(rng.below(60));
            ups.emplace_back(v, oracle[v], nv);
            oracle[v] = nv;
        }
        r.batch_update(ups);
        for (int v = 0; v < n; ++v) REQUIRE(r.value(v) == oracle[v]);
        const int64_t w = static_cast<int64_t>(rng.below(n + 1));
        check_dominance(r, r.prefix(w), cprime);
    }
}

TEST_CASE("special bag accepts unbounded values and empties on demand") {
    RoughlySortedList r(3, 2, 3);
    r.batch_update({{0, 0, 1000}, {1, 0, 5}});
    CHECK_FALSE(r.special_empty());
    CHECK(r.stratum_size(4) == 1);
    auto p1 = r.prefix(1);
    REQUIRE(p1.size() == 1);
    CHECK(p1[0] == 0);  // the special-bag vertex dominates
    r.batch_update({{0, 1000, 2}});
    CHECK(r.special_empty());
}

TEST_CASE("batch update touches stay linear") {
    const int n = 5000;
    RoughlySortedList r(n, 2, 20);
    Rng rng(3);
    const uint64_t K = 24;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::tuple<VertexId, int64_t, int64_t>> ups;
        StampSet seen(n);
        seen.clear();
        for (int i = 0; i < 400; ++i) {
            const VertexId v = static_cast<VertexId>(rng.below(n));
            if (!seen.insert(v)) continue;
            ups.emplace_back(v, r.value(v), static_cast<int64_t>(rng.below(45)));
        }
        const uint64_t t0 = touches();
        r.batch_update(ups);
        REQUIRE(touches() - t0 <= K * (ups.size() + static_cast<uint64_t>(log2_ceil(n))));
    }
}
