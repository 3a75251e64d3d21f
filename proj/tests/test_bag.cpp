#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "orient/bag.hpp"

using namespace orient;

namespace {

std::multiset<int> contents(const Bag<int>& b) {
    auto all = b.peek(b.size());
    return std::multiset<int>(all.begin(), all.end());
}

}  // namespace

TEST_CASE("insert then peek returns the inserted multiset") {
    Bag<int> b;
    auto hs = b.batch_insert({10, 20, 30, 40, 50});
    CHECK(b.size() == 5);
    for (const auto& h : hs) CHECK(b.is_live(h));
    CHECK(contents(b) == std::multiset<int>{10, 20, 30, 40, 50});

    CHECK(b.batch_insert({}).empty());
    CHECK(b.size() == 5);

    Bag<int> c;
    c.batch_insert({1, 2, 3, 4, 5, 6, 7});
    CHECK(contents(c) == std::multiset<int>{1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("peek is deterministic and side-effect free") {
    Bag<int> b;
    b.batch_insert({5, 6, 7, 8, 9, 10, 11, 12, 13});
    for (int64_t k = 0; k <= b.size(); ++k) {
        auto p1 = b.peek(k);
        auto p2 = b.peek(k);
        CHECK(p1 == p2);
        CHECK(static_cast<int64_t>(p1.size()) == k);
    }
    CHECK(b.peek(100).size() == 9);  // k > size returns everything
}

TEST_CASE("pop removes exactly the peeked elements") {
    Bag<int> b;
    b.batch_insert({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    auto expect = b.peek(4);
    auto got = b.batch_pop(4);
    CHECK(got == expect);
    CHECK(b.size() == 6);
    auto rest = contents(b);
    for (int v : got) CHECK(rest.count(v) == 0);
    CHECK_THROWS_AS(b.batch_pop(7), Error);
    b.batch_pop(6);
    CHECK(b.empty());
    CHECK(b.batch_pop(0).empty());
}

TEST_CASE("delete all and delete nothing") {
    Bag<int> b;
    auto hs = b.batch_insert({1, 2, 3, 4, 5, 6});
    b.batch_delete(hs);
    CHECK(b.empty());
    b.batch_delete({});
    CHECK(b.empty());
}

TEST_CASE("dead and duplicate handles are detected") {
    Bag<int> b;
    auto hs = b.batch_insert({1, 2, 3});
    b.batch_delete({hs[0]});
    CHECK_FALSE(b.is_live(hs[0]));
    CHECK_THROWS_AS(b.batch_delete({hs[0]}), Error);
    CHECK_THROWS_AS(b.get(hs[0]), Error);
    CHECK_THROWS_AS(b.batch_delete(std::vector<Bag<int>::Handle>{hs[1], hs[1]}), Error);
    CHECK(b.is_live(hs[1]));  // failed batch leaves live elements live
    CHECK(b.get(hs[1]) == 2);
}

TEST_CASE("bag digit weights mirror skew arithmetic") {
    Bag<int> b;
    skew::Weights w;
    Rng rng(31337);
    for (int rep = 0; rep < 500; ++rep) {
        if (b.empty() || rng.chance(3, 5)) {
            const int64_t k = static_cast<int64_t>(rng.below(40));
            std::vector<int> items(k, rep);
            b.batch_insert(items);
            w = skew::add(std::move(w), k);
        } else {
            const int64_t k = static_cast<int64_t>(rng.below(static_cast<uint64_t>(b.size()) + 1));
            b.batch_pop(k);
            w = skew::subtract(std::move(w), k);
        }
        REQUIRE(skew::is_valid(b.weights()));
        REQUIRE(b.weights() == w);
        REQUIRE(skew::value(w) == b.size());
    }
}

TEST_CASE("oracle equivalence over 1e5 random operations with handle stability") {
    Bag<int> b;
    std::multiset<int> oracle;
    std::map<int, Bag<int>::Handle> live;  // element id -> handle
    Rng rng(777);
    int next_id = 0;
    int64_t ops = 0;
    while (ops < 100000) {
        const uint64_t roll = rng.below(10);
        if (b.empty() || roll < 4) {
            const int k = static_cast<int>(rng.below(20)) + 1;
            std::vector<int> items;
            for (int i = 0; i < k; ++i) items.push_back(next_id++);
            auto hs = b.batch_insert(items);
            for (int i = 0; i < k; ++i) {
                oracle.insert(items[i]);
                live[items[i]] = hs[i];
            }
            ops += k;
        } else if (roll < 7) {
            // delete a random subset by handle
            std::vector<Bag<int>::Handle> hs;
            std::vector<int> ids;
            for (const auto& [id, h] : live) {
                if (rng.chance(1, 4)) {
                    hs.push_back(h);
                    ids.push_back(id);
                }
                if (hs.size() >= 30) break;
            }
            b.batch_delete(hs);
            for (int id : ids) {
                oracle.erase(oracle.find(id));
                live.erase(id);
            }
            ops += static_cast<int64_t>(hs.size()) + 1;
        } else if (roll < 9) {
            const int64_t k = static_cast<int64_t>(rng.below(static_cast<uint64_t>(b.size()) + 1));
            auto vals = b.batch_pop(k);
            for (int v : vals) {
                oracle.erase(oracle.find(v));
                live.erase(v);
            }
            ops += k + 1;
        } else {
            const int64_t k = static_cast<int64_t>(rng.below(static_cast<uint64_t>(b.size()) + 1));
            auto vals = b.peek(k);
            for (int v : vals) REQUIRE(oracle.count(v) >= 1);
            ops += k + 1;
        }
        REQUIRE(b.size() == static_cast<int64_t>(oracle.size()));
        REQUIRE(contents(b) == oracle);
        // every live handle still dereferences to its element
        int checked = 0;
        for (const auto& [id, h] : live) {
            REQUIRE(b.is_live(h));
            REQUIRE(b.get(h) == id);
            if (++checked >= 50) break;
        }
        REQUIRE(skew::is_valid(b.weights()));
    }
}

TEST_CASE("per-call element touches stay within K*(batch + log size), no amortization") {
    const uint64_t K = 12;
    Bag<int> b;
    std::vector<int> bulk(4096);
    for (size_t i = 0; i < bulk.size(); ++i) bulk[i] = static_cast<int>(i);
    b.batch_insert(bulk);

    auto budget = [&](uint64_t batch) {
        return K * (batch + static_cast<uint64_t>(log2_ceil(b.size() + 2)));
    };

    Rng rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        const uint64_t k = rng.below(64) + 1;
        uint64_t t0 = touches();
        auto hs = b.batch_insert(std::vector<int>(k, rep));
        REQUIRE(touches() - t0 <= budget(k));

        t0 = touches();
        b.peek(static_cast<int64_t>(k));
        REQUIRE(touches() - t0 <= budget(k));

        t0 = touches();
        b.batch_delete(hs);
        REQUIRE(touches() - t0 <= budget(k));

        t0 = touches();
        b.batch_pop(static_cast<int64_t>(std::min<uint64_t>(k, static_cast<uint64_t>(b.size()))));
        REQUIRE(touches() - t0 <= budget(k));
    }
    // keep the bag from draining
    b.batch_insert(bulk);
    CHECK(b.size() >= 4096);
}

TEST_CASE("peek on a large bag touches a small window") {
    Bag<int> b;
    std::vector<int> bulk(100);
    for (size_t i = 0; i < bulk.size(); ++i) bulk[i] = static_cast<int>(i);
    b.batch_insert(bulk);
    const uint64_t K = 12;
    uint64_t t0 = touches();
    auto out = b.peek(3);
    CHECK(out.size() == 3);
    CHECK(touches() - t0 <= K * (3 + static_cast<uint64_t>(log2_ceil(100))));
}

TEST_CASE("pannier pops exhaust the front before promoting the back") {
    Pannier<char> q;
    q.insert_front({'a', 'b'});
    q.insert_back({'c', 'd'});
    const auto front_before = q.front_bag().peek(2);
    auto res = q.batch_pop(3);
    CHECK(res.promoted);
    REQUIRE(res.values.size() == 3);
    CHECK(std::multiset<char>(res.values.begin(), res.values.begin() + 2) ==
          std::multiset<char>(front_before.begin(), front_before.end()));
    CHECK((res.values[2] == 'c' || res.values[2] == 'd'));
    CHECK(q.front_size() == 1);  // the surviving back element, post-promotion
    CHECK(q.back_size() == 0);

    auto res0 = q.batch_pop(0);
    CHECK(res0.values.empty());
    CHECK_FALSE(res0.promoted);
    CHECK(q.size() == 1);

    auto rest = q.batch_pop(q.size());
    CHECK(q.size() == 0);
    CHECK(q.front_size() == 0);
    CHECK(q.back_size() == 0);
    CHECK_THROWS_AS(q.batch_pop(1), Error);
}

TEST_CASE("pannier oracle equivalence over random batches") {
    Pannier<int> q;
    std::multiset<int> oracle;
    Rng rng(404);
    int next = 0;
    for (int rep = 0; rep < 3000; ++rep) {
        const uint64_t roll = rng.below(3);
        if (q.size() == 0 || roll == 0) {
            const int k = static_cast<int>(rng.below(12)) + 1;
            std::vector<int> items;
            for (int i = 0; i < k; ++i) items.push_back(next++);
            if (rng.chance(1, 4))
                q.insert_front(items);
            else
                q.insert_back(items);
            for (int v : items) oracle.insert(v);
        } else if (roll == 1) {
            const int64_t k = static_cast<int64_t>(rng.below(static_cast<uint64_t>(q.size()) + 1));
            for (int v : q.batch_pop(k).values) oracle.erase(oracle.find(v));
        } else {
            auto all = q.peek(q.size());
            REQUIRE(std::multiset<int>(all.begin(), all.end()) == oracle);
        }
        REQUIRE(q.size() == static_cast<int64_t>(oracle.size()));
    }
}
