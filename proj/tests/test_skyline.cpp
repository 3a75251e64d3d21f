#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "orient/skyline.hpp"

using namespace orient;

namespace {

// out-degree d at vertex hub by fanning to a shared leaf pool of higher ids
void add_fan(OrientedGraph& g, VertexId hub, int64_t d, VertexId leaf_base) {
    Batch b;
    b.kind = Batch::Kind::Insert;
    for (int64_t i = 0; i < d; ++i) b.edges.emplace_back(hub, leaf_base + static_cast<VertexId>(i));
    g.apply_batch(b);
}

std::vector<int64_t> degree_snapshot(const OrientedGraph& g) {
    std::vector<int64_t> d(g.n());
    for (int v = 0; v < g.n(); ++v) d[v] = g.out_degree(v);
    return d;
}

int64_t weight_above(const std::vector<int64_t>& degs, int64_t level) {
    int64_t s = 0;
    for (int64_t d : degs) s += std::max<int64_t>(0, d - level);
    return s;
}

}  // namespace

TEST_CASE("size-0 skyline is empty; oversize errors") {
    OrientedGraph g(10, 1, 1, 8, 1);
    auto s = get_demands(g, 0);
    CHECK(s.empty());
    CHECK_THROWS_AS(get_demands(g, 1), Error);  // no weight at all
    add_fan(g, 0, 3, 4);
    CHECK_THROWS_AS(get_demands(g, 4), Error);
    CHECK(get_demands(g, 3).x == 3);
}

TEST_CASE("single vertex, c'=1: induced threshold solves the definition") {
    // d+ = 7, want x = 3: T = 4 (C_4 = 3 >= 3, C_5 = 2 < 3), demand 3
    OrientedGraph g(100, 1, 1, 12, 1);
    add_fan(g, 0, 7, 10);
    auto s = get_demands(g, 3);
    CHECK(s.threshold == 4);
    REQUIRE(s.demands.size() == 1);
    CHECK(s.demands[0].first == 0);
    CHECK(s.demands[0].second == 3);
    check_skyline_wellformed(s, degree_snapshot(g));
}

TEST_CASE("skyline of size 10 with rounding 3 takes all edges above T+c'") {
    // degrees 20, 18, 17, 16: C_15 = 11 >= 10 > C_18 = 2, so T = 15
    OrientedGraph g(120, 1, 3, 16, 1);
    add_fan(g, 0, 20, 10);
    add_fan(g, 1, 18, 35);
    add_fan(g, 2, 17, 58);
    add_fan(g, 3, 16, 80);
    auto s = get_demands(g, 10);
    CHECK(s.threshold == 15);
    int64_t total = 0;
    std::map<VertexId, int64_t> dm;
    for (auto& [v, d] : s.demands) {
        dm[v] = d;
        total += d;
    }
    CHECK(total == 10);
    CHECK(dm[0] >= 20 - 15 - 3);  // mandatory part of the one old vertex
    CHECK(dm[0] <= 20 - 15);
    check_skyline_wellformed(s, degree_snapshot(g));
}

TEST_CASE("well-formedness holds across random graphs and sizes") {
    Rng rng(2718);
    for (int rep = 0; rep < 40; ++rep) {
        const int64_t cp = 1 + static_cast<int64_t>(rng.below(4));
        OrientedGraph g(400, 1, cp, 30, rng.next());
        int64_t placed = 0;
        const int hubs = 1 + static_cast<int>(rng.below(8));
        VertexId base = static_cast<VertexId>(hubs);
        for (int h = 0; h < hubs; ++h) {
            const int64_t d = 1 + static_cast<int64_t>(rng.below(40));
            if (base + d >= 400) break;
            add_fan(g, static_cast<VertexId>(h), d, base);
            base += static_cast<VertexId>(d);
            placed += d;
        }
        if (placed == 0) continue;
        for (int q = 0; q < 8; ++q) {
            const int64_t x = 1 + static_cast<int64_t>(rng.below(static_cast<uint64_t>(placed)));
            auto s = get_demands(g, x);
            check_skyline_wellformed(s, degree_snapshot(g));
        }
        // the whole weight is a valid skyline too
        check_skyline_wellformed(get_demands(g, placed), degree_snapshot(g));
    }
}

TEST_CASE("flip of everything above T=0 reverses a directed path") {
    OrientedGraph g(4, 1, 1, 6, 1);
    g.apply_batch(Batch{Batch::Kind::Insert, {{1, 2}, {2, 3}}});
    REQUIRE(g.edge(g.find_edge(1, 2)).tail == 1);
    REQUIRE(g.edge(g.find_edge(2, 3)).tail == 2);
    auto s = get_demands(g, 2);
    CHECK(s.threshold == 0);
    auto taken = flip_skyline(g, s);
    CHECK(taken.flips == 2);
    CHECK(g.edge(g.find_edge(1, 2)).tail == 2);
    CHECK(g.edge(g.find_edge(2, 3)).tail == 3);
    CHECK(g.out_degree(1) == 0);
    CHECK(g.out_degree(2) == 1);
    CHECK(g.out_degree(3) == 1);
    g.check_consistency();
}

TEST_CASE("threshold stability and weight lemmas across repeated same-size flips") {
    Rng rng(99);
    for (int rep = 0; rep < 10; ++rep) {
        const int64_t cp = 1 + static_cast<int64_t>(rng.below(3));
        OrientedGraph g(300, 1, cp, 40, rng.next());
        VertexId base = 8;
        int64_t placed = 0;
        for (int h = 0; h < 6; ++h) {
            const int64_t d = 5 + static_cast<int64_t>(rng.below(25));
            add_fan(g, static_cast<VertexId>(h), d, base);
            base += static_cast<VertexId>(d);
            placed += d;
        }
        const int64_t x = 1 + static_cast<int64_t>(rng.below(static_cast<uint64_t>(placed / 2)));
        std::vector<int64_t> thresholds;
        for (int i = 0; i < 8; ++i) {
            auto before = degree_snapshot(g);
            auto s = get_demands(g, x);
            check_skyline_wellformed(s, before);
            thresholds.push_back(s.threshold);
            flip_skyline(g, s);
            auto after = degree_snapshot(g);
            // weights at or below T cannot grow; weights above T are capped by x
            for (int64_t level = 0; level <= s.threshold; level += cp)
                REQUIRE(weight_above(after, level) <= weight_above(before, level));
            for (int64_t level = s.threshold + cp; level <= s.threshold + 4 * cp; level += cp)
                REQUIRE(weight_above(after, level) <= x);
            g.check_consistency();
        }
        for (size_t i = 0; i < thresholds.size(); ++i)
            for (size_t j = 0; j <= i; ++j) REQUIRE(thresholds[i] <= thresholds[j] + cp);
    }
}

TEST_CASE("static orientation of a skyline that changes nothing flips nothing") {
    OrientedGraph g(6, 1, 1, 6, 1);
    g.apply_batch(Batch{Batch::Kind::Insert, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}});
    auto before = degree_snapshot(g);
    auto s = get_demands(g, 4);
    auto taken = static_orient_skyline(g, s, 1, Rational(2));  // threshold 4 marks all; lower-id tails
    CHECK(taken.flips == 0);
    CHECK(degree_snapshot(g) == before);
    g.check_consistency();
    // unchanged edges now live in front bags
    for (int v = 0; v < 4; ++v) {
        CHECK(g.out_edges(v).front_size() == g.out_degree(v));
        CHECK(g.out_edges(v).back_size() == 0);
    }
}

TEST_CASE("star-shaped skyline drops the hub to the static bound") {
    OrientedGraph g(40, 1, 1, 40, 1);
    add_fan(g, 0, 20, 10);
    auto s = get_demands(g, 20);
    auto taken = static_orient_skyline(g, s, 1, Rational(1));  // 3c target
    CHECK(g.out_degree(0) <= 3);
    CHECK(taken.flips >= 17);
    g.check_consistency();
}

TEST_CASE("high subset sizes follow the formula") {
    SkylineTaken s;
    s.x = 20;
    // 4 vertices with 5 in-skyline out-edges each
    EdgeId id = 0;
    for (VertexId v = 0; v < 4; ++v)
        for (int i = 0; i < 5; ++i) s.edges.emplace_back(id++, v);
    auto f = high_subset(s, 6, Rational(1, 2), 42);
    CHECK(f.per_vertex_cap == 3);
    CHECK(f.edges.size() == 8);  // 2 per vertex
    CHECK(f.edges.size() <= 10);  // (1 - lambda) * |S|

    // all degrees below alpha*lambda -> empty subset
    SkylineTaken t;
    for (VertexId v = 0; v < 4; ++v) t.edges.emplace_back(v, v);
    CHECK(high_subset(t, 6, Rational(1, 2), 42).edges.empty());

    // single vertex at exactly alpha keeps alpha - floor(alpha*lambda)
    SkylineTaken u;
    for (int i = 0; i < 6; ++i) u.edges.emplace_back(i, 0);
    CHECK(high_subset(u, 6, Rational(1, 2), 42).edges.size() == 3);

    // precondition violation names the vertex
    SkylineTaken w;
    for (int i = 0; i < 9; ++i) w.edges.emplace_back(i, 3);
    CHECK_THROWS_WITH_AS(high_subset(w, 6, Rational(1, 2), 42), doctest::Contains("vertex 3"), Error);
}
