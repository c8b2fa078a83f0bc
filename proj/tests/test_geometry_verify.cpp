#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "gcactus/error.hpp"
#include "gcactus/geometry.hpp"
#include "gcactus/verify.hpp"
#include "test_support.hpp"

using namespace gcactus;
using namespace test_support;

namespace {

// Straight from the definition: s has a neighbour strictly closer to t.
bool definition_greedy(const graph& g, const embedding& e) {
    auto adj = adjacency(g);
    for (int s = 0; s < g.vertex_count; ++s)
        for (int t = 0; t < g.vertex_count; ++t) {
            if (s == t) continue;
            bool ok = false;
            for (int v : adj[s]) ok = ok || dist(e.points[v], e.points[t]) < dist(e.points[s], e.points[t]);
            if (!ok) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("verify_greedy examples") {
    auto tri = complete_graph(3);
    auto eq = regular_polygon(3, 1.0 / std::sqrt(3.0));
    auto c = verify_greedy(tri, eq);
    CHECK(c.greedy());
    CHECK(c.min_relative_margin == doctest::Approx(1.0));
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t)
            if (s != t) CHECK(c.margin(s, t) == doctest::Approx(1.0));
    CHECK(c.aspect_ratio == doctest::Approx(1.0));

    auto p3 = path_graph(3);
    embedding bad{{{0, 0}, {3, 0}, {1, 0}}};
    auto cb = verify_greedy(p3, bad);
    CHECK_FALSE(cb.greedy());
    CHECK(cb.margin(0, 2) == doctest::Approx(-1.0));
    // From c, the only neighbour b is three away from a.
    CHECK(cb.worst_pair == std::pair<int, int>{2, 0});
    CHECK(cb.min_relative_margin == doctest::Approx(-2.0));
    CHECK(cb.tolerance == default_tolerance);
}

TEST_CASE("verify_greedy errors") {
    auto p3 = path_graph(3);
    CHECK_THROWS_AS(verify_greedy(p3, embedding{{{0, 0}, {1, 0}}}), geometry_error);
    CHECK_THROWS_AS(verify_greedy(p3, embedding{{{0, 0}, {1, 0}, {0, 0}}}), geometry_error);
    double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(verify_greedy(p3, embedding{{{0, 0}, {1, 0}, {nan, 0}}}), geometry_error);
    double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(verify_greedy(p3, embedding{{{0, 0}, {1, inf}, {2, 0}}}), geometry_error);
}

TEST_CASE("certificate verdict agrees with the raw definition") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        auto g = random_connected_graph(n, 0.3, rng);
        auto e = random_points(n, rng);
        auto c = verify_greedy(g, e, 0.0);
        if (std::abs(c.min_relative_margin) < 1e-12) continue;
        CHECK(c.greedy() == definition_greedy(g, e));
        CHECK(c.greedy() == (c.min_relative_margin > 0.0));
        CHECK(c.aspect_ratio >= 1.0);
    }
}

TEST_CASE("oracle agrees with the certificate") {
    std::mt19937_64 rng(5);
    int compared = 0;
    while (compared < 300) {
        int n = 2 + static_cast<int>(rng() % 11);
        auto g = random_connected_graph(n, static_cast<double>(rng() % 5) / 10.0, rng);
        auto e = random_points(n, rng);
        auto c = verify_greedy(g, e, 0.0);
        if (std::abs(c.min_relative_margin) < 1e-12) continue;
        CHECK(verify_greedy_oracle(g, e) == c.result);
        ++compared;
    }
    auto tri = complete_graph(3);
    CHECK(verify_greedy_oracle(tri, regular_polygon(3)) == verdict::greedy);
    CHECK(verify_greedy_oracle(cycle_graph(5), regular_polygon(5)) == verdict::greedy);
}

TEST_CASE("threaded verification is partition independent") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 5 + static_cast<int>(rng() % 30);
        auto g = random_connected_graph(n, 0.1, rng);
        auto e = random_points(n, rng);
        auto a = verify_greedy(g, e, 1e-9, 1);
        auto b = verify_greedy(g, e, 1e-9, 4);
        CHECK(a.result == b.result);
        CHECK(a.worst_pair == b.worst_pair);
        CHECK(a.margins == b.margins);
        auto s = min_relative_margin(adjacency(g), e.points);
        CHECK(s.min_relative_margin == a.min_relative_margin);
        CHECK(s.worst_pair == a.worst_pair);
    }
}

TEST_CASE("star K_{1,6} is never greedy, complete graphs always are") {
    std::mt19937_64 rng(21);
    auto star = star_graph(6);
    for (int i = 0; i < 200; ++i) CHECK_FALSE(verify_greedy(star, random_points(7, rng)).greedy());
    for (int n = 3; n <= 6; ++n) {
        auto kn = complete_graph(n);
        for (int i = 0; i < 50; ++i) CHECK(verify_greedy(kn, random_points(n, rng)).greedy());
    }
    for (int n = 3; n <= 12; ++n) CHECK(verify_greedy(cycle_graph(n), regular_polygon(n)).greedy());
}

TEST_CASE("greedy_path") {
    auto tri = complete_graph(3);
    auto r = greedy_path(tri, regular_polygon(3), 0, 2);
    CHECK(r.delivered);
    CHECK(r.path == std::vector<int>{0, 2});

    auto p3 = path_graph(3);
    auto line = embedding{{{0, 0}, {1, 0}, {2, 0}}};
    CHECK(greedy_path(p3, line, 0, 2).path == std::vector<int>{0, 1, 2});

    auto bad = embedding{{{0, 0}, {3, 0}, {1, 0}}};
    auto stuck = greedy_path(p3, bad, 0, 2);
    CHECK_FALSE(stuck.delivered);
    CHECK(stuck.stuck == 0);
    CHECK_THROWS_AS(greedy_path(p3, line, 1, 1), graph_error);

    // Tie: from 0 both 1 and 2 are at equal distance to 3; the smaller index wins.
    auto kite = build_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    auto pts = embedding{{{0, 0}, {1, 1}, {1, -1}, {2, 0}}};
    CHECK(greedy_path(kite, pts, 0, 3).path == std::vector<int>{0, 1, 3});
}

TEST_CASE("greedy path soundness on certified embeddings") {
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 8);
        auto g = random_connected_graph(n, 0.5, rng);
        auto e = random_points(n, rng);
        if (!verify_greedy(g, e).greedy()) continue;
        ++checked;
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) {
                if (s == t) continue;
                auto r = greedy_path(g, e, s, t);
                REQUIRE(r.delivered);
                CHECK(r.path.back() == t);
                for (std::size_t i = 1; i < r.path.size(); ++i)
                    CHECK(dist(e.points[r.path[i]], e.points[t]) < dist(e.points[r.path[i - 1]], e.points[t]));
            }
    }
    CHECK(checked >= 10);
}

TEST_CASE("aspect_ratio") {
    embedding square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    CHECK(aspect_ratio(cycle_graph(4), square) == doctest::Approx(1.0));
    auto p3 = path_graph(3);
    embedding pts{{{0, 0}, {1, 0}, {3, 0}}};
    CHECK(aspect_ratio(p3, pts) == doctest::Approx(2.0));
    CHECK(aspect_ratio(p3, transform(pts, {0.3, 7.0, {2, -1}})) == doctest::Approx(2.0));
    CHECK_THROWS_AS(aspect_ratio(build_graph(2, {}), embedding{{{0, 0}, {1, 0}}}), graph_error);
}

TEST_CASE("similarity invariance") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ang(-3.14159, 3.14159), lg(-3.0, 3.0), sh(-100.0, 100.0);
    for (int inst = 0; inst < 6; ++inst) {
        int n = 3 + static_cast<int>(rng() % 8);
        auto g = random_connected_graph(n, 0.4, rng);
        auto e = random_points(n, rng);
        auto base = verify_greedy(g, e);
        for (int k = 0; k < 30; ++k) {
            similarity s{ang(rng), std::pow(10.0, lg(rng)), {sh(rng), sh(rng)}};
            auto c = verify_greedy(g, transform(e, s));
            CHECK(c.result == base.result);
            CHECK(std::abs(c.aspect_ratio - base.aspect_ratio) <= 1e-9 * base.aspect_ratio);
            for (int i = 0; i < n * n; ++i) {
                if (i % (n + 1) == 0) continue;
                CHECK(std::abs(c.margins[i] - base.margins[i]) <= 1e-9 * std::max(1.0, std::abs(base.margins[i])));
            }
        }
    }
}

TEST_CASE("normalize_gauge pins two vertices") {
    embedding e{{{2, 3}, {4, 5}, {1, -1}}};
    auto n = normalize_gauge(e);
    CHECK(n.points[0].x == doctest::Approx(0.0));
    CHECK(n.points[0].y == doctest::Approx(0.0));
    CHECK(n.points[1].x == doctest::Approx(1.0));
    CHECK(n.points[1].y == doctest::Approx(0.0).epsilon(1e-12));
}
