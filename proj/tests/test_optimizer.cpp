#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "gcactus/embedder.hpp"
#include "gcactus/error.hpp"
#include "gcactus/families.hpp"
#include "gcactus/optimizer.hpp"
#include "test_support.hpp"

using namespace gcactus;
using namespace test_support;

namespace {

std::vector<double> flatten(const embedding& e) {
    std::vector<double> c;
    for (auto p : e.points) {
        c.push_back(p.x);
        c.push_back(p.y);
    }
    return c;
}

// Hard log-ratio and hinge sum, written from the definition.
double reference_value(const graph& g, const std::vector<double>& c, double weight,
                       double beta, double tau) {
    auto pt = [&](int v) { return point{c[2 * v], c[2 * v + 1]}; };
    std::vector<double> ll;
    for (auto [a, b] : g.edges) ll.push_back(std::log(dist(pt(a), pt(b))));
    double mx = *std::max_element(ll.begin(), ll.end()), mn = *std::min_element(ll.begin(), ll.end());
    double sp = 0.0, sn = 0.0;
    for (double l : ll) {
        sp += std::exp(beta * (l - mx));
        sn += std::exp(-beta * (l - mn));
    }
    double m = static_cast<double>(ll.size());
    double log_max = mx + std::log(sp / m) / beta;
    double log_min = mn - std::log(sn / m) / beta;
    auto adj = adjacency(g);
    double pen = 0.0;
    for (int s = 0; s < g.vertex_count; ++s)
        for (int t = 0; t < g.vertex_count; ++t) {
            if (s == t) continue;
            double st = dist(pt(s), pt(t)), best = 1e300;
            for (int v : adj[s]) best = std::min(best, dist(pt(v), pt(t)));
            double h = std::max(tau - (st - best) / st, 0.0);
            pen += h * h;
        }
    return log_max - log_min + weight * pen;
}

}  // namespace

TEST_CASE("optimizer_config validation") {
    optimizer_config c;
    CHECK_NOTHROW(c.validate());
    c.restarts = 0;
    CHECK_THROWS(c.validate());
    c = {};
    c.weights = {1.0, 0.5};
    CHECK_THROWS(c.validate());
    c = {};
    c.weights = {};
    CHECK_THROWS(c.validate());
    c = {};
    c.weights = {-1.0, 2.0};
    CHECK_THROWS(c.validate());
}

TEST_CASE("penalty_objective value matches the definition") {
    std::mt19937_64 rng(2);
    for (int inst = 0; inst < 20; ++inst) {
        int n = 3 + static_cast<int>(rng() % 8);
        auto g = random_connected_graph(n, 0.3, rng);
        auto c = flatten(random_points(n, rng));
        auto v = penalty_objective(g, c, 3.0, 7.0, 0.01);
        CHECK(v.value == doctest::Approx(reference_value(g, c, 3.0, 7.0, 0.01)).epsilon(1e-10));
        CHECK(v.value == doctest::Approx(v.log_ratio_term + 3.0 * v.penalty_term).epsilon(1e-12));
    }
}

TEST_CASE("gradient matches central differences") {
    std::mt19937_64 rng(31);
    for (int inst = 0; inst < 20; ++inst) {
        int n = 3 + static_cast<int>(rng() % 8);
        auto g = random_connected_graph(n, 0.3, rng);
        auto c = flatten(random_points(n, rng));
        double w = 10.0;
        auto v = penalty_objective(g, c, w);
        double gmax = 0.0, err = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto cp = c, cm = c;
            cp[i] += 1e-6;
            cm[i] -= 1e-6;
            double fd = (penalty_objective(g, cp, w).value - penalty_objective(g, cm, w).value) / 2e-6;
            err = std::max(err, std::abs(fd - v.gradient[i]));
            gmax = std::max(gmax, std::abs(v.gradient[i]));
        }
        CHECK(err <= 1e-5 * std::max(gmax, 1.0));
    }
}

TEST_CASE("penalty vanishes on a comfortably greedy embedding") {
    auto tri = complete_graph(3);
    auto c = flatten(regular_polygon(3));
    auto v = penalty_objective(tri, c, 1e4);
    CHECK(v.penalty_term == 0.0);
    CHECK(v.satisfied_pairs == 6);
    CHECK(v.value == doctest::Approx(v.log_ratio_term));
    CHECK(v.log_ratio_term == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("penalty_objective is scale invariant") {
    std::mt19937_64 rng(4);
    auto g = random_connected_graph(8, 0.3, rng);
    auto c = flatten(random_points(8, rng));
    auto a = penalty_objective(g, c, 5.0);
    for (double s : {1e-3, 0.5, 7.0, 1e3}) {
        auto cs = c;
        for (double& x : cs) x *= s;
        auto b = penalty_objective(g, cs, 5.0);
        CHECK(b.value == doctest::Approx(a.value).epsilon(1e-9));
        for (std::size_t i = 0; i < c.size(); ++i)
            CHECK(b.gradient[i] * s == doctest::Approx(a.gradient[i]).epsilon(1e-7));
    }
}

TEST_CASE("penalty_objective errors") {
    auto p3 = path_graph(3);
    CHECK_THROWS_AS(penalty_objective(p3, {0, 0, 0, 0, 1, 1}, 1.0), geometry_error);
    CHECK_THROWS_AS(penalty_objective(p3, {0, 0, 1, 0}, 1.0), geometry_error);
    CHECK_THROWS_AS(penalty_objective(p3, {0, 0, 1, 0, NAN, 1}, 1.0), geometry_error);
}

TEST_CASE("optimizer on K3") {
    optimizer_config cfg;
    cfg.restarts = 3;
    auto tr = minimize_aspect_ratio(complete_graph(3), std::nullopt, cfg);
    REQUIRE(tr.best);
    CHECK(tr.best_ratio <= 1.0 + 1e-6);
    CHECK(tr.restarts.size() == 3);
    CHECK(verify_greedy(complete_graph(3), *tr.best).greedy());
    CHECK(tr.best->points[0] == point{0.0, 0.0});
}

TEST_CASE("optimizer on G_1 agrees with brute force") {
    auto f = gen_gk(1);
    optimizer_config cfg;
    cfg.restarts = 6;
    auto tr = minimize_aspect_ratio(f.g, std::nullopt, cfg);
    REQUIRE(tr.best);
    CHECK(verify_greedy(f.g, *tr.best).greedy());
    CHECK(tr.best_ratio < 2.0);
    auto bf = brute_force_min_ratio(f.g, 4000, 7);
    REQUIRE(bf.found);
    CHECK(verify_greedy(f.g, bf.best).greedy());
    CHECK(bf.estimate < 2.0);
    // Two independent searches should land near the same minimum.
    CHECK(std::abs(std::log(tr.best_ratio / bf.estimate)) < std::log(1.5));
}

TEST_CASE("optimizer is deterministic for a seed") {
    auto f = gen_gk(2);
    optimizer_config cfg;
    cfg.restarts = 2;
    cfg.iterations = 200;
    auto a = minimize_aspect_ratio(f.g, std::nullopt, cfg);
    auto b = minimize_aspect_ratio(f.g, std::nullopt, cfg);
    CHECK(a.best == b.best);
    CHECK(a.best_restart == b.best_restart);
    cfg.threads = 2;
    auto c = minimize_aspect_ratio(f.g, std::nullopt, cfg);
    CHECK(a.best == c.best);
}

TEST_CASE("no weight stage regresses on more than a tenth of runs") {
    int runs = 0;
    std::vector<int> regress;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        optimizer_config cfg;
        cfg.restarts = 3;
        cfg.iterations = 200;
        cfg.seed = seed;
        auto g = random_christmas_cactus(12, seed);
        auto tr = minimize_aspect_ratio(g, std::nullopt, cfg);
        for (const auto& r : tr.restarts) {
            ++runs;
            regress.resize(r.satisfied_per_stage.size(), 0);
            for (std::size_t i = 1; i < r.satisfied_per_stage.size(); ++i)
                regress[i] += r.satisfied_per_stage[i] < r.satisfied_per_stage[i - 1];
        }
    }
    for (int count : regress) CHECK(count * 10 <= runs);
}

TEST_CASE("optimizer keeps F_1 above the bound") {
    auto f = gen_fk(1);
    auto init = embed_christmas_cactus(f.g, {}, f.default_root()).points;
    optimizer_config cfg;
    cfg.restarts = 3;
    cfg.iterations = 200;
    auto tr = minimize_aspect_ratio(f.g, init, cfg);
    if (tr.best) {
        CHECK(verify_greedy(f.g, *tr.best).greedy());
        CHECK(tr.best_ratio > 2.0);
    }
    for (const auto& r : tr.restarts)
        if (r.certified) CHECK(r.aspect_ratio > 2.0);
}

TEST_CASE("brute force on tiny graphs") {
    auto k3 = brute_force_min_ratio(complete_graph(3), 500, 1);
    REQUIRE(k3.found);
    CHECK(k3.estimate <= 1.0 + 1e-6);
    auto p3 = brute_force_min_ratio(path_graph(3), 500, 1);
    REQUIRE(p3.found);
    CHECK(p3.estimate <= 1.0 + 1e-3);
    CHECK(p3.candidates > 0);
    auto star = brute_force_min_ratio(star_graph(6), 200, 1);
    CHECK_FALSE(star.found);
}
