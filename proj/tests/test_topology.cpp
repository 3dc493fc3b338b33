#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "geosim/rng.hpp"
#include "geosim/serialize.hpp"
#include "geosim/topology.hpp"

using namespace geosim;

TEST_CASE("unit-disk adjacency: radius boundary is closed") {
    Topology t({{0, 0}, {30, 0}, {60, 0}}, 40.0);
    CHECK(t.udg_neighbors(0) == std::vector<NodeId>{1});
    CHECK(t.udg_neighbors(1) == std::vector<NodeId>{0, 2});
    Topology exact({{0, 0}, {40, 0}}, 40.0);
    CHECK(exact.udg_neighbors(0) == std::vector<NodeId>{1});
}

TEST_CASE("gabriel subgraph keeps and drops the right edges") {
    // Equilateral triangle, side 30: all diameter discs empty.
    Topology tri({{0, 0}, {30, 0}, {15, 25.980762113533157}}, 40.0);
    CHECK(tri.planar_neighbors(0) == std::vector<NodeId>{1, 2});
    CHECK(tri.planar_neighbors(1) == std::vector<NodeId>{0, 2});
    CHECK(tri.is_connected());

    // Collinear chain: the long edge's disc contains the middle node.
    Topology line({{0, 0}, {20, 0}, {40, 0}}, 40.0);
    CHECK(line.udg_neighbors(0) == std::vector<NodeId>{1, 2});
    CHECK(line.planar_neighbors(0) == std::vector<NodeId>{1});
    CHECK(line.planar_neighbors(2) == std::vector<NodeId>{1});

    // Two nodes: the single edge survives.
    Topology pair({{0, 0}, {10, 0}}, 40.0);
    CHECK(pair.planar_neighbors(0) == std::vector<NodeId>{1});
}

TEST_CASE("is_connected") {
    CHECK(Topology({{5, 5}}, 40.0).is_connected());
    CHECK_FALSE(Topology({{0, 0}, {100, 0}}, 40.0).is_connected());
}

TEST_CASE("neighbors accessor validates ids") {
    Topology t({{0, 0}, {30, 0}}, 40.0);
    CHECK(neighbors(t, 0, false) == std::vector<NodeId>{1});
    CHECK_THROWS_AS(neighbors(t, 9, false), UnknownNode);
    Topology iso({{0, 0}, {100, 0}, {100.5, 0}}, 0.25);
    CHECK(neighbors(iso, 0, false).empty());
}

TEST_CASE("generate: two nodes in range") {
    GenConfig cfg;
    cfg.area_w = cfg.area_h = 60;
    cfg.n_nodes = 2;
    cfg.radius = 40;
    cfg.seed = 3;
    cfg.max_rejects = 200;
    const Topology t = generate(cfg);
    CHECK(t.size() == 2);
    CHECK(t.is_connected());
    CHECK(t.udg_neighbors(0) == std::vector<NodeId>{1});
}

TEST_CASE("generate: hole stays empty and the field is connected") {
    GenConfig cfg;
    cfg.n_nodes = 150;
    cfg.holes = {DiscHole{{200, 200}, 60}};
    cfg.seed = 7;
    cfg.max_rejects = 60000; // the paper-scale density connects ~1 field in 2000
    const Topology t = generate(cfg);
    CHECK(t.size() == 150);
    CHECK(t.is_connected());
    for (const auto& p : t.nodes()) {
        CHECK(distance(p, {200, 200}) >= 60.0 - 1e-9);
    }
}

TEST_CASE("generate: determinism, seed sensitivity") {
    GenConfig cfg;
    cfg.n_nodes = 60;
    cfg.area_w = cfg.area_h = 250;
    cfg.seed = 11;
    cfg.max_rejects = 2000;
    const Topology a = generate(cfg);
    const Topology b = generate(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.nodes()[i].x == b.nodes()[i].x);
        CHECK(a.nodes()[i].y == b.nodes()[i].y);
        CHECK(a.udg_neighbors(static_cast<NodeId>(i)) ==
              b.udg_neighbors(static_cast<NodeId>(i)));
    }
    cfg.seed = 12;
    const Topology c = generate(cfg);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size() && !any_diff; ++i) {
        any_diff = a.nodes()[i].x != c.nodes()[i].x;
    }
    CHECK(any_diff);
}

TEST_CASE("generate: infeasible density fails with the pinned seed") {
    GenConfig cfg;
    cfg.area_w = cfg.area_h = 50;
    cfg.n_nodes = 2;
    cfg.radius = 1;
    cfg.seed = 1; // verified failing: 10 attempts never land both points within 1 m
    cfg.max_rejects = 10;
    CHECK_THROWS_AS(generate(cfg), GenerationFailed);
}

TEST_CASE("random fields satisfy the UDG and Gabriel invariants") {
    SplitMix64 seeds(505);
    for (int round = 0; round < 5; ++round) {
        GenConfig cfg;
        cfg.n_nodes = 80;
        cfg.area_w = cfg.area_h = 280;
        cfg.holes = {DiscHole{{140, 140}, 45}};
        cfg.seed = seeds.next_u64();
        cfg.max_rejects = 5000;
        const Topology t = generate(cfg);

        const double r_sq = t.radius() * t.radius();
        for (std::size_t u = 0; u < t.size(); ++u) {
            std::size_t vi = 0;
            const auto& adj = t.udg_neighbors(static_cast<NodeId>(u));
            for (std::size_t v = 0; v < t.size(); ++v) {
                const bool listed = vi < adj.size() && adj[vi] == v;
                if (listed) ++vi;
                if (v == u) continue;
                CHECK(listed == (distance_sq(t.nodes()[u], t.nodes()[v]) <= r_sq));
            }
            // planar is a subset of udg
            for (NodeId w : t.planar_neighbors(static_cast<NodeId>(u))) {
                CHECK(std::find(adj.begin(), adj.end(), w) != adj.end());
            }
        }

        // Gabriel subgraph of a connected UDG stays connected.
        std::vector<bool> seen(t.size(), false);
        std::vector<NodeId> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : t.planar_neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = true;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        CHECK(count == t.size());
    }
}

TEST_CASE("topology JSON round-trips and validates") {
    Topology t({{0, 0}, {30, 0}, {15, 20}}, 40.0, {DiscHole{{100, 100}, 10}});
    const std::string doc = topology_to_json(t);
    const Topology back = topology_from_json(doc);
    REQUIRE(back.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(back.nodes()[i].x == doctest::Approx(t.nodes()[i].x));
        CHECK(back.nodes()[i].y == doctest::Approx(t.nodes()[i].y));
    }
    CHECK(back.radius() == doctest::Approx(40.0));
    CHECK(back.udg_neighbors(0) == t.udg_neighbors(0));

    CHECK_THROWS_AS(topology_from_json("{\"radius\":-1,\"nodes\":[]}"), ConfigError);
    CHECK_THROWS_AS(topology_from_json("{\"radius\":40,\"nodes\":[{\"id\":5,\"x\":0,\"y\":0}]}"),
                    ConfigError);
    CHECK_THROWS_AS(
        topology_from_json("{\"radius\":40,\"nodes\":[{\"id\":0,\"x\":0,\"y\":0}],"
                           "\"holes\":[{\"shape\":\"disc\",\"center\":[0,0],\"r\":5}]}"),
        ConfigError);
    CHECK_THROWS_AS(topology_from_json("not json"), ConfigError);
}

TEST_CASE("polygon holes reject interior points only") {
    const PolygonHole square{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}};
    CHECK(inside_hole(square, {5, 5}));
    CHECK_FALSE(inside_hole(square, {10, 5})); // on the boundary
    CHECK_FALSE(inside_hole(square, {15, 5}));
    const DiscHole disc{{0, 0}, 5};
    CHECK(inside_hole(disc, {1, 1}));
    CHECK_FALSE(inside_hole(disc, {5, 0}));
}
