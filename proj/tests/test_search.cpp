#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "roadnet/search.hpp"
#include "roadnet/synth.hpp"
#include "test_helpers.hpp"

using namespace roadnet;
using namespace roadnet::testing;
using Catch::Matchers::WithinRel;

TEST_CASE("dijkstra on the five-node fixture") {
    const auto g = five_node_fixture();
    const auto view = distance_view(g);
    const auto r = dijkstra(view, 0, 4);
    REQUIRE(r);
    CHECK(r->path == std::vector<NodeId>{0, 1, 2, 3, 4});
    CHECK_THAT(r->cost, WithinRel(4.0, 1e-12));
    CHECK(r->expanded == 5);

    // brute-force enumeration confirms 4 is minimal
    const auto opt = brute_force_optimum(view, g.node_index(0), g.node_index(4));
    REQUIRE(opt);
    CHECK_THAT(*opt, WithinRel(r->cost, 1e-12));
}

TEST_CASE("src == dst is a trivial one-vertex route") {
    const auto g = five_node_fixture();
    const auto view = distance_view(g);
    const auto r = dijkstra(view, 2, 2);
    REQUIRE(r);
    CHECK(r->path == std::vector<NodeId>{2});
    CHECK(r->cost == 0.0);
    CHECK(r->expanded == 1);
}

TEST_CASE("unreachable destination reports no path") {
    const auto g = make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    const auto view = distance_view(g);
    CHECK_FALSE(dijkstra(view, 0, 3).has_value());
    CHECK(dijkstra(view, 0, 1).has_value());
}

TEST_CASE("a_star with zero heuristic degenerates to dijkstra exactly") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        const auto g = random_digraph(30, 0.15, seed);
        const auto view = distance_view(g);
        HeuristicTable dummy;  // unused for the zero heuristic
        for (NodeId src : {0ull, 5ull, 11ull})
            for (NodeId dst : {29ull, 17ull, 3ull}) {
                const auto d = dijkstra(view, src, dst);
                const auto a = a_star(view, src, dst, {HeuristicKind::zero, 1.0, {}}, dummy,
                                      CostModel::v1_distance);
                REQUIRE(d.has_value() == a.has_value());
                if (!d) continue;
                CHECK(d->cost == a->cost);
                CHECK(d->expanded == a->expanded);
                CHECK(d->path == a->path);
            }
    }
}

TEST_CASE("exact-distance heuristic keeps the optimum and expands no more than dijkstra") {
    const auto g = five_node_fixture();
    const auto view = distance_view(g);
    // table of exact remaining distances to node 4, symmetric by construction
    HeuristicTable exact;
    exact.kind = HeuristicKind::euclidean;
    exact.n = g.size();
    exact.ordering.assign(g.node_ids().begin(), g.node_ids().end());
    exact.values_m.assign(25, 0.0);
    const double remaining_km[5] = {4.0, 3.0, 2.0, 1.0, 0.0};
    for (NodeIndex v = 0; v < 5; ++v) {
        exact.values_m[v * 5 + 4] = remaining_km[v] * 1000.0;
        exact.values_m[4 * 5 + v] = remaining_km[v] * 1000.0;
    }
    const auto d = dijkstra(view, 0, 4);
    const auto a =
        a_star(view, 0, 4, {HeuristicKind::euclidean, 1.0, {}}, exact, CostModel::v1_distance);
    REQUIRE(a);
    CHECK_THAT(a->cost, WithinRel(4.0, 1e-12));
    CHECK(a->expanded <= d->expanded);
    CHECK(a->path == d->path);
}

TEST_CASE("inflated search takes the greedy detour but stays within the alpha bound") {
    // S=0 at the bottom, G=3 ten km north; A=1 sits on the straight line,
    // B=2 sits just short of the goal but is expensive to reach.
    std::vector<std::pair<NodeId, GeoPoint>> nodes = {
        {0, {44.0000, -76.0}}, {1, {44.0450, -76.0}}, {2, {44.0855, -76.0}}, {3, {44.0900, -76.0}}};
    auto mk = [](NodeId u, NodeId v, double m) {
        RoadEdge e;
        e.from = u;
        e.to = v;
        e.length_m = m;
        e.road_types = {"residential"};
        return e;
    };
    std::vector<RoadEdge> edges = {mk(0, 1, 5100), mk(1, 3, 5100), mk(0, 2, 20000), mk(2, 3, 5000)};
    RoadGraph g = RoadGraph::build(std::move(nodes), std::move(edges));
    g.impute_speeds();
    const auto view = distance_view(g);

    const auto optimal = brute_force_optimum(view, 0, 3);
    REQUIRE(optimal);
    CHECK_THAT(*optimal, WithinRel(10.2, 1e-12));

    const auto uninflated =
        a_star_direct(view, 0, 3, {HeuristicKind::euclidean, 1.0, {}}, CostModel::v1_distance);
    REQUIRE(uninflated);
    CHECK_THAT(uninflated->cost, WithinRel(*optimal, 1e-12));

    const auto inflated =
        a_star_direct(view, 0, 3, {HeuristicKind::euclidean, 100.0, {}}, CostModel::v1_distance);
    REQUIRE(inflated);
    CHECK(inflated->path == std::vector<NodeId>{0, 2, 3});  // the detour
    CHECK(inflated->cost > *optimal);
    CHECK(inflated->cost <= 100.0 * *optimal);
}

TEST_CASE("heuristic tables are symmetric, zero-diagonal, and match the pointwise ops") {
    const auto g = generate_synthetic_city({.rows = 5, .cols = 5, .seed = 21});
    for (auto kind : {HeuristicKind::euclidean, HeuristicKind::great_circle}) {
        const auto t = build_heuristic_table(g, kind);
        REQUIRE(t.n == g.size());
        CHECK(t.values_m.size() == static_cast<std::size_t>(t.n) * t.n);
        Rng rng(5);
        for (int i = 0; i < 100; ++i) {
            const auto a = static_cast<NodeIndex>(rng.below(t.n));
            const auto b = static_cast<NodeIndex>(rng.below(t.n));
            CHECK(t.value_m(a, a) == 0.0);
            CHECK(t.value_m(a, b) == t.value_m(b, a));
            CHECK(t.value_m(a, b) == point_heuristic_m(kind, g.position(a), g.position(b)));
        }
    }
}

TEST_CASE("heuristic table build scales to 1000 nodes within the storage bound") {
    const auto g = generate_synthetic_city({.rows = 25, .cols = 40, .seed = 1});
    REQUIRE(g.size() == 1000);
    const auto t = build_heuristic_table(g, HeuristicKind::euclidean);
    CHECK(t.values_m.size() == 1000u * 1000u);
    // dense f64 storage: 8 bytes per pair, inside the 16 bytes * n^2 budget
    CHECK(sizeof(double) * t.values_m.size() <= 16u * 1000u * 1000u);
    CHECK(t.build_time_s >= 0.0);
}

TEST_CASE("heuristic table persists and validates the graph hash") {
    const auto g = generate_synthetic_city({.rows = 4, .cols = 5, .seed = 8});
    const auto t = build_heuristic_table(g, HeuristicKind::great_circle);
    const auto path = std::filesystem::temp_directory_path() / "roadnet_test_heur.bin";
    save_heuristic_table(path, t, g.hash64());
    const auto t2 = load_heuristic_table(path, g.hash64());
    CHECK(t2.values_m == t.values_m);
    CHECK(t2.ordering == t.ordering);
    CHECK(t2.kind == t.kind);
    CHECK_THROWS_AS(load_heuristic_table(path, g.hash64() ^ 1), ArtifactError);
    std::filesystem::remove(path);
}

TEST_CASE("admissible searches agree on synthetic cities under traffic") {
    for (std::uint64_t seed : {100ull, 101ull, 102ull}) {
        const auto g = generate_synthetic_city({.rows = 7, .cols = 7, .seed = seed});
        const auto euclid = build_heuristic_table(g, HeuristicKind::euclidean);
        const auto gc = build_heuristic_table(g, HeuristicKind::great_circle);
        const auto scenario =
            sample_scenario(g, TrafficRegime::named(TrafficRegime::Kind::heavy), seed * 13);
        const auto view = scenario_view(g, scenario, CostModel::v1_distance);
        Rng rng(seed);
        for (int t = 0; t < 10; ++t) {
            const NodeId src = g.node_id(static_cast<NodeIndex>(rng.below(g.size())));
            const NodeId dst = g.node_id(static_cast<NodeIndex>(rng.below(g.size())));
            const auto d = dijkstra(view, src, dst);
            const auto ae = a_star(view, src, dst, {HeuristicKind::euclidean, 1.0, {}}, euclid,
                                   CostModel::v1_distance);
            const auto ag = a_star(view, src, dst, {HeuristicKind::great_circle, 1.0, {}}, gc,
                                   CostModel::v1_distance);
            REQUIRE(d.has_value() == ae.has_value());
            REQUIRE(d.has_value() == ag.has_value());
            if (!d) continue;
            CHECK_THAT(ae->cost, WithinRel(d->cost, 1e-9));
            CHECK_THAT(ag->cost, WithinRel(d->cost, 1e-9));
            CHECK(ae->expanded <= d->expanded);
            CHECK(ag->expanded <= d->expanded);
            // expanded-count sanity and path validity
            CHECK(d->expanded <= g.size());
            const auto m = path_metrics(d->path, view, scenario);
            CHECK_THAT(m.cost_v1_km, WithinRel(d->cost, 1e-9));
        }
    }
}

TEST_CASE("inflated costs stay within alpha times the optimum") {
    const auto g = generate_synthetic_city({.rows = 8, .cols = 8, .seed = 500});
    const auto euclid = build_heuristic_table(g, HeuristicKind::euclidean);
    const auto scenario =
        sample_scenario(g, TrafficRegime::named(TrafficRegime::Kind::moderate), 77);
    const auto view = scenario_view(g, scenario, CostModel::v1_distance);
    Rng rng(1234);
    for (int t = 0; t < 15; ++t) {
        const NodeId src = g.node_id(static_cast<NodeIndex>(rng.below(g.size())));
        const NodeId dst = g.node_id(static_cast<NodeIndex>(rng.below(g.size())));
        const auto d = dijkstra(view, src, dst);
        if (!d) continue;
        for (double alpha : {10.0, 100.0}) {
            const auto infl = a_star(view, src, dst, {HeuristicKind::euclidean, alpha, {}},
                                     euclid, CostModel::v1_distance);
            REQUIRE(infl);
            CHECK(infl->cost >= d->cost - 1e-9 * d->cost);
            CHECK(infl->cost <= alpha * d->cost * (1 + 1e-9));
            const auto m = path_metrics(infl->path, view, scenario);
            CHECK_THAT(m.cost_v1_km, WithinRel(infl->cost, 1e-9));
        }
    }
}

TEST_CASE("v2 avg-speed divisor is inadmissible but still returns a valid route") {
    const auto g = generate_synthetic_city({.rows = 8, .cols = 8, .seed = 321});
    REQUIRE(g.max_speed_kmh() > g.avg_speed_kmh());
    const auto scenario = sample_scenario(g, TrafficRegime::named(TrafficRegime::Kind::light), 5);
    const auto view = scenario_view(g, scenario, CostModel::v2_time);
    Rng rng(9);
    for (int t = 0; t < 10; ++t) {
        const NodeId src = g.node_id(static_cast<NodeIndex>(rng.below(g.size())));
        const NodeId dst = g.node_id(static_cast<NodeIndex>(rng.below(g.size())));
        const auto d = dijkstra(view, src, dst);
        const auto a = a_star_direct(
            view, src, dst, {HeuristicKind::euclidean, 1.0, SpeedDivisor::avg_speed},
            CostModel::v2_time);
        REQUIRE(d.has_value() == a.has_value());
        if (!d) continue;
        CHECK(a->cost >= d->cost - 1e-9 * d->cost);  // never better than optimal
        const auto m = path_metrics(a->path, view, scenario);
        CHECK_THAT(m.eta_min, WithinRel(a->cost, 1e-9));
    }
}

TEST_CASE("v2 max-speed divisor keeps optimality") {
    const auto g = generate_synthetic_city({.rows = 8, .cols = 8, .seed = 321});
    const auto table = build_heuristic_table(g, HeuristicKind::great_circle);
    const auto scenario = sample_scenario(g, TrafficRegime::named(TrafficRegime::Kind::heavy), 6);
    const auto view = scenario_view(g, scenario, CostModel::v2_time);
    Rng rng(10);
    for (int t = 0; t < 10; ++t) {
        const NodeId src = g.node_id(static_cast<NodeIndex>(rng.below(g.size())));
        const NodeId dst = g.node_id(static_cast<NodeIndex>(rng.below(g.size())));
        const auto d = dijkstra(view, src, dst);
        const auto a = a_star(view, src, dst,
                              {HeuristicKind::great_circle, 1.0, SpeedDivisor::max_speed}, table,
                              CostModel::v2_time);
        REQUIRE(d.has_value() == a.has_value());
        if (d) CHECK_THAT(a->cost, WithinRel(d->cost, 1e-9));
    }
}
