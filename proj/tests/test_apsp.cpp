#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "roadnet/apsp.hpp"
#include "roadnet/synth.hpp"
#include "test_helpers.hpp"

using namespace roadnet;
using namespace roadnet::testing;
using Catch::Matchers::WithinRel;

TEST_CASE("four-node directed cycle distances") {
    const auto g = make_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}});
    const auto view = distance_view(g);
    const auto t = floyd_warshall(view);
    CHECK_THAT(t.dist(0, 2), WithinRel(2.0, 1e-12));
    CHECK_THAT(t.dist(2, 0), WithinRel(2.0, 1e-12));  // the long way around
    for (NodeIndex i = 0; i < 4; ++i) CHECK(t.dist(i, i) == 0.0);

    const auto path = reconstruct_path(t, g, 0, 2);
    REQUIRE(path);
    CHECK(*path == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("isolated vertex rows and columns are unreachable") {
    const auto g = make_graph(3, {{0, 1, 1.0}, {1, 0, 1.0}});
    const auto t = floyd_warshall(distance_view(g));
    const NodeIndex iso = 2;
    for (NodeIndex j = 0; j < 3; ++j) {
        if (j == iso) continue;
        CHECK(t.dist(iso, j) == kUnreachable);
        CHECK(t.dist(j, iso) == kUnreachable);
        CHECK(t.next(iso, j) == kNoHop);
    }
    CHECK(t.dist(iso, iso) == 0.0);
    CHECK_FALSE(reconstruct_path(t, g, 0, 2).has_value());
    const auto self = reconstruct_path(t, g, 2, 2);
    REQUIRE(self);
    CHECK(*self == std::vector<NodeId>{2});
}

TEST_CASE("dist matrix equals per-pair dijkstra on a random city") {
    const auto g = generate_synthetic_city(
        {.rows = 6, .cols = 10, .seed = 42, .p_oneway = 0.25, .p_remove = 0.02});
    const auto view = distance_view(g);
    const auto t = floyd_warshall(view);
    for (NodeIndex i = 0; i < g.size(); ++i)
        for (NodeIndex j = 0; j < g.size(); ++j) {
            const auto d = dijkstra(view, g.node_id(i), g.node_id(j));
            if (!d) {
                CHECK(t.dist(i, j) == kUnreachable);
                continue;
            }
            CHECK_THAT(t.dist(i, j), WithinRel(d->cost, 1e-9));
        }
}

TEST_CASE("triangle inequality and next-hop consistency hold") {
    const auto g = generate_synthetic_city({.rows = 5, .cols = 6, .seed = 17, .p_oneway = 0.3});
    const auto view = distance_view(g);
    const auto t = floyd_warshall(view);
    const NodeIndex n = g.size();
    for (NodeIndex i = 0; i < n; ++i)
        for (NodeIndex j = 0; j < n; ++j) {
            if (t.dist(i, j) == kUnreachable) continue;
            for (NodeIndex k = 0; k < n; ++k) {
                if (t.dist(i, k) == kUnreachable || t.dist(k, j) == kUnreachable) continue;
                CHECK(t.dist(i, j) <= t.dist(i, k) + t.dist(k, j) + 1e-9);
            }
            const auto path = reconstruct_path(t, g, g.node_id(i), g.node_id(j));
            REQUIRE(path);
            double sum = 0.0;
            for (std::size_t s = 1; s < path->size(); ++s)
                sum += view.find_arc(g.node_index((*path)[s - 1]), g.node_index((*path)[s]))->cost;
            if (t.dist(i, j) > 0.0) CHECK_THAT(sum, WithinRel(t.dist(i, j), 1e-9));
        }
}

TEST_CASE("apsp tables persist bit-identically and validate the graph hash") {
    const auto g = generate_synthetic_city({.rows = 4, .cols = 4, .seed = 77});
    const auto t = floyd_warshall(distance_view(g));
    const auto path = std::filesystem::temp_directory_path() / "roadnet_test_fw.bin";
    save_apsp(path, t, g.hash64());
    const auto t2 = load_apsp(path, g.hash64());
    CHECK(t2.dist_km == t.dist_km);       // bit-identical
    CHECK(t2.next_hop == t.next_hop);
    CHECK(t2.ordering == t.ordering);
    CHECK(t2.build_time_s == t.build_time_s);
    CHECK_THROWS_AS(load_apsp(path, g.hash64() + 1), ArtifactError);
    std::filesystem::remove(path);
}

TEST_CASE("lookup reports traffic-evaluated cost over the distance-optimal path") {
    const auto g = make_graph(2, {{0, 1, 2.0}});
    const auto view = distance_view(g);
    const auto t = floyd_warshall(view);

    SECTION("no traffic: cost equals the stored distance") {
        const auto s = sample_scenario(g, TrafficRegime::named(TrafficRegime::Kind::none), 0);
        const auto r = lookup_route(t, scenario_view(g, s, CostModel::v1_distance), s, 0, 1,
                                    CostModel::v1_distance);
        REQUIRE(r);
        CHECK(r->cost == t.dist(0, 1));
    }
    SECTION("weight 5 on the only edge: cost 10, length 2") {
        TrafficScenario s;
        s.regime = TrafficRegime::named(TrafficRegime::Kind::heavy);
        s.weights = {TrafficWeight::w5};
        const auto r = lookup_route(t, scenario_view(g, s, CostModel::v1_distance), s, 0, 1,
                                    CostModel::v1_distance);
        REQUIRE(r);
        CHECK_THAT(r->cost, WithinRel(10.0, 1e-12));
        CHECK_THAT(r->length_km, WithinRel(2.0, 1e-12));
    }
}

TEST_CASE("lookup cost dominates the traffic-aware optimum") {
    const auto g = generate_synthetic_city({.rows = 7, .cols = 7, .seed = 1000});
    const auto dview = distance_view(g);
    const auto t = floyd_warshall(dview);
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const auto scenario = sample_scenario(
            g, TrafficRegime::named(TrafficRegime::Kind::heavy), 9000 + trial);
        const auto eval = scenario_view(g, scenario, CostModel::v1_distance);
        const NodeId src = g.node_id(static_cast<NodeIndex>(rng.below(g.size())));
        const NodeId dst = g.node_id(static_cast<NodeIndex>(rng.below(g.size())));
        const auto lookup = lookup_route(t, eval, scenario, src, dst, CostModel::v1_distance);
        const auto optimal = dijkstra(eval, src, dst);
        REQUIRE(lookup.has_value() == optimal.has_value());
        if (!lookup) continue;
        CHECK(lookup->cost >= optimal->cost - 1e-9 * optimal->cost);
    }
    // all-ones scenario: the two coincide
    const auto ones = sample_scenario(g, TrafficRegime::named(TrafficRegime::Kind::none), 0);
    const auto eval = scenario_view(g, ones, CostModel::v1_distance);
    const auto lookup = lookup_route(t, eval, ones, g.node_id(0), g.node_id(40),
                                     CostModel::v1_distance);
    const auto optimal = dijkstra(eval, g.node_id(0), g.node_id(40));
    REQUIRE(lookup);
    REQUIRE(optimal);
    CHECK_THAT(lookup->cost, WithinRel(optimal->cost, 1e-9));
}

TEST_CASE("lookup propagates no-path") {
    const auto g = make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    const auto view = distance_view(g);
    const auto t = floyd_warshall(view);
    const auto s = sample_scenario(g, TrafficRegime::named(TrafficRegime::Kind::none), 0);
    CHECK_FALSE(lookup_route(t, view, s, 0, 3, CostModel::v1_distance).has_value());
}
