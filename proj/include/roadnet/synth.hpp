#ifndef ROADNET_SYNTH_HPP
#define ROADNET_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "roadnet/geo.hpp"
#include "roadnet/graph.hpp"
#include "roadnet/rng.hpp"

namespace roadnet {

/// Synthetic grid city: jittered intersections, mixed road classes, some
/// one-way streets, optional diagonals, parallel edges, and edge removals
/// (for unreachable pairs). Every edge length is >= the great-circle
/// distance of its endpoints, so geometric heuristics stay admissible.
struct SynthOptions {
    std::uint32_t rows = 10;
    std::uint32_t cols = 10;
    std::uint64_t seed = 0;
    double detour_factor = 1.3;  // per-edge detour drawn uniformly from [1, detour_factor]
    double p_oneway = 0.15;
    double p_diagonal = 0.10;
    double p_parallel = 0.05;
    double p_remove = 0.0;
    double base_lat = 44.23;
    double base_lon = -76.50;
    double spacing_deg = 0.003;  // roughly 300 m between neighbours
};

namespace detail {

inline const char* pick_road_type(Rng& rng) {
    // Residential-heavy mix over the known class tags.
    static constexpr const char* kTags[] = {
        "residential", "residential", "residential", "residential", "residential",
        "residential", "unclassified", "tertiary",   "secondary",   "primary",
        "motorway_link", "motorway"};
    return kTags[rng.below(std::size(kTags))];
}

} // namespace detail

inline RoadGraph generate_synthetic_city(const SynthOptions& opt) {
    if (opt.rows < 2 || opt.cols < 2) throw DomainError("synthetic city needs dimensions >= 2");
    if (opt.detour_factor < 1.0) throw DomainError("detour_factor must be >= 1");
    Rng rng(substream(opt.seed, "synth-city"));

    const auto node_at = [&](std::uint32_t r, std::uint32_t c) -> NodeId {
        return static_cast<NodeId>(r) * opt.cols + c;
    };

    std::vector<std::pair<NodeId, GeoPoint>> nodes;
    std::vector<GeoPoint> pos(static_cast<std::size_t>(opt.rows) * opt.cols);
    for (std::uint32_t r = 0; r < opt.rows; ++r)
        for (std::uint32_t c = 0; c < opt.cols; ++c) {
            // jitter bounded to a quarter of the spacing keeps nodes distinct
            const double jlat = (rng.unit() - 0.5) * opt.spacing_deg / 2.0;
            const double jlon = (rng.unit() - 0.5) * opt.spacing_deg / 2.0;
            GeoPoint p{opt.base_lat + r * opt.spacing_deg + jlat,
                       opt.base_lon + c * opt.spacing_deg + jlon};
            pos[node_at(r, c)] = p;
            nodes.emplace_back(node_at(r, c), p);
        }

    std::vector<RoadEdge> edges;
    const auto add_edge = [&](NodeId u, NodeId v, std::uint32_t key) {
        RoadEdge e;
        e.from = u;
        e.to = v;
        e.key = key;
        const double gc = great_circle_m(pos[u], pos[v]);
        const double detour = 1.0 + rng.unit() * (opt.detour_factor - 1.0);
        e.length_m = std::max(gc * detour, gc);
        e.road_types = {detail::pick_road_type(rng)};
        if (rng.chance(0.2)) {
            static constexpr double kLimits[] = {40, 50, 60, 80, 100};
            e.raw_maxspeeds = {kLimits[rng.below(std::size(kLimits))]};
        }
        edges.push_back(std::move(e));
    };

    const auto add_street = [&](NodeId u, NodeId v) {
        if (rng.chance(opt.p_remove)) return;
        const bool oneway = rng.chance(opt.p_oneway);
        if (oneway) {
            if (rng.chance(0.5)) std::swap(u, v);
            add_edge(u, v, 0);
        } else {
            add_edge(u, v, 0);
            add_edge(v, u, 0);
        }
        if (rng.chance(opt.p_parallel)) add_edge(u, v, 1);
    };

    for (std::uint32_t r = 0; r < opt.rows; ++r)
        for (std::uint32_t c = 0; c < opt.cols; ++c) {
            if (c + 1 < opt.cols) add_street(node_at(r, c), node_at(r, c + 1));
            if (r + 1 < opt.rows) add_street(node_at(r, c), node_at(r + 1, c));
            if (r + 1 < opt.rows && c + 1 < opt.cols && rng.chance(opt.p_diagonal))
                add_street(node_at(r, c), node_at(r + 1, c + 1));
        }

    RoadGraph g = RoadGraph::build(std::move(nodes), std::move(edges));
    g.impute_speeds();
    return g;
}

} // namespace roadnet

#endif // ROADNET_SYNTH_HPP
