#ifndef ROADNET_APSP_HPP
#define ROADNET_APSP_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <vector>

#include "roadnet/io_util.hpp"
#include "roadnet/search.hpp"
#include "roadnet/traffic.hpp"
#include "roadnet/view.hpp"

namespace roadnet {

// Unreachable distances are the floating maximum, never NaN, so comparisons
// stay total; unreachable/diagonal hops use a dense-index sentinel.
inline constexpr double kUnreachable = std::numeric_limits<double>::max();
inline constexpr std::uint32_t kNoHop = UINT32_MAX;

/// All-pairs shortest path tables over distance costs: dense row-major dist
/// (km) and first-step next-hop matrices.
struct ApspTables {
    NodeIndex n = 0;
    std::vector<NodeId> ordering;       // dense index -> node id
    std::vector<double> dist_km;        // n * n
    std::vector<std::uint32_t> next_hop;  // n * n, first step from i toward j
    double build_time_s = 0.0;

    double dist(NodeIndex i, NodeIndex j) const {
        return dist_km[static_cast<std::size_t>(i) * n + j];
    }
    std::uint32_t next(NodeIndex i, NodeIndex j) const {
        return next_hop[static_cast<std::size_t>(i) * n + j];
    }
};

/// Floyd-Warshall-Ingerman over the distance-resolved view. k-outermost
/// triple loop; next_hop keeps the first step so reconstruction is linear in
/// the path length.
inline ApspTables floyd_warshall(const ResolvedView& view) {
    const auto t0 = std::chrono::steady_clock::now();
    ApspTables t;
    t.n = view.size();
    const RoadGraph& g = view.graph();
    t.ordering.assign(g.node_ids().begin(), g.node_ids().end());
    const std::size_t n = t.n;
    t.dist_km.assign(n * n, kUnreachable);
    t.next_hop.assign(n * n, kNoHop);
    for (NodeIndex i = 0; i < t.n; ++i) {
        t.dist_km[i * n + i] = 0.0;
        for (const ViewArc& arc : view.arcs(i)) {
            t.dist_km[i * n + arc.to] = arc.cost;
            t.next_hop[i * n + arc.to] = arc.to;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double* dk = t.dist_km.data() + k * n;
        for (std::size_t i = 0; i < n; ++i) {
            const double dik = t.dist_km[i * n + k];
            if (dik == kUnreachable) continue;
            double* di = t.dist_km.data() + i * n;
            std::uint32_t* ni = t.next_hop.data() + i * n;
            const std::uint32_t hop_ik = ni[k];
            for (std::size_t j = 0; j < n; ++j) {
                if (dk[j] == kUnreachable) continue;
                const double alt = dik + dk[j];
                if (alt < di[j]) {
                    di[j] = alt;
                    ni[j] = hop_ik;
                }
            }
        }
    }
    t.build_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return t;
}

/// Path from src to dst by following next_hop; nullopt when unreachable.
inline std::optional<std::vector<NodeId>> reconstruct_path(const ApspTables& t,
                                                           const RoadGraph& graph, NodeId src,
                                                           NodeId dst) {
    const NodeIndex s = detail::require_node(graph, src, "source");
    const NodeIndex d = detail::require_node(graph, dst, "destination");
    std::vector<NodeId> path{src};
    if (s == d) return path;
    if (t.next(s, d) == kNoHop) return std::nullopt;
    NodeIndex cur = s;
    while (cur != d) {
        cur = t.next(cur, d);
        path.push_back(t.ordering[cur]);
    }
    return path;
}

/// Traffic-reweighted lookup: the path ignores traffic (it is the stored
/// distance optimum), the reported cost includes it. Runtime covers exactly
/// reconstruction plus metric evaluation.
inline std::optional<RouteResult> lookup_route(const ApspTables& t, const ResolvedView& eval_view,
                                               const TrafficScenario& scenario, NodeId src,
                                               NodeId dst, CostModel model) {
    const auto t0 = std::chrono::steady_clock::now();
    auto path = reconstruct_path(t, eval_view.graph(), src, dst);
    if (!path) return std::nullopt;
    const PathMetrics m = path_metrics(*path, eval_view, scenario);
    RouteResult r;
    r.path = std::move(*path);
    r.cost = metric_cost(m, model);
    r.length_km = m.length_km;
    r.eta_min = m.eta_min;
    r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// --- persistence ------------------------------------------------------------
// Layout (little-endian): magic, version, graph hash, build time, n,
// node ordering, dist matrix (f64), next_hop matrix (u32).

inline constexpr std::uint32_t kApspMagic = 0x57464E52;  // "RNFW" little-endian

inline void save_apsp(const std::filesystem::path& path, const ApspTables& t,
                      std::uint64_t graph_hash) {
    auto out = open_output(path, std::ios::binary);
    write_u32(out, kApspMagic);
    write_u32(out, kArtifactVersion);
    write_u64(out, graph_hash);
    write_f64(out, t.build_time_s);
    write_u64(out, t.n);
    for (NodeId id : t.ordering) write_u64(out, id);
    for (double v : t.dist_km) write_f64(out, v);
    for (std::uint32_t v : t.next_hop) write_u32(out, v);
    if (!out) throw ArtifactError("failed writing APSP tables to " + path.string());
}

inline ApspTables load_apsp(const std::filesystem::path& path, std::uint64_t expected_graph_hash) {
    auto in = open_input(path, std::ios::binary);
    if (read_u32(in) != kApspMagic)
        throw ArtifactError(path.string() + ": not an APSP artifact");
    if (read_u32(in) != kArtifactVersion)
        throw ArtifactError(path.string() + ": unsupported artifact version");
    const std::uint64_t hash = read_u64(in);
    if (hash != expected_graph_hash)
        throw ArtifactError(path.string() + ": graph hash mismatch (artifact " + hex64(hash) +
                            ", graph " + hex64(expected_graph_hash) + ")");
    ApspTables t;
    t.build_time_s = read_f64(in);
    t.n = static_cast<NodeIndex>(read_u64(in));
    t.ordering.resize(t.n);
    for (auto& id : t.ordering) id = read_u64(in);
    t.dist_km.resize(static_cast<std::size_t>(t.n) * t.n);
    for (auto& v : t.dist_km) v = read_f64(in);
    t.next_hop.resize(static_cast<std::size_t>(t.n) * t.n);
    for (auto& v : t.next_hop) v = read_u32(in);
    return t;
}

} // namespace roadnet

#endif // ROADNET_APSP_HPP
