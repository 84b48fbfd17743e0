#ifndef ROADNET_SEARCH_HPP
#define ROADNET_SEARCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "roadnet/io_util.hpp"
#include "roadnet/traffic.hpp"
#include "roadnet/view.hpp"

namespace roadnet {

enum class HeuristicKind : std::uint8_t { zero = 0, euclidean = 1, great_circle = 2 };

inline std::optional<HeuristicKind> parse_heuristic(std::string_view s) {
    if (s == "zero") return HeuristicKind::zero;
    if (s == "euclidean") return HeuristicKind::euclidean;
    if (s == "greatcircle" || s == "great_circle") return HeuristicKind::great_circle;
    return std::nullopt;
}

inline const char* heuristic_name(HeuristicKind k) {
    switch (k) {
        case HeuristicKind::zero: return "zero";
        case HeuristicKind::euclidean: return "euclidean";
        case HeuristicKind::great_circle: return "greatcircle";
    }
    return "?";
}

/// Speed used to convert a distance lower bound into a time lower bound for
/// V2 costs. max_speed keeps the heuristic admissible; avg_speed is a
/// compatibility mode that can overestimate and lose optimality.
enum class SpeedDivisor : std::uint8_t { max_speed, avg_speed };

struct Heuristic {
    HeuristicKind kind = HeuristicKind::zero;
    double alpha = 1.0;  // inflation factor; 1 = uninflated
    SpeedDivisor divisor = SpeedDivisor::max_speed;
};

inline double point_heuristic_m(HeuristicKind kind, const GeoPoint& a, const GeoPoint& b) {
    switch (kind) {
        case HeuristicKind::zero: return 0.0;
        case HeuristicKind::euclidean: return euclidean_chord_m(a, b);
        case HeuristicKind::great_circle: return great_circle_m(a, b);
    }
    return 0.0;
}

/// All-pairs distance lower bounds in meters, symmetric with zero diagonal.
struct HeuristicTable {
    HeuristicKind kind = HeuristicKind::zero;
    NodeIndex n = 0;
    std::vector<NodeId> ordering;  // dense index -> node id, as in the graph
    std::vector<double> values_m;  // n * n row-major
    double build_time_s = 0.0;

    double value_m(NodeIndex a, NodeIndex b) const {
        return values_m[static_cast<std::size_t>(a) * n + b];
    }
};

inline HeuristicTable build_heuristic_table(const RoadGraph& graph, HeuristicKind kind) {
    const auto t0 = std::chrono::steady_clock::now();
    HeuristicTable t;
    t.kind = kind;
    t.n = graph.size();
    t.ordering.assign(graph.node_ids().begin(), graph.node_ids().end());
    t.values_m.assign(static_cast<std::size_t>(t.n) * t.n, 0.0);
    for (NodeIndex i = 0; i < t.n; ++i)
        for (NodeIndex j = i + 1; j < t.n; ++j) {
            const double v = point_heuristic_m(kind, graph.position(i), graph.position(j));
            t.values_m[static_cast<std::size_t>(i) * t.n + j] = v;
            t.values_m[static_cast<std::size_t>(j) * t.n + i] = v;
        }
    t.build_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return t;
}

/// Scale from a heuristic's meters to cost units: km for V1, minutes per the
/// configured divisor speed for V2.
inline double heuristic_scale(CostModel model, const RoadGraph& graph, SpeedDivisor divisor) {
    if (model == CostModel::v1_distance) return 1.0 / 1000.0;
    const double speed =
        divisor == SpeedDivisor::max_speed ? graph.max_speed_kmh() : graph.avg_speed_kmh();
    if (!(speed > 0.0)) throw DomainError("heuristic divisor speed not available");
    return 60.0 / 1000.0 / speed;
}

/// Search outcome: path as node ids plus the metrics the benchmark reports.
/// cost is in the model's units; length/eta are filled by the caller from
/// path_metrics when a scenario is in play.
struct RouteResult {
    std::vector<NodeId> path;
    double cost = 0.0;
    double length_km = 0.0;
    double eta_min = 0.0;
    std::uint64_t expanded = 0;  // 0 when not applicable (lookup/KSP approaches)
    double runtime_s = 0.0;
};

namespace detail {

struct FrontierEntry {
    double f;
    double g;
    NodeIndex v;
};

// Pops lowest f first; ties prefer larger g, then smaller vertex id. Fully
// deterministic, so expanded counts are pinned across runs and platforms.
struct FrontierWorse {
    bool operator()(const FrontierEntry& a, const FrontierEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.v > b.v;
    }
};

// Best-first core shared by Dijkstra (h = 0) and A*. Priority f = g + alpha*h.
// Vertices re-enter the frontier whenever g improves, and re-expansions are
// counted; with an inadmissible h (avg-speed divisor) that is what keeps the
// result a valid path at all.
template <typename HFn>
std::optional<RouteResult> best_first_search(const ResolvedView& view, NodeIndex src,
                                             NodeIndex dst, HFn&& h, double alpha) {
    const auto t0 = std::chrono::steady_clock::now();
    constexpr double kInf = std::numeric_limits<double>::max();
    const NodeIndex n = view.size();
    std::vector<double> g(n, kInf);
    std::vector<NodeIndex> parent(n, kNoNode);
    std::priority_queue<FrontierEntry, std::vector<FrontierEntry>, FrontierWorse> frontier;

    g[src] = 0.0;
    frontier.push({alpha * h(src), 0.0, src});
    std::uint64_t expanded = 0;

    while (!frontier.empty()) {
        const FrontierEntry e = frontier.top();
        frontier.pop();
        if (e.g != g[e.v]) continue;  // stale entry: a better g has been found
        ++expanded;
        if (e.v == dst) {
            RouteResult r;
            r.cost = e.g;
            r.expanded = expanded;
            for (NodeIndex v = dst; v != kNoNode; v = parent[v])
                r.path.push_back(view.graph().node_id(v));
            std::reverse(r.path.begin(), r.path.end());
            r.runtime_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return r;
        }
        for (const ViewArc& arc : view.arcs(e.v)) {
            const double ng = e.g + arc.cost;
            if (ng < g[arc.to]) {
                g[arc.to] = ng;
                parent[arc.to] = e.v;
                frontier.push({ng + alpha * h(arc.to), ng, arc.to});
            }
        }
    }
    return std::nullopt;
}

inline NodeIndex require_node(const RoadGraph& g, NodeId id, const char* role) {
    const NodeIndex ix = g.node_index(id);
    if (ix == kNoNode)
        throw DomainError(std::string(role) + " node " + std::to_string(id) + " not in graph");
    return ix;
}

} // namespace detail

/// Cost-minimal path with early exit once the destination is settled.
/// Returns nullopt when dst is unreachable. expanded counts settled vertices.
inline std::optional<RouteResult> dijkstra(const ResolvedView& view, NodeId src, NodeId dst) {
    const NodeIndex s = detail::require_node(view.graph(), src, "source");
    const NodeIndex d = detail::require_node(view.graph(), dst, "destination");
    return detail::best_first_search(view, s, d, [](NodeIndex) { return 0.0; }, 1.0);
}

/// A* with a precomputed lower-bound table. With alpha = 1 and an admissible
/// heuristic the cost matches dijkstra exactly; with alpha > 1 the cost is
/// bounded by alpha times the optimum.
inline std::optional<RouteResult> a_star(const ResolvedView& view, NodeId src, NodeId dst,
                                         const Heuristic& h, const HeuristicTable& table,
                                         CostModel model) {
    const NodeIndex s = detail::require_node(view.graph(), src, "source");
    const NodeIndex d = detail::require_node(view.graph(), dst, "destination");
    if (h.kind == HeuristicKind::zero)
        return detail::best_first_search(view, s, d, [](NodeIndex) { return 0.0; }, 1.0);
    if (table.kind != h.kind || table.n != view.size())
        throw ArtifactError("heuristic table does not match the requested heuristic/graph");
    const double scale = heuristic_scale(model, view.graph(), h.divisor);
    return detail::best_first_search(
        view, s, d, [&](NodeIndex v) { return table.value_m(v, d) * scale; }, h.alpha);
}

/// A* computing heuristic values straight from node coordinates (no table).
inline std::optional<RouteResult> a_star_direct(const ResolvedView& view, NodeId src, NodeId dst,
                                                const Heuristic& h, CostModel model) {
    const NodeIndex s = detail::require_node(view.graph(), src, "source");
    const NodeIndex d = detail::require_node(view.graph(), dst, "destination");
    if (h.kind == HeuristicKind::zero)
        return detail::best_first_search(view, s, d, [](NodeIndex) { return 0.0; }, 1.0);
    const double scale = heuristic_scale(model, view.graph(), h.divisor);
    const RoadGraph& g = view.graph();
    const GeoPoint goal = g.position(d);
    return detail::best_first_search(
        view, s, d,
        [&](NodeIndex v) { return point_heuristic_m(h.kind, g.position(v), goal) * scale; },
        h.alpha);
}

// --- heuristic table persistence ------------------------------------------

inline constexpr std::uint32_t kHeuristicMagic = 0x544E4852;  // "RHNT" little-endian
inline constexpr std::uint32_t kArtifactVersion = 1;

inline void save_heuristic_table(const std::filesystem::path& path, const HeuristicTable& t,
                                 std::uint64_t graph_hash) {
    auto out = open_output(path, std::ios::binary);
    write_u32(out, kHeuristicMagic);
    write_u32(out, kArtifactVersion);
    write_u64(out, graph_hash);
    write_f64(out, t.build_time_s);
    write_u32(out, static_cast<std::uint32_t>(t.kind));
    write_u64(out, t.n);
    for (NodeId id : t.ordering) write_u64(out, id);
    for (double v : t.values_m) write_f64(out, v);
    if (!out) throw ArtifactError("failed writing heuristic table to " + path.string());
}

inline HeuristicTable load_heuristic_table(const std::filesystem::path& path,
                                           std::uint64_t expected_graph_hash) {
    auto in = open_input(path, std::ios::binary);
    if (read_u32(in) != kHeuristicMagic)
        throw ArtifactError(path.string() + ": not a heuristic table artifact");
    if (read_u32(in) != kArtifactVersion)
        throw ArtifactError(path.string() + ": unsupported artifact version");
    const std::uint64_t hash = read_u64(in);
    if (hash != expected_graph_hash)
        throw ArtifactError(path.string() + ": graph hash mismatch (artifact " + hex64(hash) +
                            ", graph " + hex64(expected_graph_hash) + ")");
    HeuristicTable t;
    t.build_time_s = read_f64(in);
    t.kind = static_cast<HeuristicKind>(read_u32(in));
    t.n = static_cast<NodeIndex>(read_u64(in));
    t.ordering.resize(t.n);
    for (auto& id : t.ordering) id = read_u64(in);
    t.values_m.resize(static_cast<std::size_t>(t.n) * t.n);
    for (auto& v : t.values_m) v = read_f64(in);
    return t;
}

} // namespace roadnet

#endif // ROADNET_SEARCH_HPP
