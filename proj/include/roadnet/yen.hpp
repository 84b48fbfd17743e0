#ifndef ROADNET_YEN_HPP
#define ROADNET_YEN_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <unordered_set>
#include <vector>

#include "roadnet/io_util.hpp"
#include "roadnet/search.hpp"
#include "roadnet/traffic.hpp"
#include "roadnet/view.hpp"

namespace roadnet {

/// The K cheapest loopless paths between one ordered node pair, sorted by
/// (distance, lexicographic vertex sequence). paths[0] is the Dijkstra path.
struct CandidateSet {
    struct Candidate {
        std::vector<NodeId> path;
        double distance_km = 0.0;
    };

    NodeId src = 0;
    NodeId dst = 0;
    std::uint32_t k_requested = 0;
    std::vector<Candidate> paths;
};

namespace detail {

struct SpurResult {
    std::vector<NodeIndex> path;
    double cost = 0.0;
};

inline std::uint64_t arc_key(NodeIndex u, NodeIndex v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Dijkstra with vertex and arc masks; same tie-break as the main search.
inline std::optional<SpurResult> masked_dijkstra(
    const ResolvedView& view, NodeIndex src, NodeIndex dst,
    const std::vector<char>& banned_vertex,
    const std::unordered_set<std::uint64_t>& banned_arcs) {
    constexpr double kInf = std::numeric_limits<double>::max();
    const NodeIndex n = view.size();
    std::vector<double> g(n, kInf);
    std::vector<NodeIndex> parent(n, kNoNode);
    std::priority_queue<FrontierEntry, std::vector<FrontierEntry>, FrontierWorse> frontier;
    g[src] = 0.0;
    frontier.push({0.0, 0.0, src});
    while (!frontier.empty()) {
        const FrontierEntry e = frontier.top();
        frontier.pop();
        if (e.g != g[e.v]) continue;
        if (e.v == dst) {
            SpurResult r;
            r.cost = e.g;
            for (NodeIndex v = dst; v != kNoNode; v = parent[v]) r.path.push_back(v);
            std::reverse(r.path.begin(), r.path.end());
            return r;
        }
        for (const ViewArc& arc : view.arcs(e.v)) {
            if (banned_vertex[arc.to]) continue;
            if (!banned_arcs.empty() && banned_arcs.contains(arc_key(e.v, arc.to))) continue;
            const double ng = e.g + arc.cost;
            if (ng < g[arc.to]) {
                g[arc.to] = ng;
                parent[arc.to] = e.v;
                frontier.push({ng, ng, arc.to});
            }
        }
    }
    return std::nullopt;
}

// Left-to-right arc-cost sum; candidates generated from different spur splits
// of the same vertex sequence get bit-identical distances this way.
inline double path_cost(const ResolvedView& view, const std::vector<NodeIndex>& path) {
    double sum = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i)
        sum += view.find_arc(path[i - 1], path[i])->cost;
    return sum;
}

struct PoolLess {
    bool operator()(const std::pair<double, std::vector<NodeIndex>>& a,
                    const std::pair<double, std::vector<NodeIndex>>& b) const {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    }
};

} // namespace detail

/// Yen's construction over the distance-resolved view: Dijkstra for the
/// first path, then spur deviations from each accepted path with the shared
/// root's arcs and vertices masked out. Deterministic via the
/// (distance, lexicographic sequence) tie-break. nullopt when dst is
/// unreachable; fewer than K paths when fewer exist.
inline std::optional<CandidateSet> yen_k_shortest(const ResolvedView& view, NodeId src,
                                                  NodeId dst, std::uint32_t k) {
    if (k == 0) throw DomainError("yen_k_shortest requires K >= 1");
    const RoadGraph& graph = view.graph();
    const NodeIndex s = detail::require_node(graph, src, "source");
    const NodeIndex d = detail::require_node(graph, dst, "destination");

    std::vector<char> no_banned_vertices(view.size(), 0);
    std::unordered_set<std::uint64_t> no_banned_arcs;
    auto first = detail::masked_dijkstra(view, s, d, no_banned_vertices, no_banned_arcs);
    if (!first) return std::nullopt;

    std::vector<std::pair<double, std::vector<NodeIndex>>> accepted;
    accepted.emplace_back(first->cost, std::move(first->path));
    std::set<std::pair<double, std::vector<NodeIndex>>, detail::PoolLess> pool;

    std::vector<char> banned_vertex(view.size(), 0);
    while (accepted.size() < k) {
        const auto& prev = accepted.back().second;
        // Spur from every non-terminal vertex of the newest accepted path.
        for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
            const NodeIndex spur = prev[i];
            std::unordered_set<std::uint64_t> banned_arcs;
            for (const auto& [cost, p] : accepted) {
                if (p.size() <= i + 1) continue;
                if (!std::equal(prev.begin(), prev.begin() + i + 1, p.begin())) continue;
                banned_arcs.insert(detail::arc_key(p[i], p[i + 1]));
            }
            for (std::size_t j = 0; j < i; ++j) banned_vertex[prev[j]] = 1;

            auto spur_path = detail::masked_dijkstra(view, spur, d, banned_vertex, banned_arcs);
            if (spur_path) {
                std::vector<NodeIndex> total(prev.begin(), prev.begin() + i);
                total.insert(total.end(), spur_path->path.begin(), spur_path->path.end());
                pool.emplace(detail::path_cost(view, total), std::move(total));
            }
            for (std::size_t j = 0; j < i; ++j) banned_vertex[prev[j]] = 0;
        }
        if (pool.empty()) break;
        accepted.push_back(std::move(pool.extract(pool.begin()).value()));
    }

    CandidateSet out;
    out.src = src;
    out.dst = dst;
    out.k_requested = k;
    out.paths.reserve(accepted.size());
    for (const auto& [cost, p] : accepted) {
        CandidateSet::Candidate c;
        c.distance_km = cost;
        c.path.reserve(p.size());
        for (NodeIndex v : p) c.path.push_back(graph.node_id(v));
        out.paths.push_back(std::move(c));
    }
    return out;
}

/// Runtime re-ranking: evaluates every candidate under the scenario and
/// returns the one minimizing the model's cost; ties go to the earliest
/// (cheapest-by-distance) candidate. Runtime covers exactly the K metric
/// evaluations plus the argmin.
inline std::optional<RouteResult> select_best(const CandidateSet& candidates,
                                              const TrafficScenario& scenario,
                                              const ResolvedView& eval_view, CostModel model) {
    if (candidates.paths.empty()) return std::nullopt;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t best = 0;
    double best_cost = 0.0;
    PathMetrics best_metrics;
    for (std::size_t i = 0; i < candidates.paths.size(); ++i) {
        const PathMetrics m = path_metrics(candidates.paths[i].path, eval_view, scenario);
        const double c = metric_cost(m, model);
        if (i == 0 || c < best_cost) {
            best = i;
            best_cost = c;
            best_metrics = m;
        }
    }
    RouteResult r;
    r.path = candidates.paths[best].path;
    r.cost = best_cost;
    r.length_km = best_metrics.length_km;
    r.eta_min = best_metrics.eta_min;
    r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// --- candidate store ---------------------------------------------------------
// CSV, one row per candidate path: src,dst,k_index,distance_km,path with the
// path '-'-joined. NoPath pairs are first-class records with k_index = -1, so
// "no solution" is distinguishable from "not computed yet". Appends only.

inline constexpr std::string_view kKspHeader = "src,dst,k_index,distance_km,path";

class CandidateStore {
public:
    /// nullopt-valued entry = recorded NoPath.
    using Entry = std::optional<CandidateSet>;

    bool contains(NodeId src, NodeId dst) const { return entries_.count({src, dst}) > 0; }

    const Entry* find(NodeId src, NodeId dst) const {
        auto it = entries_.find({src, dst});
        return it == entries_.end() ? nullptr : &it->second;
    }

    void put(NodeId src, NodeId dst, Entry e) { entries_[{src, dst}] = std::move(e); }

    std::size_t size() const { return entries_.size(); }

    const std::map<std::pair<NodeId, NodeId>, Entry>& entries() const { return entries_; }

    /// Cumulative wall time spent computing the stored candidate sets.
    double build_time_s = 0.0;

private:
    std::map<std::pair<NodeId, NodeId>, Entry> entries_;
};

inline void write_ksp_meta(std::ostream& out, std::uint64_t graph_hash, std::uint32_t k) {
    out << "# roadnet-ksp v" << kArtifactVersion << '\n';
    out << "# graph_hash=" << hex64(graph_hash) << '\n';
    out << "# k=" << k << '\n';
    out << kKspHeader << '\n';
}

inline void append_ksp_entry(std::ostream& out, NodeId src, NodeId dst,
                             const CandidateStore::Entry& e) {
    if (!e) {
        out << src << ',' << dst << ",-1,,\n";
        return;
    }
    for (std::size_t i = 0; i < e->paths.size(); ++i) {
        const auto& c = e->paths[i];
        out << src << ',' << dst << ',' << i << ',' << format_double(c.distance_km) << ',';
        for (std::size_t j = 0; j < c.path.size(); ++j)
            out << (j ? "-" : "") << c.path[j];
        out << '\n';
    }
}

inline CandidateStore load_candidate_store(const std::filesystem::path& path,
                                           std::uint64_t expected_graph_hash,
                                           std::uint32_t expected_k) {
    auto in = open_input(path);
    CandidateStore store;
    std::string line;
    bool hash_ok = false, k_ok = false;
    // Metadata comments precede the header.
    while (in.peek() == '#') {
        std::getline(in, line);
        if (line.rfind("# graph_hash=", 0) == 0) {
            if (line.substr(13) != hex64(expected_graph_hash))
                throw ArtifactError(path.string() + ": graph hash mismatch");
            hash_ok = true;
        } else if (line.rfind("# k=", 0) == 0) {
            if (line.substr(4) != std::to_string(expected_k))
                throw ArtifactError(path.string() + ": store built with different K");
            k_ok = true;
        }
    }
    if (!hash_ok || !k_ok)
        throw ArtifactError(path.string() + ": missing store metadata (graph_hash/k)");
    CsvReader r(in, path.string());
    r.expect_header(kKspHeader);
    std::map<std::pair<NodeId, NodeId>, CandidateStore::Entry> parsed;
    std::vector<std::string> f;
    while (r.next(f)) {
        r.require_columns(f, 5);
        const NodeId src = r.parse_u64(f[0], "src");
        const NodeId dst = r.parse_u64(f[1], "dst");
        const std::int64_t k_index = r.parse_i64(f[2], "k_index");
        if (k_index < 0) {
            parsed[{src, dst}] = std::nullopt;
            continue;
        }
        auto it = parsed.find({src, dst});
        if (it == parsed.end()) {
            CandidateSet cs;
            cs.src = src;
            cs.dst = dst;
            cs.k_requested = expected_k;
            it = parsed.emplace(std::make_pair(src, dst), std::move(cs)).first;
        }
        if (!it->second || static_cast<std::size_t>(k_index) != it->second->paths.size())
            r.fail("candidate rows out of order for pair");
        CandidateSet::Candidate c;
        c.distance_km = r.parse_double(f[3], "distance_km");
        for (const auto& tok : split(f[4], '-')) c.path.push_back(r.parse_u64(tok, "path node"));
        it->second->paths.push_back(std::move(c));
    }
    for (auto& [pair, entry] : parsed) store.put(pair.first, pair.second, std::move(entry));
    return store;
}

/// Computes (or resumes) candidate sets for the given pairs, appending each
/// finished pair to the store file before moving on. Already-stored pairs
/// are skipped; NoPath outcomes are recorded, not errors. Returns the loaded
/// + newly computed store; build_time_s accumulates across resumed runs via
/// the sidecar meta file.
inline CandidateStore preprocess_pairs(const ResolvedView& view,
                                       std::span<const std::pair<NodeId, NodeId>> pairs,
                                       std::uint32_t k, const std::filesystem::path& store_path,
                                       std::uint64_t graph_hash,
                                       std::ostream* progress = nullptr) {
    namespace fs = std::filesystem;
    CandidateStore store;
    const fs::path meta_path = store_path.string() + ".meta";
    if (fs::exists(store_path)) {
        store = load_candidate_store(store_path, graph_hash, k);
        if (fs::exists(meta_path)) {
            auto min = open_input(meta_path);
            std::string l;
            while (std::getline(min, l))
                if (l.rfind("build_time_s=", 0) == 0) store.build_time_s = std::stod(l.substr(13));
        }
    } else {
        auto out = open_output(store_path);
        write_ksp_meta(out, graph_hash, k);
    }

    auto out = open_output(store_path, std::ios::app);
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t done = 0, computed = 0;
    for (const auto& [src, dst] : pairs) {
        ++done;
        if (store.contains(src, dst)) continue;
        CandidateStore::Entry entry = yen_k_shortest(view, src, dst, k);
        append_ksp_entry(out, src, dst, entry);
        out.flush();
        if (!out) throw ArtifactError("failed appending to " + store_path.string() + " at pair " +
                                      std::to_string(src) + "->" + std::to_string(dst));
        store.put(src, dst, std::move(entry));
        ++computed;
        if (progress && computed % 64 == 0)
            *progress << "ksp preprocess: " << done << "/" << pairs.size() << " pairs\n";
    }
    store.build_time_s +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto mout = open_output(meta_path);
    mout << "graph_hash=" << hex64(graph_hash) << '\n';
    mout << "k=" << k << '\n';
    mout << "build_time_s=" << format_double(store.build_time_s) << '\n';
    return store;
}

} // namespace roadnet

#endif // ROADNET_YEN_HPP
