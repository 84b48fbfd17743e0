#ifndef ROADNET_GRAPH_HPP
#define ROADNET_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roadnet/csv.hpp"
#include "roadnet/errors.hpp"
#include "roadnet/geo.hpp"
#include "roadnet/io_util.hpp"

namespace roadnet {

using NodeId = std::uint64_t;
using NodeIndex = std::uint32_t;  // dense index into a graph's sorted node list

inline constexpr NodeIndex kNoNode = UINT32_MAX;

/// One directed road segment. (from, to, key) is unique; key disambiguates
/// parallel edges between the same ordered node pair.
struct RoadEdge {
    NodeId from = 0;
    NodeId to = 0;
    std::uint32_t key = 0;
    double length_m = 0.0;
    std::vector<std::string> road_types;
    std::vector<double> raw_maxspeeds;
    double speed_kmh = 0.0;  // 0 until imputation has run

    bool operator==(const RoadEdge&) const = default;
};

/// Class speed for one road-type tag. Unknown tags fall back to 50 km/h, the
/// same class as 'unclassified'.
inline double road_type_speed_kmh(std::string_view tag) {
    if (tag == "secondary" || tag == "tertiary") return 80.0;
    if (tag == "motorway") return 100.0;
    return 50.0;
}

/// Speed for one edge: the mean of the raw limits when any are present,
/// otherwise the mean of the per-type class speeds.
inline double impute_speed(std::span<const std::string> road_types,
                           std::span<const double> raw_maxspeeds) {
    if (!raw_maxspeeds.empty()) {
        double sum = 0.0;
        for (double v : raw_maxspeeds) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw DomainError("non-positive maxspeed " + std::to_string(v));
            sum += v;
        }
        return sum / static_cast<double>(raw_maxspeeds.size());
    }
    if (road_types.empty())
        throw DomainError("cannot impute speed: no road types and no raw maxspeeds");
    double sum = 0.0;
    for (const auto& tag : road_types) sum += road_type_speed_kmh(tag);
    return sum / static_cast<double>(road_types.size());
}

/// Directed multigraph of intersections and road segments. Immutable after
/// load + imputation; nodes are kept sorted by id and edges in canonical
/// (from, to, key) order, so dense indices are stable across save/load.
class RoadGraph {
public:
    RoadGraph() = default;

    /// Builds a validated graph from node and edge records. Raw speeds are
    /// preserved; call impute_speeds() before deriving views.
    static RoadGraph build(std::vector<std::pair<NodeId, GeoPoint>> nodes,
                           std::vector<RoadEdge> edges) {
        RoadGraph g;
        std::sort(nodes.begin(), nodes.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        g.node_ids_.reserve(nodes.size());
        g.positions_.reserve(nodes.size());
        for (auto& [id, pos] : nodes) {
            if (!g.node_ids_.empty() && g.node_ids_.back() == id)
                throw ValidationError("duplicate node id " + std::to_string(id));
            validate_geo(pos);
            g.node_ids_.push_back(id);
            g.positions_.push_back(pos);
        }

        std::sort(edges.begin(), edges.end(), [](const RoadEdge& a, const RoadEdge& b) {
            return std::tie(a.from, a.to, a.key) < std::tie(b.from, b.to, b.key);
        });
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const RoadEdge& e = edges[i];
            if (!(e.length_m > 0.0) || !std::isfinite(e.length_m))
                throw ValidationError("edge " + edge_name(e) + " has non-positive length " +
                                      std::to_string(e.length_m));
            if (g.node_index(e.from) == kNoNode)
                throw ValidationError("edge " + edge_name(e) + " has dangling endpoint " +
                                      std::to_string(e.from));
            if (g.node_index(e.to) == kNoNode)
                throw ValidationError("edge " + edge_name(e) + " has dangling endpoint " +
                                      std::to_string(e.to));
            if (i > 0 && edges[i - 1].from == e.from && edges[i - 1].to == e.to &&
                edges[i - 1].key == e.key)
                throw ValidationError("duplicate edge " + edge_name(e));
            if (e.speed_kmh != 0.0 && (!(e.speed_kmh > 0.0) || !std::isfinite(e.speed_kmh)))
                throw ValidationError("edge " + edge_name(e) + " has bad speed");
        }
        g.edges_ = std::move(edges);

        g.out_offsets_.assign(g.node_ids_.size() + 1, 0);
        for (const RoadEdge& e : g.edges_) ++g.out_offsets_[g.node_index(e.from) + 1];
        for (std::size_t i = 1; i < g.out_offsets_.size(); ++i)
            g.out_offsets_[i] += g.out_offsets_[i - 1];
        g.out_edges_.resize(g.edges_.size());
        std::vector<std::uint32_t> cursor(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
        for (std::uint32_t ei = 0; ei < g.edges_.size(); ++ei)
            g.out_edges_[cursor[g.node_index(g.edges_[ei].from)]++] = ei;
        return g;
    }

    NodeIndex size() const { return static_cast<NodeIndex>(node_ids_.size()); }
    std::uint32_t edge_count() const { return static_cast<std::uint32_t>(edges_.size()); }

    NodeIndex node_index(NodeId id) const {
        auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), id);
        if (it == node_ids_.end() || *it != id) return kNoNode;
        return static_cast<NodeIndex>(it - node_ids_.begin());
    }
    NodeId node_id(NodeIndex ix) const { return node_ids_[ix]; }
    const GeoPoint& position(NodeIndex ix) const { return positions_[ix]; }
    std::span<const NodeId> node_ids() const { return node_ids_; }

    const RoadEdge& edge(std::uint32_t ei) const { return edges_[ei]; }
    std::span<const RoadEdge> edges() const { return edges_; }

    /// Edge indices leaving node `u` (dense index), in canonical order.
    std::span<const std::uint32_t> out_edges(NodeIndex u) const {
        return {out_edges_.data() + out_offsets_[u], out_edges_.data() + out_offsets_[u + 1]};
    }

    /// Canonical index of the edge (from, to, key), if present.
    std::optional<std::uint32_t> find_edge(NodeId from, NodeId to, std::uint32_t key) const {
        RoadEdge probe;
        probe.from = from; probe.to = to; probe.key = key;
        auto it = std::lower_bound(edges_.begin(), edges_.end(), probe,
                                   [](const RoadEdge& a, const RoadEdge& b) {
                                       return std::tie(a.from, a.to, a.key) <
                                              std::tie(b.from, b.to, b.key);
                                   });
        if (it == edges_.end() || it->from != from || it->to != to || it->key != key)
            return std::nullopt;
        return static_cast<std::uint32_t>(it - edges_.begin());
    }

    bool speeds_imputed() const {
        return std::all_of(edges_.begin(), edges_.end(),
                           [](const RoadEdge& e) { return e.speed_kmh > 0.0; });
    }

    /// Fills speed_kmh on every edge from raw limits or road-type classes.
    void impute_speeds() {
        for (RoadEdge& e : edges_)
            e.speed_kmh = impute_speed(e.road_types, e.raw_maxspeeds);
        max_speed_kmh_ = 0.0;
        double sum = 0.0;
        for (const RoadEdge& e : edges_) {
            max_speed_kmh_ = std::max(max_speed_kmh_, e.speed_kmh);
            sum += e.speed_kmh;
        }
        avg_speed_kmh_ = edges_.empty() ? 0.0 : sum / static_cast<double>(edges_.size());
    }

    double max_speed_kmh() const { return max_speed_kmh_; }
    double avg_speed_kmh() const { return avg_speed_kmh_; }

    /// Number of ordered (u, v) pairs joined by more than one edge.
    std::uint32_t parallel_pair_count() const {
        std::uint32_t pairs = 0;
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].from == edges_[i - 1].from && edges_[i].to == edges_[i - 1].to &&
                (i == 1 || edges_[i - 1].from != edges_[i - 2].from ||
                 edges_[i - 1].to != edges_[i - 2].to))
                ++pairs;
        return pairs;
    }

    /// Fingerprint of nodes, edges, and (post-imputation) speeds. Artifacts
    /// embed this so loading them against a different graph fails loudly.
    std::uint64_t hash64() const {
        Fnv64 h;
        h.add_u64(node_ids_.size());
        for (std::size_t i = 0; i < node_ids_.size(); ++i) {
            h.add_u64(node_ids_[i]);
            h.add_f64(positions_[i].lat_deg);
            h.add_f64(positions_[i].lon_deg);
        }
        h.add_u64(edges_.size());
        for (const RoadEdge& e : edges_) {
            h.add_u64(e.from);
            h.add_u64(e.to);
            h.add_u64(e.key);
            h.add_f64(e.length_m);
            h.add_u64(e.road_types.size());
            for (const auto& t : e.road_types) h.add_str(t);
            h.add_u64(e.raw_maxspeeds.size());
            for (double v : e.raw_maxspeeds) h.add_f64(v);
            h.add_f64(e.speed_kmh);
        }
        return h.value();
    }

private:
    static std::string edge_name(const RoadEdge& e) {
        return std::to_string(e.from) + "->" + std::to_string(e.to) +
               " (key " + std::to_string(e.key) + ")";
    }

    std::vector<NodeId> node_ids_;
    std::vector<GeoPoint> positions_;
    std::vector<RoadEdge> edges_;
    std::vector<std::uint32_t> out_offsets_;
    std::vector<std::uint32_t> out_edges_;
    double max_speed_kmh_ = 0.0;
    double avg_speed_kmh_ = 0.0;
};

inline constexpr std::string_view kNodesHeader = "id,lat,lon";
inline constexpr std::string_view kEdgesHeader = "u,v,key,length_m,road_types,maxspeed";

/// Loads a graph from the documented CSV streams. Raw speeds are preserved
/// (no imputation yet).
inline RoadGraph load_graph(std::istream& nodes_in, std::istream& edges_in,
                            const std::string& nodes_name = "nodes.csv",
                            const std::string& edges_name = "edges.csv") {
    std::vector<std::pair<NodeId, GeoPoint>> nodes;
    {
        CsvReader r(nodes_in, nodes_name);
        r.expect_header(kNodesHeader);
        std::vector<std::string> f;
        while (r.next(f)) {
            r.require_columns(f, 3);
            GeoPoint p{r.parse_double(f[1], "lat"), r.parse_double(f[2], "lon")};
            try {
                validate_geo(p);
            } catch (const ValidationError& e) {
                r.fail(e.what());
            }
            nodes.emplace_back(r.parse_u64(f[0], "node id"), p);
        }
    }
    std::vector<RoadEdge> edges;
    {
        CsvReader r(edges_in, edges_name);
        r.expect_header(kEdgesHeader);
        std::vector<std::string> f;
        while (r.next(f)) {
            r.require_columns(f, 6);
            RoadEdge e;
            e.from = r.parse_u64(f[0], "u");
            e.to = r.parse_u64(f[1], "v");
            e.key = static_cast<std::uint32_t>(r.parse_u64(f[2], "key"));
            e.length_m = r.parse_double(f[3], "length_m");
            e.road_types = split_list(f[4]);
            if (e.road_types.empty()) r.fail("edge has empty road_types");
            for (const auto& cell : split_list(f[5]))
                e.raw_maxspeeds.push_back(r.parse_double(cell, "maxspeed"));
            edges.push_back(std::move(e));
        }
    }
    return RoadGraph::build(std::move(nodes), std::move(edges));
}

inline RoadGraph load_graph_files(const std::filesystem::path& nodes_csv,
                                  const std::filesystem::path& edges_csv,
                                  bool impute = true) {
    auto nin = open_input(nodes_csv);
    auto ein = open_input(edges_csv);
    RoadGraph g = load_graph(nin, ein, nodes_csv.string(), edges_csv.string());
    if (impute) g.impute_speeds();
    return g;
}

inline void save_graph(const RoadGraph& g, std::ostream& nodes_out, std::ostream& edges_out) {
    nodes_out << kNodesHeader << '\n';
    for (NodeIndex i = 0; i < g.size(); ++i) {
        const GeoPoint& p = g.position(i);
        nodes_out << g.node_id(i) << ',' << format_double(p.lat_deg) << ','
                  << format_double(p.lon_deg) << '\n';
    }
    edges_out << kEdgesHeader << '\n';
    for (const RoadEdge& e : g.edges()) {
        edges_out << e.from << ',' << e.to << ',' << e.key << ',' << format_double(e.length_m)
                  << ',';
        for (std::size_t i = 0; i < e.road_types.size(); ++i)
            edges_out << (i ? ";" : "") << e.road_types[i];
        edges_out << ',';
        for (std::size_t i = 0; i < e.raw_maxspeeds.size(); ++i)
            edges_out << (i ? ";" : "") << format_double(e.raw_maxspeeds[i]);
        edges_out << '\n';
    }
}

inline void save_graph_files(const RoadGraph& g, const std::filesystem::path& nodes_csv,
                             const std::filesystem::path& edges_csv) {
    auto nout = open_output(nodes_csv);
    auto eout = open_output(edges_csv);
    save_graph(g, nout, eout);
}

} // namespace roadnet

#endif // ROADNET_GRAPH_HPP
