#ifndef ROADNET_VIEW_HPP
#define ROADNET_VIEW_HPP

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

#include "roadnet/graph.hpp"

namespace roadnet {

/// One arc of a resolved (simple) digraph view: the parallel edge chosen for
/// an ordered node pair, with its cost under the resolving cost function.
struct ViewArc {
    NodeIndex to = 0;
    std::uint32_t edge_ix = 0;  // canonical edge index in the underlying graph
    double cost = 0.0;
};

/// Cost-dependent simple digraph view over a RoadGraph. For every ordered
/// pair (u, v) with at least one edge, exactly one edge is retained: the one
/// minimizing the resolving cost, ties broken by smallest key. Immutable
/// snapshot; the multigraph itself is never mutated.
class ResolvedView {
public:
    ResolvedView() = default;

    const RoadGraph& graph() const { return *graph_; }
    NodeIndex size() const { return static_cast<NodeIndex>(offsets_.size() - 1); }
    std::uint32_t arc_count() const { return static_cast<std::uint32_t>(arcs_.size()); }

    std::span<const ViewArc> arcs(NodeIndex u) const {
        return {arcs_.data() + offsets_[u], arcs_.data() + offsets_[u + 1]};
    }

    /// Arc u -> v if retained, null otherwise. Arcs are sorted by target.
    const ViewArc* find_arc(NodeIndex u, NodeIndex v) const {
        auto range = arcs(u);
        auto it = std::lower_bound(range.begin(), range.end(), v,
                                   [](const ViewArc& a, NodeIndex t) { return a.to < t; });
        if (it == range.end() || it->to != v) return nullptr;
        return &*it;
    }

    friend ResolvedView resolve_parallel(const RoadGraph&,
                                         const std::function<double(const RoadEdge&, std::uint32_t)>&);

private:
    const RoadGraph* graph_ = nullptr;
    std::vector<ViewArc> arcs_;          // grouped by source, sorted by target
    std::vector<std::uint32_t> offsets_; // size() + 1 CSR offsets
};

/// Collapses parallel edges under `edge_cost(edge, canonical_index)`.
/// Requires imputed speeds on the graph.
inline ResolvedView resolve_parallel(
    const RoadGraph& graph,
    const std::function<double(const RoadEdge&, std::uint32_t)>& edge_cost) {
    if (!graph.speeds_imputed())
        throw DomainError("resolve_parallel requires imputed speeds (call impute_speeds first)");
    ResolvedView view;
    view.graph_ = &graph;
    view.offsets_.assign(graph.size() + 1, 0);
    view.arcs_.reserve(graph.edge_count());
    for (NodeIndex u = 0; u < graph.size(); ++u) {
        // out_edges is sorted by (to, key), so within one target group the
        // first strict minimum is also the smallest key.
        const auto out = graph.out_edges(u);
        std::size_t i = 0;
        while (i < out.size()) {
            const NodeId target = graph.edge(out[i]).to;
            std::uint32_t best_ix = out[i];
            double best_cost = edge_cost(graph.edge(out[i]), out[i]);
            std::size_t j = i + 1;
            for (; j < out.size() && graph.edge(out[j]).to == target; ++j) {
                const double c = edge_cost(graph.edge(out[j]), out[j]);
                if (c < best_cost) {
                    best_cost = c;
                    best_ix = out[j];
                }
            }
            view.arcs_.push_back({graph.node_index(target), best_ix, best_cost});
            i = j;
        }
        view.offsets_[u + 1] = static_cast<std::uint32_t>(view.arcs_.size());
    }
    return view;
}

/// View resolved by pure distance; arc costs are kilometers.
inline ResolvedView distance_view(const RoadGraph& graph) {
    return resolve_parallel(
        graph, [](const RoadEdge& e, std::uint32_t) { return e.length_m / 1000.0; });
}

} // namespace roadnet

#endif // ROADNET_VIEW_HPP
