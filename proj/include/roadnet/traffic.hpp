#ifndef ROADNET_TRAFFIC_HPP
#define ROADNET_TRAFFIC_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "roadnet/graph.hpp"
#include "roadnet/rng.hpp"
#include "roadnet/view.hpp"

namespace roadnet {

/// Discrete congestion multiplier: low/medium/high traffic.
enum class TrafficWeight : std::uint8_t { w1 = 1, w3 = 3, w5 = 5 };

inline int weight_value(TrafficWeight w) { return static_cast<int>(w); }

inline std::optional<TrafficWeight> parse_weight(std::uint64_t v) {
    switch (v) {
        case 1: return TrafficWeight::w1;
        case 3: return TrafficWeight::w3;
        case 5: return TrafficWeight::w5;
        default: return std::nullopt;
    }
}

/// Named distribution over traffic weights. Probabilities are exact
/// rationals (num/den) so the moderate regime's thirds carry no rounding.
struct TrafficRegime {
    enum class Kind : std::uint8_t { none = 0, light = 1, moderate = 2, heavy = 3 };

    Kind kind = Kind::none;
    std::uint64_t num1 = 1, num3 = 0, num5 = 0, den = 1;

    static TrafficRegime named(Kind k) {
        switch (k) {
            case Kind::none:     return {k, 1, 0, 0, 1};
            case Kind::light:    return {k, 7, 2, 1, 10};
            case Kind::moderate: return {k, 1, 1, 1, 3};
            case Kind::heavy:    return {k, 2, 3, 5, 10};
        }
        throw DomainError("bad regime kind");
    }

    static std::optional<Kind> parse(std::string_view name) {
        if (name == "none") return Kind::none;
        if (name == "light") return Kind::light;
        if (name == "moderate") return Kind::moderate;
        if (name == "heavy") return Kind::heavy;
        return std::nullopt;
    }

    const char* name() const {
        switch (kind) {
            case Kind::none: return "none";
            case Kind::light: return "light";
            case Kind::moderate: return "moderate";
            case Kind::heavy: return "heavy";
        }
        return "?";
    }

    double p1() const { return static_cast<double>(num1) / static_cast<double>(den); }
    double p3() const { return static_cast<double>(num3) / static_cast<double>(den); }
    double p5() const { return static_cast<double>(num5) / static_cast<double>(den); }

    /// Classifies one uniform 64-bit draw by exact rational thresholds on the
    /// unit interval: r/2^64 < num1/den -> w1, < (num1+num3)/den -> w3, else w5.
    TrafficWeight classify(std::uint64_t r) const {
        const auto lhs = static_cast<unsigned __int128>(r) * den;
        if (lhs < static_cast<unsigned __int128>(num1) << 64) return TrafficWeight::w1;
        if (lhs < static_cast<unsigned __int128>(num1 + num3) << 64) return TrafficWeight::w3;
        return TrafficWeight::w5;
    }
};

inline constexpr std::array<TrafficRegime::Kind, 4> kAllRegimes = {
    TrafficRegime::Kind::none, TrafficRegime::Kind::light,
    TrafficRegime::Kind::moderate, TrafficRegime::Kind::heavy};

/// One traffic weight per multigraph edge, indexed by canonical edge order.
/// Regeneration from (graph, regime, seed) is bit-identical.
struct TrafficScenario {
    TrafficRegime regime;
    std::uint64_t seed = 0;
    std::vector<TrafficWeight> weights;

    TrafficWeight weight(std::uint32_t edge_ix) const { return weights[edge_ix]; }
};

/// Independent per-edge draws from the regime, streamed by (seed, canonical
/// edge index). Counter-based, so evaluation order never matters.
inline TrafficScenario sample_scenario(const RoadGraph& graph, TrafficRegime regime,
                                       std::uint64_t seed) {
    TrafficScenario s;
    s.regime = regime;
    s.seed = seed;
    s.weights.resize(graph.edge_count());
    for (std::uint32_t ei = 0; ei < graph.edge_count(); ++ei)
        s.weights[ei] = regime.classify(draw_at(seed, ei));
    return s;
}

inline constexpr std::string_view kScenarioHeader = "u,v,key,weight";

inline void save_scenario(std::ostream& out, const RoadGraph& graph,
                          const TrafficScenario& s) {
    out << kScenarioHeader << '\n';
    for (std::uint32_t ei = 0; ei < graph.edge_count(); ++ei) {
        const RoadEdge& e = graph.edge(ei);
        out << e.from << ',' << e.to << ',' << e.key << ',' << weight_value(s.weight(ei))
            << '\n';
    }
}

/// Loads a fixed scenario in place of generation. Every graph edge must get
/// exactly one weight.
inline TrafficScenario load_scenario(std::istream& in, const RoadGraph& graph,
                                     const std::string& source = "scenario.csv") {
    TrafficScenario s;
    s.regime = TrafficRegime::named(TrafficRegime::Kind::none);
    s.weights.assign(graph.edge_count(), TrafficWeight::w1);
    std::vector<bool> seen(graph.edge_count(), false);
    CsvReader r(in, source);
    r.expect_header(kScenarioHeader);
    std::vector<std::string> f;
    while (r.next(f)) {
        r.require_columns(f, 4);
        const NodeId u = r.parse_u64(f[0], "u");
        const NodeId v = r.parse_u64(f[1], "v");
        const auto key = static_cast<std::uint32_t>(r.parse_u64(f[2], "key"));
        const auto ei = graph.find_edge(u, v, key);
        if (!ei) r.fail("scenario row for unknown edge");
        if (seen[*ei]) r.fail("duplicate scenario row for edge");
        const auto w = parse_weight(r.parse_u64(f[3], "weight"));
        if (!w) r.fail("weight must be 1, 3, or 5");
        seen[*ei] = true;
        s.weights[*ei] = *w;
    }
    for (std::uint32_t ei = 0; ei < graph.edge_count(); ++ei)
        if (!seen[ei])
            throw ValidationError(source + ": no weight for edge " +
                                  std::to_string(graph.edge(ei).from) + "->" +
                                  std::to_string(graph.edge(ei).to) + " (key " +
                                  std::to_string(graph.edge(ei).key) + ")");
    return s;
}

/// Edge cost models. V1 weighs distance by traffic (kilometers); V2 also
/// divides by the speed limit, giving traffic-adjusted travel time (minutes).
enum class CostModel : std::uint8_t { v1_distance, v2_time };

inline std::optional<CostModel> parse_cost_model(std::string_view s) {
    if (s == "v1") return CostModel::v1_distance;
    if (s == "v2") return CostModel::v2_time;
    return std::nullopt;
}

inline const char* cost_model_name(CostModel m) {
    return m == CostModel::v1_distance ? "v1" : "v2";
}

inline const char* cost_units(CostModel m) {
    return m == CostModel::v1_distance ? "km" : "min";
}

inline double edge_cost(CostModel model, TrafficWeight w, double length_m, double speed_kmh) {
    if (!(length_m > 0.0)) throw DomainError("edge_cost: non-positive length");
    if (!(speed_kmh > 0.0)) throw DomainError("edge_cost: non-positive speed");
    const double weighted_km = weight_value(w) * length_m / 1000.0;
    if (model == CostModel::v1_distance) return weighted_km;
    return 60.0 * weighted_km / speed_kmh;
}

/// View resolved by the scenario's traffic-weighted cost under `model`; arc
/// costs are in the model's units.
inline ResolvedView scenario_view(const RoadGraph& graph, const TrafficScenario& scenario,
                                  CostModel model) {
    return resolve_parallel(graph, [&](const RoadEdge& e, std::uint32_t ei) {
        return edge_cost(model, scenario.weight(ei), e.length_m, e.speed_kmh);
    });
}

struct PathMetrics {
    double length_km = 0.0;
    double cost_v1_km = 0.0;
    double eta_min = 0.0;
};

inline double metric_cost(const PathMetrics& m, CostModel model) {
    return model == CostModel::v1_distance ? m.cost_v1_km : m.eta_min;
}

/// Length, traffic-weighted cost, and ETA of a vertex path over the view's
/// chosen edges. A single-vertex path sums to zero.
inline PathMetrics path_metrics(std::span<const NodeId> path, const ResolvedView& view,
                                const TrafficScenario& scenario) {
    const RoadGraph& g = view.graph();
    PathMetrics m;
    if (path.empty()) return m;
    NodeIndex prev = g.node_index(path[0]);
    if (prev == kNoNode)
        throw InvalidPathError("path vertex " + std::to_string(path[0]) + " not in graph");
    for (std::size_t i = 1; i < path.size(); ++i) {
        const NodeIndex cur = g.node_index(path[i]);
        if (cur == kNoNode)
            throw InvalidPathError("path vertex " + std::to_string(path[i]) + " not in graph");
        const ViewArc* arc = view.find_arc(prev, cur);
        if (!arc)
            throw InvalidPathError("no edge " + std::to_string(path[i - 1]) + "->" +
                                   std::to_string(path[i]) + " in resolved view");
        const RoadEdge& e = g.edge(arc->edge_ix);
        const int w = weight_value(scenario.weight(arc->edge_ix));
        const double d_km = e.length_m / 1000.0;
        m.length_km += d_km;
        m.cost_v1_km += w * d_km;
        m.eta_min += 60.0 * w * d_km / e.speed_kmh;
        prev = cur;
    }
    return m;
}

} // namespace roadnet

#endif // ROADNET_TRAFFIC_HPP
