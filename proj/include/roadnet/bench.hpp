#ifndef ROADNET_BENCH_HPP
#define ROADNET_BENCH_HPP

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "roadnet/apsp.hpp"
#include "roadnet/search.hpp"
#include "roadnet/stats.hpp"
#include "roadnet/traffic.hpp"
#include "roadnet/yen.hpp"

namespace roadnet {

/// One benchmark trial: a start-goal pair plus the regime and seed its
/// traffic scenario is drawn from.
struct TrialSpec {
    std::uint32_t trial_id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    TrafficRegime regime;
    std::uint64_t scenario_seed = 0;
};

/// Samples 2n distinct endpoint vertices (partial Fisher-Yates under the
/// pinned PRNG), pairs them in order, and assigns regimes in equal quarters
/// none/light/moderate/heavy. Scenario seeds are seed XOR trial id, so each
/// trial draws a fresh scenario.
inline std::vector<TrialSpec> generate_trials(const RoadGraph& graph, std::uint32_t n,
                                              std::uint64_t seed) {
    if (n == 0 || n % 4 != 0) throw DomainError("trial count must be a positive multiple of 4");
    if (2ull * n > graph.size())
        throw DomainError("need " + std::to_string(2 * n) + " distinct endpoint vertices but the graph has " +
                          std::to_string(graph.size()));
    Rng rng(substream(seed, "trials"));
    std::vector<NodeIndex> ix(graph.size());
    std::iota(ix.begin(), ix.end(), 0);
    for (std::uint32_t i = 0; i < 2 * n; ++i) {
        const auto j = i + static_cast<std::uint32_t>(rng.below(ix.size() - i));
        std::swap(ix[i], ix[j]);
    }
    std::vector<TrialSpec> trials(n);
    const std::uint32_t quarter = n / 4;
    for (std::uint32_t t = 0; t < n; ++t) {
        trials[t].trial_id = t;
        trials[t].src = graph.node_id(ix[2 * t]);
        trials[t].dst = graph.node_id(ix[2 * t + 1]);
        trials[t].regime = TrafficRegime::named(kAllRegimes[t / quarter]);
        trials[t].scenario_seed = seed ^ t;
    }
    return trials;
}

enum class Approach : std::uint8_t { multi_query_lookup, single_query, ksp };

inline const char* approach_name(Approach a) {
    switch (a) {
        case Approach::multi_query_lookup: return "multi_query_lookup";
        case Approach::single_query: return "single_query";
        case Approach::ksp: return "ksp";
    }
    return "?";
}

struct AlgorithmConfig {
    Approach approach = Approach::single_query;
    std::string label;
    Heuristic heuristic;       // single_query only
    std::uint32_t k = 5;       // ksp only
    CostModel model = CostModel::v1_distance;
};

/// The nine benchmark rows: FW lookup, Dijkstra, A* per heuristic kind,
/// inflated A* per (kind, alpha), and Yen's re-ranking.
inline std::vector<AlgorithmConfig> paper_configs(CostModel model, SpeedDivisor divisor,
                                                  std::span<const double> alphas,
                                                  std::uint32_t k) {
    std::vector<AlgorithmConfig> configs;
    configs.push_back({Approach::multi_query_lookup, "floyd_warshall", {}, 0, model});
    configs.push_back(
        {Approach::single_query, "dijkstra", {HeuristicKind::zero, 1.0, divisor}, 0, model});
    constexpr std::array<HeuristicKind, 2> kinds = {HeuristicKind::euclidean,
                                                    HeuristicKind::great_circle};
    for (HeuristicKind kind : kinds)
        configs.push_back({Approach::single_query, std::string("astar_") + heuristic_name(kind),
                           {kind, 1.0, divisor}, 0, model});
    for (HeuristicKind kind : kinds)
        for (double alpha : alphas) {
            char suffix[32];
            std::snprintf(suffix, sizeof suffix, "_a%g", alpha);
            configs.push_back({Approach::single_query,
                               std::string("astar_") + heuristic_name(kind) + suffix,
                               {kind, alpha, divisor}, 0, model});
        }
    configs.push_back({Approach::ksp, "yen_k" + std::to_string(k), {}, k, model});
    return configs;
}

struct TrialRecord {
    std::uint32_t trial_id = 0;
    std::string algorithm;
    TrafficRegime::Kind regime = TrafficRegime::Kind::none;
    bool solved = false;
    double cost = 0.0;
    double length_km = 0.0;
    double eta_min = 0.0;
    double runtime_s = 0.0;
    bool has_expanded = false;
    std::uint64_t expanded = 0;
};

struct AlgoSummary {
    Approach approach = Approach::single_query;
    std::string label;
    double preprocessing_min = 0.0;
    double avg_runtime_s = 0.0;
    double avg_cost = 0.0;
    double avg_length_km = 0.0;
    double avg_eta_min = 0.0;
    bool has_expanded = false;
    double avg_expanded = 0.0;
    std::uint32_t solved = 0;
    std::uint32_t unsolved = 0;
    std::array<double, 4> regime_avg_cost{};  // indexed by TrafficRegime::Kind
};

struct BenchReport {
    std::vector<AlgoSummary> algos;
    std::vector<TrialRecord> records;          // common-solvable trials, by (trial, config order)
    std::vector<std::uint32_t> common_solvable;  // trial ids
    std::uint32_t trial_count = 0;
};

/// Everything run_benchmark consumes must already be built; preprocessing
/// time is carried on the artifacts themselves.
struct PreparedArtifacts {
    const ApspTables* apsp = nullptr;
    const HeuristicTable* euclidean = nullptr;
    const HeuristicTable* great_circle = nullptr;
    const CandidateStore* candidates = nullptr;

    const HeuristicTable* table(HeuristicKind kind) const {
        switch (kind) {
            case HeuristicKind::euclidean: return euclidean;
            case HeuristicKind::great_circle: return great_circle;
            case HeuristicKind::zero: return nullptr;
        }
        return nullptr;
    }
};

namespace detail {

inline std::optional<RouteResult> run_query(const AlgorithmConfig& cfg,
                                            const PreparedArtifacts& art,
                                            const ResolvedView& eval_view,
                                            const TrafficScenario& scenario,
                                            const TrialSpec& trial) {
    switch (cfg.approach) {
        case Approach::multi_query_lookup:
            return lookup_route(*art.apsp, eval_view, scenario, trial.src, trial.dst, cfg.model);
        case Approach::single_query: {
            auto res = cfg.heuristic.kind == HeuristicKind::zero
                           ? dijkstra(eval_view, trial.src, trial.dst)
                           : a_star(eval_view, trial.src, trial.dst, cfg.heuristic,
                                    *art.table(cfg.heuristic.kind), cfg.model);
            if (res) {
                // length/eta are reporting metrics, evaluated outside the timed search
                const PathMetrics m = path_metrics(res->path, eval_view, scenario);
                res->length_km = m.length_km;
                res->eta_min = m.eta_min;
            }
            return res;
        }
        case Approach::ksp: {
            const auto* entry = art.candidates->find(trial.src, trial.dst);
            if (!entry || !*entry) return std::nullopt;
            return select_best(**entry, scenario, eval_view, cfg.model);
        }
    }
    return std::nullopt;
}

inline void validate_bench_inputs(std::span<const AlgorithmConfig> configs,
                                  std::span<const TrialSpec> trials,
                                  const PreparedArtifacts& art) {
    std::vector<std::string> labels;
    for (const auto& cfg : configs) {
        if (std::find(labels.begin(), labels.end(), cfg.label) != labels.end())
            throw DomainError("duplicate algorithm label '" + cfg.label + "'");
        labels.push_back(cfg.label);
        switch (cfg.approach) {
            case Approach::multi_query_lookup:
                if (!art.apsp) throw Error("config '" + cfg.label + "': APSP tables not prepared");
                break;
            case Approach::single_query:
                if (cfg.heuristic.kind != HeuristicKind::zero && !art.table(cfg.heuristic.kind))
                    throw Error("config '" + cfg.label + "': heuristic table not prepared");
                break;
            case Approach::ksp:
                if (!art.candidates)
                    throw Error("config '" + cfg.label + "': candidate store not prepared");
                for (const auto& t : trials)
                    if (!art.candidates->contains(t.src, t.dst))
                        throw Error("config '" + cfg.label + "': trial pair " +
                                    std::to_string(t.src) + "->" + std::to_string(t.dst) +
                                    " missing from candidate store");
                break;
        }
    }
}

} // namespace detail

/// Executes every (trial, config) query sequentially on one thread (honest
/// timings), with one discarded warm-up query per config. Averages cover only
/// the trials every config solved; unsolvable trials are excluded from all
/// averages symmetrically and surface in the unsolved counts.
inline BenchReport run_benchmark(const RoadGraph& graph, std::span<const AlgorithmConfig> configs,
                                 std::span<const TrialSpec> trials,
                                 const PreparedArtifacts& art) {
    detail::validate_bench_inputs(configs, trials, art);
    BenchReport report;
    report.trial_count = static_cast<std::uint32_t>(trials.size());

    // All records first, common-solvable filtering after.
    std::vector<std::vector<TrialRecord>> per_trial(trials.size());
    bool warmed_up = false;
    for (std::size_t ti = 0; ti < trials.size(); ++ti) {
        const TrialSpec& trial = trials[ti];
        const TrafficScenario scenario = sample_scenario(graph, trial.regime, trial.scenario_seed);
        std::map<CostModel, ResolvedView> views;
        for (const auto& cfg : configs)
            if (!views.count(cfg.model)) views.emplace(cfg.model, scenario_view(graph, scenario, cfg.model));
        if (!warmed_up) {
            for (const auto& cfg : configs)
                (void)detail::run_query(cfg, art, views.at(cfg.model), scenario, trial);
            warmed_up = true;
        }
        for (const auto& cfg : configs) {
            auto res = detail::run_query(cfg, art, views.at(cfg.model), scenario, trial);
            TrialRecord rec;
            rec.trial_id = trial.trial_id;
            rec.algorithm = cfg.label;
            rec.regime = trial.regime.kind;
            rec.solved = res.has_value();
            if (res) {
                rec.cost = res->cost;
                rec.length_km = res->length_km;
                rec.eta_min = res->eta_min;
                rec.runtime_s = res->runtime_s;
                if (cfg.approach == Approach::single_query) {
                    rec.has_expanded = true;
                    rec.expanded = res->expanded;
                }
            }
            per_trial[ti].push_back(std::move(rec));
        }
    }

    std::vector<bool> common(trials.size());
    for (std::size_t ti = 0; ti < trials.size(); ++ti) {
        common[ti] = std::all_of(per_trial[ti].begin(), per_trial[ti].end(),
                                 [](const TrialRecord& r) { return r.solved; });
        if (common[ti]) report.common_solvable.push_back(trials[ti].trial_id);
    }

    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        AlgoSummary s;
        s.approach = configs[ci].approach;
        s.label = configs[ci].label;
        s.has_expanded = configs[ci].approach == Approach::single_query;
        std::array<double, 4> regime_cost_sum{};
        std::array<std::uint32_t, 4> regime_n{};
        double runtime_sum = 0, cost_sum = 0, length_sum = 0, eta_sum = 0, expanded_sum = 0;
        std::uint32_t n_avg = 0;
        for (std::size_t ti = 0; ti < trials.size(); ++ti) {
            const TrialRecord& rec = per_trial[ti][ci];
            if (rec.solved) ++s.solved; else ++s.unsolved;
            if (!common[ti]) continue;
            ++n_avg;
            runtime_sum += rec.runtime_s;
            cost_sum += rec.cost;
            length_sum += rec.length_km;
            eta_sum += rec.eta_min;
            expanded_sum += static_cast<double>(rec.expanded);
            const auto ri = static_cast<std::size_t>(rec.regime);
            regime_cost_sum[ri] += rec.cost;
            ++regime_n[ri];
        }
        if (n_avg > 0) {
            s.avg_runtime_s = runtime_sum / n_avg;
            s.avg_cost = cost_sum / n_avg;
            s.avg_length_km = length_sum / n_avg;
            s.avg_eta_min = eta_sum / n_avg;
            s.avg_expanded = expanded_sum / n_avg;
        }
        for (std::size_t ri = 0; ri < 4; ++ri)
            s.regime_avg_cost[ri] = regime_n[ri] ? regime_cost_sum[ri] / regime_n[ri] : 0.0;
        report.algos.push_back(std::move(s));
    }

    // preprocessing_min comes off the artifacts each config used
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        const auto& cfg = configs[ci];
        double secs = 0.0;
        if (cfg.approach == Approach::multi_query_lookup) secs = art.apsp->build_time_s;
        else if (cfg.approach == Approach::ksp) secs = art.candidates->build_time_s;
        else if (cfg.heuristic.kind != HeuristicKind::zero)
            secs = art.table(cfg.heuristic.kind)->build_time_s;
        report.algos[ci].preprocessing_min = secs / 60.0;
    }

    // per-trial records for the common-solvable set only, ordered by trial
    for (std::size_t ti = 0; ti < trials.size(); ++ti) {
        if (!common[ti]) continue;
        for (auto& rec : per_trial[ti]) report.records.push_back(std::move(rec));
    }
    return report;
}

// --- statistics over the report ---------------------------------------------

struct StatRow {
    std::string test;
    std::string algo_a;
    std::string algo_b;
    TestResult result;
};

/// ANOVA over all algorithms' cost lists, then paired t-test and Wilcoxon
/// signed-rank per algorithm pair. All tests see the identical
/// common-solvable pairing, ordered by trial id.
inline std::vector<StatRow> benchmark_stats(const BenchReport& report) {
    std::vector<std::string> labels;
    for (const auto& a : report.algos) labels.push_back(a.label);
    std::map<std::string, std::vector<double>> costs;
    for (const auto& rec : report.records) costs[rec.algorithm].push_back(rec.cost);

    std::vector<StatRow> rows;
    std::vector<std::vector<double>> groups;
    for (const auto& l : labels) groups.push_back(costs[l]);
    if (!groups.empty() && groups.front().size() >= 2 && groups.size() >= 2)
        rows.push_back({"anova", "all", "all", one_way_anova(groups)});
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            const auto& a = costs[labels[i]];
            const auto& b = costs[labels[j]];
            if (a.size() < 2) continue;
            rows.push_back({"paired_t", labels[i], labels[j], paired_t_test(a, b)});
            rows.push_back({"wilcoxon", labels[i], labels[j], wilcoxon_signed_rank(a, b)});
        }
    return rows;
}

// --- rendering ----------------------------------------------------------------

inline constexpr std::string_view kReportHeader =
    "approach,algorithm,preprocessing_min,avg_runtime_s,avg_cost,avg_expanded,avg_length_km,"
    "avg_eta_min,solved,unsolved";
inline constexpr std::string_view kTrialsHeader =
    "trial_id,algorithm,regime,cost,length_km,eta_min,runtime_s,expanded";
inline constexpr std::string_view kStatsHeader = "test,algo_a,algo_b,statistic,p_value,degenerate";

inline void write_report_csv(std::ostream& out, const BenchReport& report, bool breakdown) {
    out << kReportHeader;
    if (breakdown)
        for (auto kind : kAllRegimes)
            out << ",avg_cost_" << TrafficRegime::named(kind).name();
    out << '\n';
    for (const auto& a : report.algos) {
        out << approach_name(a.approach) << ',' << a.label << ','
            << format_fixed(a.preprocessing_min, 6) << ',' << format_fixed(a.avg_runtime_s, 9)
            << ',' << format_double(a.avg_cost) << ','
            << (a.has_expanded ? format_fixed(a.avg_expanded, 2) : "-") << ','
            << format_double(a.avg_length_km) << ',' << format_double(a.avg_eta_min) << ','
            << a.solved << ',' << a.unsolved;
        if (breakdown)
            for (std::size_t ri = 0; ri < 4; ++ri) out << ',' << format_double(a.regime_avg_cost[ri]);
        out << '\n';
    }
}

inline void write_trials_csv(std::ostream& out, const BenchReport& report) {
    out << kTrialsHeader << '\n';
    for (const auto& r : report.records) {
        out << r.trial_id << ',' << r.algorithm << ',' << TrafficRegime::named(r.regime).name()
            << ',' << format_double(r.cost) << ',' << format_double(r.length_km) << ','
            << format_double(r.eta_min) << ',' << format_fixed(r.runtime_s, 9) << ',';
        if (r.has_expanded) out << r.expanded;
        else out << '-';
        out << '\n';
    }
}

inline void write_stats_csv(std::ostream& out, std::span<const StatRow> rows) {
    out << kStatsHeader << '\n';
    for (const auto& r : rows)
        out << r.test << ',' << r.algo_a << ',' << r.algo_b << ','
            << format_double(r.result.statistic) << ',' << format_double(r.result.p_value) << ','
            << (r.result.degenerate ? 1 : 0) << '\n';
}

/// Human-readable aligned table mirroring report.csv.
inline void write_report_text(std::ostream& out, const BenchReport& report, bool breakdown) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header = {"approach",   "algorithm",  "prep_min", "avg_runtime_s",
                                       "avg_cost",   "avg_expanded", "avg_length_km",
                                       "avg_eta_min", "solved",    "unsolved"};
    if (breakdown)
        for (auto kind : kAllRegimes)
            header.push_back(std::string("cost_") + TrafficRegime::named(kind).name());
    cells.push_back(header);
    for (const auto& a : report.algos) {
        std::vector<std::string> row = {approach_name(a.approach),
                                        a.label,
                                        format_fixed(a.preprocessing_min, 4),
                                        format_fixed(a.avg_runtime_s, 9),
                                        format_fixed(a.avg_cost, 4),
                                        a.has_expanded ? format_fixed(a.avg_expanded, 1) : "-",
                                        format_fixed(a.avg_length_km, 4),
                                        format_fixed(a.avg_eta_min, 4),
                                        std::to_string(a.solved),
                                        std::to_string(a.unsolved)};
        if (breakdown)
            for (std::size_t ri = 0; ri < 4; ++ri)
                row.push_back(format_fixed(a.regime_avg_cost[ri], 4));
        cells.push_back(std::move(row));
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
        }
        out << '\n';
    }
}

} // namespace roadnet

#endif // ROADNET_BENCH_HPP
