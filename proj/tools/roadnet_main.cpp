// roadnet: traffic-aware road-network routing engine and benchmark harness.
//
// Subcommands: validate, synth, preprocess, route, bench, stats.
// Exit codes: 0 success, 2 no path, 3 missing artifact, 4 validation error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "roadnet/apsp.hpp"
#include "roadnet/bench.hpp"
#include "roadnet/run_config.hpp"
#include "roadnet/search.hpp"
#include "roadnet/stats.hpp"
#include "roadnet/synth.hpp"
#include "roadnet/traffic.hpp"
#include "roadnet/yen.hpp"

namespace fs = std::filesystem;
using namespace roadnet;

namespace {

constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoPath = 2;
constexpr int kExitMissingArtifact = 3;
constexpr int kExitValidation = 4;

struct ExitWith {
    int code;
    std::string message;
};

fs::path fw_artifact(const fs::path& dir) { return dir / "fw.bin"; }
fs::path heuristic_artifact(const fs::path& dir, HeuristicKind kind) {
    return dir / (std::string("heuristic_") + heuristic_name(kind) + ".bin");
}
fs::path ksp_artifact(const fs::path& dir, std::uint32_t k) {
    return dir / ("ksp_k" + std::to_string(k) + ".csv");
}

void require_artifact(const fs::path& path) {
    if (!fs::exists(path))
        throw ExitWith{kExitMissingArtifact,
                       "missing artifact '" + path.string() + "' (run `roadnet preprocess` first)"};
}

RoadGraph load_graph_checked(const std::string& nodes, const std::string& edges) {
    if (!fs::exists(nodes)) throw ExitWith{kExitValidation, "no such file: " + nodes};
    if (!fs::exists(edges)) throw ExitWith{kExitValidation, "no such file: " + edges};
    return load_graph_files(nodes, edges);
}

TrafficScenario scenario_from_options(const RoadGraph& graph, const std::string& scenario_file,
                                      const std::string& regime_name, std::uint64_t seed) {
    if (!scenario_file.empty()) {
        auto in = open_input(scenario_file);
        return load_scenario(in, graph, scenario_file);
    }
    const auto kind = TrafficRegime::parse(regime_name);
    if (!kind) throw ExitWith{kExitValidation, "unknown regime '" + regime_name + "'"};
    return sample_scenario(graph, TrafficRegime::named(*kind), seed);
}

// --- validate ----------------------------------------------------------------

int cmd_validate(const std::string& nodes, const std::string& edges) {
    RoadGraph g = load_graph_checked(nodes, edges);
    std::uint32_t missing_speed = 0, multi_speed = 0, multi_type = 0;
    for (const RoadEdge& e : g.edges()) {
        if (e.raw_maxspeeds.empty()) ++missing_speed;
        if (e.raw_maxspeeds.size() > 1) ++multi_speed;
        if (e.road_types.size() > 1) ++multi_type;
    }
    double smin = 0, smax = 0, ssum = 0;
    if (g.edge_count() > 0) {
        smin = smax = g.edge(0).speed_kmh;
        for (const RoadEdge& e : g.edges()) {
            smin = std::min(smin, e.speed_kmh);
            smax = std::max(smax, e.speed_kmh);
            ssum += e.speed_kmh;
        }
    }
    std::printf("nodes=%u\n", g.size());
    std::printf("edges=%u\n", g.edge_count());
    std::printf("parallel_pairs=%u\n", g.parallel_pair_count());
    std::printf("missing_maxspeed=%u\n", missing_speed);
    std::printf("multi_maxspeed=%u\n", multi_speed);
    std::printf("multi_road_type=%u\n", multi_type);
    std::printf("imputed_speed_min=%s\n", format_double(smin).c_str());
    std::printf("imputed_speed_mean=%s\n",
                format_double(g.edge_count() ? ssum / g.edge_count() : 0.0).c_str());
    std::printf("imputed_speed_max=%s\n", format_double(smax).c_str());
    std::printf("graph_hash=%s\n", hex64(g.hash64()).c_str());
    return kExitOk;
}

// --- synth ---------------------------------------------------------------------

int cmd_synth(const SynthOptions& opt, const std::string& nodes, const std::string& edges) {
    RoadGraph g = generate_synthetic_city(opt);
    save_graph_files(g, nodes, edges);
    std::printf("nodes=%u\n", g.size());
    std::printf("edges=%u\n", g.edge_count());
    std::printf("graph_hash=%s\n", hex64(g.hash64()).c_str());
    std::printf("nodes_csv=%s\n", nodes.c_str());
    std::printf("edges_csv=%s\n", edges.c_str());
    return kExitOk;
}

// --- preprocess -----------------------------------------------------------------

std::vector<std::pair<NodeId, NodeId>> load_pairs_file(const std::string& path) {
    auto in = open_input(path);
    CsvReader r(in, path);
    r.expect_header("src,dst");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::vector<std::string> f;
    while (r.next(f)) {
        r.require_columns(f, 2);
        pairs.emplace_back(r.parse_u64(f[0], "src"), r.parse_u64(f[1], "dst"));
    }
    return pairs;
}

int cmd_preprocess(const std::string& kind, const std::string& nodes, const std::string& edges,
                   const std::string& artifact_dir, const std::string& heuristic,
                   const std::string& pairs_file, bool all_pairs, std::uint32_t k) {
    RoadGraph g = load_graph_checked(nodes, edges);
    const std::uint64_t hash = g.hash64();
    DirLock lock{artifact_dir};

    if (kind == "fw") {
        auto tables = floyd_warshall(distance_view(g));
        const auto path = fw_artifact(artifact_dir);
        save_apsp(path, tables, hash);
        std::printf("artifact=%s\n", path.string().c_str());
        std::printf("build_time_s=%s\n", format_double(tables.build_time_s).c_str());
    } else if (kind == "heuristic") {
        const auto hk = parse_heuristic(heuristic);
        if (!hk || *hk == HeuristicKind::zero)
            throw ExitWith{kExitValidation,
                           "preprocess --kind heuristic needs --heuristic euclidean|greatcircle"};
        auto table = build_heuristic_table(g, *hk);
        const auto path = heuristic_artifact(artifact_dir, *hk);
        save_heuristic_table(path, table, hash);
        std::printf("artifact=%s\n", path.string().c_str());
        std::printf("build_time_s=%s\n", format_double(table.build_time_s).c_str());
    } else if (kind == "ksp") {
        std::vector<std::pair<NodeId, NodeId>> pairs;
        if (!pairs_file.empty()) {
            pairs = load_pairs_file(pairs_file);
        } else if (all_pairs) {
            if (g.size() > 1000)
                throw ExitWith{kExitValidation,
                               "all-pairs KSP preprocessing is guarded above 1000 nodes; "
                               "pass --pairs with the pairs you actually need"};
            for (NodeIndex i = 0; i < g.size(); ++i)
                for (NodeIndex j = 0; j < g.size(); ++j)
                    if (i != j) pairs.emplace_back(g.node_id(i), g.node_id(j));
        } else {
            throw ExitWith{kExitValidation,
                           "ksp preprocessing needs --pairs FILE (or --all-pairs on small graphs)"};
        }
        const auto path = ksp_artifact(artifact_dir, k);
        auto store = preprocess_pairs(distance_view(g), pairs, k, path, hash, &std::cerr);
        std::printf("artifact=%s\n", path.string().c_str());
        std::printf("pairs=%zu\n", store.size());
        std::printf("build_time_s=%s\n", format_double(store.build_time_s).c_str());
    } else {
        throw ExitWith{kExitValidation, "preprocess kind must be fw, heuristic, or ksp"};
    }
    std::printf("graph_hash=%s\n", hex64(hash).c_str());
    return kExitOk;
}

// --- route ----------------------------------------------------------------------

void print_route(const RouteResult& r, const char* algo, CostModel model, bool with_expanded) {
    std::printf("status=ok\n");
    std::printf("algo=%s\n", algo);
    std::string path;
    for (std::size_t i = 0; i < r.path.size(); ++i)
        path += (i ? "-" : "") + std::to_string(r.path[i]);
    std::printf("path=%s\n", path.c_str());
    std::printf("cost=%s\n", format_double(r.cost).c_str());
    std::printf("cost_units=%s\n", cost_units(model));
    std::printf("length_km=%s\n", format_double(r.length_km).c_str());
    std::printf("eta_min=%s\n", format_double(r.eta_min).c_str());
    if (with_expanded) std::printf("expanded=%llu\n", static_cast<unsigned long long>(r.expanded));
    std::printf("runtime_s=%.9f\n", r.runtime_s);
}

int cmd_route(const std::string& nodes, const std::string& edges, NodeId src, NodeId dst,
              const std::string& algo, CostModel model, const std::string& heuristic,
              double alpha, SpeedDivisor divisor, const std::string& scenario_file,
              const std::string& regime, std::uint64_t seed, const std::string& artifact_dir,
              bool use_table, std::uint32_t k) {
    RoadGraph g = load_graph_checked(nodes, edges);
    const TrafficScenario scenario = scenario_from_options(g, scenario_file, regime, seed);
    const ResolvedView view = scenario_view(g, scenario, model);

    std::optional<RouteResult> result;
    bool with_expanded = false;
    const auto fill_metrics = [&](std::optional<RouteResult>& r) {
        if (!r) return;
        const PathMetrics m = path_metrics(r->path, view, scenario);
        r->length_km = m.length_km;
        r->eta_min = m.eta_min;
    };
    if (algo == "dijkstra") {
        result = dijkstra(view, src, dst);
        fill_metrics(result);
        with_expanded = true;
    } else if (algo == "astar") {
        const auto hk = parse_heuristic(heuristic);
        if (!hk) throw ExitWith{kExitValidation, "unknown heuristic '" + heuristic + "'"};
        const Heuristic h{*hk, alpha, divisor};
        if (use_table && *hk != HeuristicKind::zero) {
            const auto path = heuristic_artifact(artifact_dir, *hk);
            require_artifact(path);
            const auto table = load_heuristic_table(path, g.hash64());
            result = a_star(view, src, dst, h, table, model);
        } else {
            result = a_star_direct(view, src, dst, h, model);
        }
        fill_metrics(result);
        with_expanded = true;
    } else if (algo == "fw") {
        const auto path = fw_artifact(artifact_dir);
        require_artifact(path);
        const auto tables = load_apsp(path, g.hash64());
        result = lookup_route(tables, view, scenario, src, dst, model);
    } else if (algo == "yen") {
        const auto path = ksp_artifact(artifact_dir, k);
        require_artifact(path);
        const auto store = load_candidate_store(path, g.hash64(), k);
        const auto* entry = store.find(src, dst);
        if (!entry)
            throw ExitWith{kExitMissingArtifact,
                           "pair " + std::to_string(src) + "->" + std::to_string(dst) +
                               " not in candidate store '" + path.string() + "'"};
        if (*entry) result = select_best(**entry, scenario, view, model);
    } else {
        throw ExitWith{kExitValidation, "algo must be dijkstra, astar, fw, or yen"};
    }

    if (!result) {
        std::printf("status=no_path\n");
        std::printf("src=%llu\n", static_cast<unsigned long long>(src));
        std::printf("dst=%llu\n", static_cast<unsigned long long>(dst));
        return kExitNoPath;
    }
    print_route(*result, algo.c_str(), model, with_expanded);
    return kExitOk;
}

// --- bench ----------------------------------------------------------------------

void write_manifest(const fs::path& path, const RunConfig& cfg, const RoadGraph& g,
                    const BenchReport& report) {
    auto out = open_output(path);
    out << "roadnet_version=" << kToolVersion << '\n';
    out << "format_version=" << kArtifactVersion << '\n';
    out << "graph_hash=" << hex64(g.hash64()) << '\n';
    out << "config_hash=" << hex64(run_config_hash(cfg)) << '\n';
    out << "trials=" << report.trial_count << '\n';
    out << "common_solvable=" << report.common_solvable.size() << '\n';
    out << "algorithms=" << report.algos.size() << '\n';
    out << "# configuration\n";
    write_run_config(out, cfg);
}

int cmd_bench(const RunConfig& cfg) {
    if (cfg.nodes_csv.empty() || cfg.edges_csv.empty())
        throw ExitWith{kExitValidation, "bench needs --nodes and --edges (or a config file)"};
    RoadGraph g = load_graph_checked(cfg.nodes_csv, cfg.edges_csv);
    const std::uint64_t hash = g.hash64();
    const auto configs = cfg.algorithm_configs();
    const auto trials = generate_trials(g, cfg.trials, cfg.seed);

    DirLock lock{cfg.artifact_dir};
    const fs::path adir = cfg.artifact_dir;

    // FW tables: load if present, else build and persist.
    std::optional<ApspTables> apsp;
    bool need_fw = false, need_ksp = false;
    std::vector<HeuristicKind> kinds;
    for (const auto& c : configs) {
        if (c.approach == Approach::multi_query_lookup) need_fw = true;
        if (c.approach == Approach::ksp) need_ksp = true;
        if (c.approach == Approach::single_query && c.heuristic.kind != HeuristicKind::zero &&
            std::find(kinds.begin(), kinds.end(), c.heuristic.kind) == kinds.end())
            kinds.push_back(c.heuristic.kind);
    }
    if (need_fw) {
        const auto path = fw_artifact(adir);
        if (fs::exists(path)) {
            apsp = load_apsp(path, hash);
            std::fprintf(stderr, "fw tables: loaded %s\n", path.string().c_str());
        } else {
            apsp = floyd_warshall(distance_view(g));
            save_apsp(path, *apsp, hash);
            std::fprintf(stderr, "fw tables: built in %.3f s\n", apsp->build_time_s);
        }
    }
    std::map<HeuristicKind, HeuristicTable> tables;
    for (HeuristicKind kind : kinds) {
        const auto path = heuristic_artifact(adir, kind);
        if (fs::exists(path)) {
            tables.emplace(kind, load_heuristic_table(path, hash));
            std::fprintf(stderr, "heuristic %s: loaded\n", heuristic_name(kind));
        } else {
            auto t = build_heuristic_table(g, kind);
            save_heuristic_table(path, t, hash);
            std::fprintf(stderr, "heuristic %s: built in %.3f s\n", heuristic_name(kind),
                         t.build_time_s);
            tables.emplace(kind, std::move(t));
        }
    }
    std::optional<CandidateStore> store;
    if (need_ksp) {
        std::vector<std::pair<NodeId, NodeId>> pairs;
        pairs.reserve(trials.size());
        for (const auto& t : trials) pairs.emplace_back(t.src, t.dst);
        store = preprocess_pairs(distance_view(g), pairs, cfg.k, ksp_artifact(adir, cfg.k), hash,
                                 &std::cerr);
        std::fprintf(stderr, "ksp store: %zu pairs, cumulative build %.3f s\n", store->size(),
                     store->build_time_s);
    }

    PreparedArtifacts art;
    art.apsp = apsp ? &*apsp : nullptr;
    if (auto it = tables.find(HeuristicKind::euclidean); it != tables.end())
        art.euclidean = &it->second;
    if (auto it = tables.find(HeuristicKind::great_circle); it != tables.end())
        art.great_circle = &it->second;
    art.candidates = store ? &*store : nullptr;

    const BenchReport report = run_benchmark(g, configs, trials, art);
    const auto stat_rows = benchmark_stats(report);

    const fs::path out_dir = cfg.out_dir;
    fs::create_directories(out_dir);
    {
        auto out = open_output(out_dir / "report.csv");
        write_report_csv(out, report, cfg.breakdown);
    }
    {
        auto out = open_output(out_dir / "trials.csv");
        write_trials_csv(out, report);
    }
    {
        auto out = open_output(out_dir / "stats.csv");
        write_stats_csv(out, stat_rows);
    }
    {
        auto out = open_output(out_dir / "report.txt");
        write_report_text(out, report, cfg.breakdown);
    }
    write_manifest(out_dir / "manifest.txt", cfg, g, report);

    std::printf("out_dir=%s\n", out_dir.string().c_str());
    std::printf("trials=%u\n", report.trial_count);
    std::printf("common_solvable=%zu\n", report.common_solvable.size());
    std::printf("algorithms=%zu\n", report.algos.size());
    std::printf("config_hash=%s\n", hex64(run_config_hash(cfg)).c_str());
    return kExitOk;
}

// --- stats ----------------------------------------------------------------------

int cmd_stats(const std::string& trials_csv, const std::string& out_csv) {
    auto in = open_input(trials_csv);
    CsvReader r(in, trials_csv);
    r.expect_header(kTrialsHeader);
    BenchReport report;
    std::vector<std::string> order;
    std::vector<std::string> f;
    while (r.next(f)) {
        r.require_columns(f, 8);
        TrialRecord rec;
        rec.trial_id = static_cast<std::uint32_t>(r.parse_u64(f[0], "trial_id"));
        rec.algorithm = f[1];
        rec.solved = true;
        rec.cost = r.parse_double(f[3], "cost");
        report.records.push_back(rec);
        if (std::find(order.begin(), order.end(), f[1]) == order.end()) order.push_back(f[1]);
    }
    for (const auto& label : order) {
        AlgoSummary s;
        s.label = label;
        report.algos.push_back(std::move(s));
    }
    const auto rows = benchmark_stats(report);
    auto out = open_output(out_csv);
    write_stats_csv(out, rows);
    std::printf("stats_csv=%s\n", out_csv.c_str());
    std::printf("tests=%zu\n", rows.size());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"traffic-aware road-network routing engine and benchmark harness"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string nodes, edges;
    std::string artifact_dir = "artifacts";

    // validate
    auto* validate = app.add_subcommand("validate", "check graph CSVs and print dataset statistics");
    validate->add_option("--nodes", nodes, "nodes.csv path")->required();
    validate->add_option("--edges", edges, "edges.csv path")->required();

    // synth
    SynthOptions synth_opt;
    std::string synth_nodes = "nodes.csv", synth_edges = "edges.csv";
    auto* synth = app.add_subcommand("synth", "generate a synthetic grid city");
    synth->add_option("--rows", synth_opt.rows, "grid rows (>= 2)");
    synth->add_option("--cols", synth_opt.cols, "grid cols (>= 2)");
    synth->add_option("--seed", synth_opt.seed, "generator seed");
    synth->add_option("--detour", synth_opt.detour_factor, "max per-edge detour factor (>= 1)");
    synth->add_option("--p-oneway", synth_opt.p_oneway, "one-way street probability");
    synth->add_option("--p-diagonal", synth_opt.p_diagonal, "diagonal street probability");
    synth->add_option("--p-parallel", synth_opt.p_parallel, "parallel edge probability");
    synth->add_option("--p-remove", synth_opt.p_remove, "street removal probability");
    synth->add_option("--nodes", synth_nodes, "output nodes.csv");
    synth->add_option("--edges", synth_edges, "output edges.csv");

    // preprocess
    std::string pre_kind, pre_heuristic, pre_pairs;
    bool pre_all_pairs = false;
    std::uint32_t pre_k = 5;
    auto* preprocess = app.add_subcommand("preprocess", "build and persist artifacts");
    preprocess->add_option("--kind", pre_kind, "fw | heuristic | ksp")->required();
    preprocess->add_option("--nodes", nodes, "nodes.csv path")->required();
    preprocess->add_option("--edges", edges, "edges.csv path")->required();
    preprocess->add_option("--artifacts", artifact_dir, "artifact directory");
    preprocess->add_option("--heuristic", pre_heuristic, "euclidean | greatcircle");
    preprocess->add_option("--pairs", pre_pairs, "CSV of src,dst pairs for ksp");
    preprocess->add_flag("--all-pairs", pre_all_pairs, "allow all-pairs ksp on small graphs");
    preprocess->add_option("--k", pre_k, "candidate paths per pair");

    // route
    NodeId r_src = 0, r_dst = 0;
    std::string r_algo = "dijkstra", r_heuristic = "euclidean", r_scenario, r_regime = "none";
    std::string r_cost = "v1", r_divisor = "max";
    double r_alpha = 1.0;
    std::uint64_t r_seed = 0;
    std::uint32_t r_k = 5;
    bool r_table = false;
    auto* route = app.add_subcommand("route", "find one route and print it as key=value lines");
    route->add_option("--nodes", nodes, "nodes.csv path")->required();
    route->add_option("--edges", edges, "edges.csv path")->required();
    route->add_option("--src", r_src, "source node id")->required();
    route->add_option("--dst", r_dst, "destination node id")->required();
    route->add_option("--algo", r_algo, "dijkstra | astar | fw | yen");
    route->add_option("--cost", r_cost, "v1 | v2");
    route->add_option("--heuristic", r_heuristic, "zero | euclidean | greatcircle (astar)");
    route->add_option("--alpha", r_alpha, "heuristic inflation (astar, >= 1)");
    route->add_option("--divisor", r_divisor, "max | avg (v2 heuristic divisor)");
    route->add_option("--scenario", r_scenario, "scenario.csv to replay instead of sampling");
    route->add_option("--regime", r_regime, "none | light | moderate | heavy");
    route->add_option("--seed", r_seed, "scenario seed");
    route->add_option("--artifacts", artifact_dir, "artifact directory (fw/yen/table)");
    route->add_flag("--table", r_table, "use the persisted heuristic table artifact");
    route->add_option("--k", r_k, "candidate store K (yen)");

    // bench
    std::string b_config, b_nodes, b_edges, b_out, b_artifacts, b_cost, b_divisor, b_alphas;
    std::int64_t b_trials = -1, b_seed = -1, b_k = -1;
    auto* bench = app.add_subcommand("bench", "run the full benchmark protocol");
    bench->add_option("--config", b_config, "key=value run config file");
    bench->add_option("--nodes", b_nodes, "nodes.csv path");
    bench->add_option("--edges", b_edges, "edges.csv path");
    bench->add_option("--out", b_out, "output directory");
    bench->add_option("--artifacts", b_artifacts, "artifact directory");
    bench->add_option("--trials", b_trials, "trial count (multiple of 4)");
    bench->add_option("--seed", b_seed, "master seed");
    bench->add_option("--cost", b_cost, "v1 | v2");
    bench->add_option("--divisor", b_divisor, "max | avg");
    bench->add_option("--k", b_k, "KSP candidate count");
    bench->add_option("--alphas", b_alphas, "comma-separated inflation factors");

    // stats
    std::string s_trials, s_out = "stats.csv";
    auto* stats = app.add_subcommand("stats", "recompute significance tests from a trials.csv");
    stats->add_option("--trials", s_trials, "per-trial costs CSV from bench")->required();
    stats->add_option("--out", s_out, "output stats CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(nodes, edges);
        if (synth->parsed()) return cmd_synth(synth_opt, synth_nodes, synth_edges);
        if (preprocess->parsed())
            return cmd_preprocess(pre_kind, nodes, edges, artifact_dir, pre_heuristic, pre_pairs,
                                  pre_all_pairs, pre_k);
        if (route->parsed()) {
            const auto model = parse_cost_model(r_cost);
            if (!model) throw ExitWith{kExitValidation, "cost must be v1 or v2"};
            SpeedDivisor divisor = SpeedDivisor::max_speed;
            if (r_divisor == "avg") divisor = SpeedDivisor::avg_speed;
            else if (r_divisor != "max") throw ExitWith{kExitValidation, "divisor must be max or avg"};
            if (r_alpha < 1.0) throw ExitWith{kExitValidation, "alpha must be >= 1"};
            return cmd_route(nodes, edges, r_src, r_dst, r_algo, *model, r_heuristic, r_alpha,
                             divisor, r_scenario, r_regime, r_seed, artifact_dir, r_table, r_k);
        }
        if (bench->parsed()) {
            RunConfig cfg;
            if (!b_config.empty()) {
                auto in = open_input(b_config);
                cfg = parse_run_config(in, b_config);
            }
            if (!b_nodes.empty()) cfg.nodes_csv = b_nodes;
            if (!b_edges.empty()) cfg.edges_csv = b_edges;
            if (!b_out.empty()) cfg.out_dir = b_out;
            if (!b_artifacts.empty()) cfg.artifact_dir = b_artifacts;
            if (b_trials >= 0) cfg.trials = static_cast<std::uint32_t>(b_trials);
            if (b_seed >= 0) cfg.seed = static_cast<std::uint64_t>(b_seed);
            if (b_k >= 0) cfg.k = static_cast<std::uint32_t>(b_k);
            if (!b_cost.empty()) {
                auto m = parse_cost_model(b_cost);
                if (!m) throw ExitWith{kExitValidation, "cost must be v1 or v2"};
                cfg.model = *m;
            }
            if (!b_divisor.empty()) {
                if (b_divisor == "max") cfg.divisor = SpeedDivisor::max_speed;
                else if (b_divisor == "avg") cfg.divisor = SpeedDivisor::avg_speed;
                else throw ExitWith{kExitValidation, "divisor must be max or avg"};
            }
            if (!b_alphas.empty()) {
                cfg.alphas.clear();
                for (const auto& tok : split(b_alphas, ',')) cfg.alphas.push_back(std::stod(tok));
            }
            return cmd_bench(cfg);
        }
        if (stats->parsed()) return cmd_stats(s_trials, s_out);
    } catch (const ExitWith& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const ArtifactError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
