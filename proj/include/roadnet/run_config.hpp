#ifndef ROADNET_RUN_CONFIG_HPP
#define ROADNET_RUN_CONFIG_HPP

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "roadnet/bench.hpp"
#include "roadnet/io_util.hpp"

namespace roadnet {

/// Full description of one benchmark run. A persisted RunConfig re-executes
/// to identical outputs apart from timing columns.
struct RunConfig {
    std::string nodes_csv;
    std::string edges_csv;
    std::string artifact_dir = "artifacts";
    std::string out_dir = "bench_out";
    CostModel model = CostModel::v1_distance;
    SpeedDivisor divisor = SpeedDivisor::max_speed;
    std::uint32_t trials = 200;
    std::uint64_t seed = 0;
    std::uint32_t k = 5;
    std::vector<double> alphas = {10.0, 100.0};
    std::vector<HeuristicKind> heuristics = {HeuristicKind::euclidean,
                                             HeuristicKind::great_circle};
    // Regime blocks are fixed by the trial protocol (equal quarters
    // none/light/moderate/heavy); listed here so the manifest is explicit.
    bool breakdown = true;

    std::vector<AlgorithmConfig> algorithm_configs() const {
        return paper_configs(model, divisor, alphas, k);
    }
};

inline void write_run_config(std::ostream& out, const RunConfig& c) {
    out << "nodes = " << c.nodes_csv << '\n';
    out << "edges = " << c.edges_csv << '\n';
    out << "artifact_dir = " << c.artifact_dir << '\n';
    out << "out_dir = " << c.out_dir << '\n';
    out << "cost = " << cost_model_name(c.model) << '\n';
    out << "divisor = " << (c.divisor == SpeedDivisor::max_speed ? "max" : "avg") << '\n';
    out << "trials = " << c.trials << '\n';
    out << "seed = " << c.seed << '\n';
    out << "k = " << c.k << '\n';
    out << "alphas = ";
    for (std::size_t i = 0; i < c.alphas.size(); ++i)
        out << (i ? "," : "") << format_double(c.alphas[i]);
    out << '\n';
    out << "heuristics = ";
    for (std::size_t i = 0; i < c.heuristics.size(); ++i)
        out << (i ? "," : "") << heuristic_name(c.heuristics[i]);
    out << '\n';
    out << "regimes = none,light,moderate,heavy\n";
    out << "breakdown = " << (c.breakdown ? "true" : "false") << '\n';
}

inline RunConfig parse_run_config(std::istream& in, const std::string& source) {
    RunConfig c;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw ValidationError(source + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed.front() == '#') continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        auto strip = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            const auto last = s.find_last_not_of(" \t");
            s.erase(last == std::string::npos ? 0 : last + 1);
            return s;
        };
        const std::string key = strip(trimmed.substr(0, eq));
        const std::string value = strip(trimmed.substr(eq + 1));
        auto to_u64 = [&](const std::string& s) -> std::uint64_t {
            try {
                return std::stoull(s);
            } catch (const std::exception&) {
                throw ValidationError(source + ":" + std::to_string(lineno) + ": bad number '" +
                                      s + "' for key '" + key + "'");
            }
        };
        auto to_f64 = [&](const std::string& s) -> double {
            try {
                return std::stod(s);
            } catch (const std::exception&) {
                throw ValidationError(source + ":" + std::to_string(lineno) + ": bad number '" +
                                      s + "' for key '" + key + "'");
            }
        };
        if (key == "nodes") c.nodes_csv = value;
        else if (key == "edges") c.edges_csv = value;
        else if (key == "artifact_dir") c.artifact_dir = value;
        else if (key == "out_dir") c.out_dir = value;
        else if (key == "cost") {
            auto m = parse_cost_model(value);
            if (!m) fail("cost must be v1 or v2");
            c.model = *m;
        } else if (key == "divisor") {
            if (value == "max") c.divisor = SpeedDivisor::max_speed;
            else if (value == "avg") c.divisor = SpeedDivisor::avg_speed;
            else fail("divisor must be max or avg");
        } else if (key == "trials") c.trials = static_cast<std::uint32_t>(to_u64(value));
        else if (key == "seed") c.seed = to_u64(value);
        else if (key == "k") c.k = static_cast<std::uint32_t>(to_u64(value));
        else if (key == "alphas") {
            c.alphas.clear();
            for (const auto& tok : split(value, ',')) c.alphas.push_back(to_f64(tok));
        } else if (key == "heuristics") {
            c.heuristics.clear();
            for (const auto& tok : split(value, ',')) {
                auto h = parse_heuristic(tok);
                if (!h || *h == HeuristicKind::zero) fail("bad heuristic '" + tok + "'");
                c.heuristics.push_back(*h);
            }
        } else if (key == "regimes") {
            if (value != "none,light,moderate,heavy")
                fail("the trial protocol fixes regimes = none,light,moderate,heavy");
        } else if (key == "breakdown") {
            if (value == "true") c.breakdown = true;
            else if (value == "false") c.breakdown = false;
            else fail("breakdown must be true or false");
        } else fail("unknown key '" + key + "'");
    }
    return c;
}

inline std::uint64_t run_config_hash(const RunConfig& c) {
    std::ostringstream os;
    write_run_config(os, c);
    Fnv64 h;
    h.add_str(os.str());
    return h.value();
}

} // namespace roadnet

#endif // ROADNET_RUN_CONFIG_HPP
