// geosim: topology generation, single-route tracing, and experiment
// sweeps for geographic routing protocols (greedy, GPSR, ITGR, GLR).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geosim/serialize.hpp"
#include "geosim/simulator.hpp"

namespace fs = std::filesystem;
using namespace geosim;

namespace {

constexpr const char* kToolVersion = "geosim 1.0.0";

// Exit codes: 0 ok, 2 config/argument error, 3 generation failure,
// 4 internal invariant violation.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitGeneration = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed,
                           std::uint64_t config_seed, bool config_has_seed) {
    if (flag_seed) return *flag_seed;
    if (config_has_seed) return config_seed;
    if (const char* env = std::getenv("GEOSIM_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return config_seed;
}

int cmd_generate(const std::string& config_path, const std::string& out_path,
                 const std::optional<std::uint64_t>& seed) {
    GenConfig cfg = gen_config_from_json(read_file(config_path));
    cfg.seed = resolve_seed(seed, cfg.seed, true);
    const Topology t = generate(cfg);
    write_file(out_path, topology_to_json(t));
    return kExitOk;
}

// Multi-send traces go to <stem>_send<k><ext>; the plain out path always
// holds the last send.
std::string send_path(const std::string& out, std::uint32_t k) {
    const fs::path p(out);
    fs::path q = p.parent_path() / (p.stem().string() + "_send" + std::to_string(k));
    q += p.extension();
    return q.string();
}

int cmd_route(const std::string& topo_path, const std::string& proto_name, NodeId src,
              NodeId dst, std::uint32_t repeats, const std::string& out_path,
              const std::string& svg_path) {
    const Topology t = topology_from_json(read_file(topo_path));
    Protocol proto;
    if (!protocol_from_name(proto_name, proto)) {
        throw ConfigError("protocol: unknown protocol \"" + proto_name + "\"");
    }
    if (src >= t.size()) throw UnknownNode("src: node id out of range");
    if (dst >= t.size()) throw UnknownNode("dst: node id out of range");

    TrialState state = TrialState::fresh(t, proto);
    PathRecord last;
    std::vector<std::string> csvs;
    for (std::uint32_t k = 1; k <= repeats; ++k) {
        last = route_once(t, proto, src, dst, state);
        csvs.push_back(trace_to_csv(t, last));
    }
    if (repeats > 1) {
        for (std::uint32_t k = 1; k <= repeats; ++k) {
            write_file(send_path(out_path, k), csvs[k - 1]);
        }
    }
    write_file(out_path, csvs.back());
    if (!svg_path.empty()) {
        write_file(svg_path, topology_to_svg(t, last.trace));
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const std::optional<std::uint64_t>& seed, std::uint32_t threads) {
    const std::string config_text = read_file(config_path);
    ExperimentConfig cfg = experiment_config_from_json(config_text);
    const bool has_seed = nlohmann::json::parse(config_text).contains("master_seed");
    cfg.master_seed = resolve_seed(seed, cfg.master_seed, has_seed);
    cfg.threads = threads;

    fs::create_directories(out_dir);
    std::vector<std::string> emitted;
    try {
        const MetricsTable table = run_experiment(cfg);

        const std::string metrics_path = (fs::path(out_dir) / "metrics.csv").string();
        write_file(metrics_path, metrics_to_csv(table));
        emitted.push_back(metrics_path);

        const std::string repeat_path = (fs::path(out_dir) / "repeat_series.csv").string();
        write_file(repeat_path, repeat_series_to_csv(table));
        emitted.push_back(repeat_path);

        nlohmann::json manifest{{"config_path", config_path},
                                {"out_dir", out_dir},
                                {"emitted", emitted},
                                {"tool_version", kToolVersion},
                                {"master_seed", cfg.master_seed}};
        write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    } catch (...) {
        // No partial result sets: drop whatever was already written.
        for (const auto& f : emitted) {
            std::error_code ec;
            fs::remove(f, ec);
        }
        throw;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geographic routing simulator (greedy / GPSR / ITGR / GLR)"};
    app.require_subcommand(1);

    std::string config_path, out_path, topo_path, svg_path;
    std::string proto_name = "itgr";
    std::uint32_t src = 0, dst = 0, repeats = 1, threads = 1;
    std::optional<std::uint64_t> seed;

    auto* gen = app.add_subcommand("generate", "generate a connected topology");
    gen->add_option("--config", config_path, "generator config JSON")->required();
    gen->add_option("--out", out_path, "output topology JSON")->required();
    gen->add_option("--seed", seed, "override the config seed");

    auto* route = app.add_subcommand("route", "trace packets between two nodes");
    route->add_option("--topology", topo_path, "topology JSON")->required();
    route->add_option("--protocol", proto_name, "greedy|gpsr|itgr|glr");
    route->add_option("--src", src, "source node id")->required();
    route->add_option("--dst", dst, "destination node id")->required();
    route->add_option("--repeats", repeats, "sequential sends (cache persists)")
        ->check(CLI::PositiveNumber);
    route->add_option("--out", out_path, "trace CSV path")->required();
    route->add_option("--svg", svg_path, "also render an SVG of the last trace");

    auto* sweep = app.add_subcommand("sweep", "run the experiment sweep");
    sweep->add_option("--config", config_path, "experiment config JSON")->required();
    sweep->add_option("--out", out_path, "output directory")->required();
    sweep->add_option("--seed", seed, "override the config master seed");
    sweep->add_option("--threads", threads, "worker threads (affects wall time only)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_generate(config_path, out_path, seed);
        if (route->parsed()) {
            return cmd_route(topo_path, proto_name, src, dst, repeats, out_path, svg_path);
        }
        if (sweep->parsed()) return cmd_sweep(config_path, out_path, seed, threads);
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UnknownNode& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const GenerationFailed& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return kExitGeneration;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
