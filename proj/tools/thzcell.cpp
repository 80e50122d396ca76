// thzcell command-line tool: scenario generation, single solves, batch
// experiments, scaling sweeps and the initial-access simulator.
//
// Exit status: 0 success, 1 configuration/parameter error, 2 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "thzcell/association.hpp"
#include "thzcell/config.hpp"
#include "thzcell/errors.hpp"
#include "thzcell/gwo.hpp"
#include "thzcell/harness.hpp"
#include "thzcell/macsim.hpp"
#include "thzcell/output.hpp"
#include "thzcell/pso.hpp"
#include "thzcell/scenario.hpp"

namespace fs = std::filesystem;
using namespace thzcell;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::string algo = "both";
    int jobs = 1;
    int scenario = 0;
    std::string topology_path;
};

struct Loaded {
    RunConfig config;
    Provenance provenance;
};

Loaded load(const Options& opt) {
    Loaded l;
    const std::string bytes = read_file(opt.config_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParameterError("config", opt.config_path + " is not valid JSON: " + e.what());
    }
    l.config = parse_config(doc);
    auto& exp = l.config.experiment;
    if (opt.seed) exp.base_seed = *opt.seed;
    if (opt.algo == "both") {
        exp.algorithms = {Algorithm::gwo, Algorithm::pso};
    } else {
        exp.algorithms = {parse_algorithm(opt.algo)};
    }
    require(opt.jobs >= 1, "jobs", "must be >= 1");
    exp.jobs = opt.jobs;
    l.provenance = {content_hash(bytes), exp.base_seed};
    return l;
}

fs::path prepare_out(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
    return fs::path(dir);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.close();
    if (!out) throw IoError("error while writing " + path.string());
}

template <class Writer>
void write_with(const fs::path& path, Writer&& writer) {
    std::ostringstream buf;
    writer(buf);
    write_text(path, buf.str());
}

nlohmann::json provenance_json(const Provenance& p) {
    return {{"tool", "thzcell"},
            {"version", kVersion},
            {"config_hash", p.config_hash},
            {"seed", p.seed}};
}

std::string gbps(double bps) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(3);
    os << bps / 1e9 << " Gbps";
    return os.str();
}

std::string ratio(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << v;
    return os.str();
}

int cmd_presets(const Options& opt) {
    const ScenarioPreset p = load_scenario_preset(opt.scenario);
    std::cout << preset_to_json(p).dump(2) << '\n';
    return 0;
}

int cmd_generate(const Options& opt) {
    const Loaded l = load(opt);
    const auto& exp = l.config.experiment;
    const fs::path out = prepare_out(opt.out_dir);
    const Topology topo = generate_topology(exp.topology, topology_seed(exp.base_seed, 0));
    nlohmann::json doc = topology_to_json(topo);
    doc["provenance"] = provenance_json(l.provenance);
    write_text(out / "topology.json", doc.dump(2) + "\n");
    std::cout << "generated " << topo.num_bs() << " base stations, " << topo.num_ue()
              << " users -> " << (out / "topology.json").string() << '\n';
    return 0;
}

int cmd_solve(const Options& opt) {
    const Loaded l = load(opt);
    const auto& exp = l.config.experiment;
    const fs::path out = prepare_out(opt.out_dir);

    Topology topo;
    if (!opt.topology_path.empty()) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_file(opt.topology_path));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParameterError("topology", opt.topology_path + " is not valid JSON: " + e.what());
        }
        topo = topology_from_json(doc);
    } else {
        topo = generate_topology(exp.topology, topology_seed(exp.base_seed, 0));
    }
    const RateTable table(topo, exp.channel);

    nlohmann::json topo_doc = topology_to_json(topo);
    topo_doc["provenance"] = provenance_json(l.provenance);
    write_text(out / "topology.json", topo_doc.dump(2) + "\n");

    double best_utility = 0.0;
    double best_served = 0.0;
    for (Algorithm a : exp.algorithms) {
        const std::uint64_t seed = solver_seed(exp.base_seed, 0, a);
        SolverResult result;
        if (a == Algorithm::gwo) {
            result = gwo_optimize(table, GwoConfig{exp.pop_size, exp.g_max}, seed);
        } else {
            PsoConfig pso = exp.pso;
            pso.pop_size = exp.pop_size;
            pso.g_max = exp.g_max;
            result = pso_optimize(table, pso, seed);
        }
        const auto report = check_constraints(result.best, topo);
        if (!report.empty()) {
            throw std::logic_error("solver produced an infeasible solution: " +
                                   report.front().constraint + " " + report.front().detail);
        }
        const std::string name(to_string(a));
        nlohmann::json doc = solution_to_json(result.best, topo);
        doc["algorithm"] = name;
        doc["solver_seed"] = seed;
        doc["provenance"] = provenance_json(l.provenance);
        write_text(out / ("solution_" + name + ".json"), doc.dump(2) + "\n");

        RunMetrics m;
        m.algorithm = a;
        m.seed = seed;
        m.trace = result.trace;
        write_with(out / ("trace_" + name + ".csv"),
                   [&](std::ostream& os) { write_traces_csv(os, {m}, l.provenance); });

        if (result.best.utility >= best_utility) {
            best_utility = result.best.utility;
            best_served = result.best.served_fraction();
        }
    }
    std::cout << "best utility " << gbps(best_utility) << " / served fraction "
              << ratio(best_served) << " / runs completed " << exp.algorithms.size() << '\n';
    return 0;
}

int cmd_batch(const Options& opt) {
    const Loaded l = load(opt);
    const auto& exp = l.config.experiment;
    const fs::path out = prepare_out(opt.out_dir);
    const auto metrics = run_batch(exp);

    write_with(out / "runs.csv", [&](std::ostream& os) { write_runs_csv(os, metrics, l.provenance); });
    write_with(out / "traces.csv",
               [&](std::ostream& os) { write_traces_csv(os, metrics, l.provenance); });
    write_with(out / "cdf.csv", [&](std::ostream& os) {
        write_cdf_csv(os, metrics, exp.algorithms, l.provenance);
    });
    nlohmann::json summary = summarize(metrics);
    summary["provenance"] = provenance_json(l.provenance);
    write_text(out / "summary.json", summary.dump(2) + "\n");

    double best_utility = 0.0;
    double best_served = 0.0;
    for (const auto& m : metrics) {
        if (m.final_utility >= best_utility) {
            best_utility = m.final_utility;
            best_served = m.served_fraction;
        }
    }
    std::cout << "best utility " << gbps(best_utility) << " / served fraction "
              << ratio(best_served) << " / runs completed " << metrics.size() << '\n';
    return 0;
}

int cmd_sweep(const Options& opt) {
    const Loaded l = load(opt);
    require(!l.config.sweep_ue_counts.empty(), "sweep.ue_counts",
            "sweep needs a non-empty list of UE counts");
    const fs::path out = prepare_out(opt.out_dir);
    const auto points = scaling_sweep(l.config.experiment, l.config.sweep_ue_counts);
    write_with(out / "sweep.csv",
               [&](std::ostream& os) { write_sweep_csv(os, points, l.provenance); });

    double best_utility = 0.0;
    double best_served = 0.0;
    int runs = 0;
    for (const auto& p : points) {
        runs += p.runs;
        if (p.mean_utility >= best_utility) {
            best_utility = p.mean_utility;
            best_served = p.mean_served_fraction;
        }
    }
    std::cout << "best utility " << gbps(best_utility) << " / served fraction "
              << ratio(best_served) << " / runs completed " << runs << '\n';
    return 0;
}

int cmd_macsim(const Options& opt) {
    const Loaded l = load(opt);
    const auto& mac = l.config.macsim;
    const fs::path out = prepare_out(opt.out_dir);
    const std::uint64_t seed = l.config.experiment.base_seed;
    const auto result = simulate_initial_access(mac.beacon, mac.num_stations, mac.max_bi, seed);

    write_with(out / "ia_latency.csv", [&](std::ostream& os) {
        os << provenance_line(l.provenance) << '\n';
        write_latency_csv(os, result, seed);
    });

    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : result.rounds) {
        rounds.push_back({{"bi", r.bi},
                          {"contenders", r.contenders},
                          {"successes", r.successes},
                          {"collisions", r.collisions}});
    }
    double latency_sum = 0.0;
    for (const auto& lat : result.latency_bi) {
        if (lat) latency_sum += *lat;
    }
    const int connected = result.connected_count();
    const double mean_latency = connected > 0 ? latency_sum / connected : 0.0;
    nlohmann::json summary = {{"stations", mac.num_stations},
                              {"connected", connected},
                              {"mean_latency_bi", mean_latency},
                              {"abft_rounds", rounds},
                              {"provenance", provenance_json(l.provenance)}};
    write_text(out / "macsim_summary.json", summary.dump(2) + "\n");

    std::cout << "connected " << connected << "/" << mac.num_stations << " stations, mean latency "
              << ratio(mean_latency) << " BI / runs completed 1\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic-cell user association for ultra-dense THz networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("thzcell ") + kVersion);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool with_algo, bool with_jobs) {
        sub->add_option("--config", opt.config_path, "Configuration file (JSON, dotted keys)")
            ->required();
        sub->add_option("--out", opt.out_dir, "Output directory");
        sub->add_option("--seed", opt.seed, "Seed override (U64)");
        if (with_algo) {
            sub->add_option("--algo", opt.algo, "Solver selection")
                ->check(CLI::IsMember({"gwo", "pso", "both"}));
        }
        if (with_jobs) {
            sub->add_option("--jobs", opt.jobs, "Concurrent runs")->check(CLI::PositiveNumber);
        }
    };

    auto* presets = app.add_subcommand("presets", "Print a technical-scenario KPI preset");
    presets->add_option("--scenario", opt.scenario, "Scenario id (1, 2 or 3)")->required();

    auto* generate = app.add_subcommand("generate", "Generate a topology");
    add_common(generate, false, false);
    auto* solve = app.add_subcommand("solve", "Solve one topology");
    add_common(solve, true, false);
    solve->add_option("--topology", opt.topology_path, "Topology document to solve instead of generating one");
    auto* batch = app.add_subcommand("batch", "Run the multi-topology comparison");
    add_common(batch, true, true);
    auto* sweep = app.add_subcommand("sweep", "Run the UE-count scaling sweep");
    add_common(sweep, true, true);
    auto* macsim = app.add_subcommand("macsim", "Simulate beacon-interval initial access");
    add_common(macsim, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*presets) return cmd_presets(opt);
        if (*generate) return cmd_generate(opt);
        if (*solve) return cmd_solve(opt);
        if (*batch) return cmd_batch(opt);
        if (*sweep) return cmd_sweep(opt);
        if (*macsim) return cmd_macsim(opt);
    } catch (const ParameterError& e) {
        std::cerr << "error: invalid parameter " << e.what() << '\n';
        return 1;
    } catch (const SizeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
