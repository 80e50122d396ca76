#include "thzcell/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "thzcell/errors.hpp"
#include "thzcell/gwo.hpp"
#include "thzcell/rng.hpp"

namespace thzcell {

std::string_view to_string(Algorithm algorithm) {
    return algorithm == Algorithm::gwo ? "gwo" : "pso";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "gwo") return Algorithm::gwo;
    if (name == "pso") return Algorithm::pso;
    throw ParameterError("algorithm", "unknown algorithm '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
    topology.validate();
    channel.validate();
    require(pop_size >= 4, "solver.pop_size", "must be >= 4");
    require(g_max >= 1, "solver.g_max", "must be >= 1");
    PsoConfig budgeted = pso;
    budgeted.pop_size = pop_size;
    budgeted.g_max = g_max;
    budgeted.validate();
    require(num_topologies >= 1, "experiment.num_topologies", "must be >= 1");
    require(!algorithms.empty(), "experiment.algorithms", "at least one algorithm required");
    require(jobs >= 1, "jobs", "must be >= 1");
}

std::uint64_t topology_seed(std::uint64_t base_seed, int topology_index) {
    return base_seed ^ static_cast<std::uint64_t>(topology_index);
}

std::uint64_t solver_seed(std::uint64_t base_seed, int topology_index, Algorithm algorithm) {
    return derive_seed(base_seed, {static_cast<std::uint64_t>(topology_index),
                                   algorithm == Algorithm::gwo ? 0x6770ULL : 0x7050ULL});
}

namespace {

RunMetrics run_one(const ExperimentConfig& config, const Topology& topology,
                   const RateTable& table, int index, Algorithm algorithm) {
    RunMetrics m;
    m.algorithm = algorithm;
    m.topology_index = index;
    m.seed = solver_seed(config.base_seed, index, algorithm);

    const auto start = std::chrono::steady_clock::now();
    SolverResult result;
    if (algorithm == Algorithm::gwo) {
        result = gwo_optimize(table, GwoConfig{config.pop_size, config.g_max}, m.seed);
    } else {
        PsoConfig pso = config.pso;
        pso.pop_size = config.pop_size;
        pso.g_max = config.g_max;
        result = pso_optimize(table, pso, m.seed);
    }
    m.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto report = check_constraints(result.best, topology);
    if (!report.empty()) {
        throw std::logic_error(std::string(to_string(algorithm)) + " on topology " +
                               std::to_string(index) + " produced an infeasible solution (" +
                               report.front().constraint + ": " + report.front().detail + ")");
    }
    m.trace = std::move(result.trace);
    m.final_utility = result.best.utility;
    m.served_fraction = result.best.served_fraction();
    return m;
}

}  // namespace

std::vector<RunMetrics> run_batch(const ExperimentConfig& config) {
    config.validate();
    const auto n_topo = static_cast<std::size_t>(config.num_topologies);
    const std::size_t n_algo = config.algorithms.size();
    std::vector<RunMetrics> out(n_topo * n_algo);

    // Each task owns one topology; results land in fixed slots so the output
    // does not depend on scheduling.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t t; (t = next.fetch_add(1)) < n_topo;) {
            try {
                const int index = static_cast<int>(t);
                const Topology topology =
                    generate_topology(config.topology, topology_seed(config.base_seed, index));
                const RateTable table(topology, config.channel);
                for (std::size_t a = 0; a < n_algo; ++a) {
                    out[t * n_algo + a] =
                        run_one(config, topology, table, index, config.algorithms[a]);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n_topo;
            }
        }
    };

    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), n_topo);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<std::pair<double, double>> utility_cdf(const std::vector<RunMetrics>& metrics,
                                                   Algorithm algorithm) {
    std::vector<double> values;
    for (const auto& m : metrics) {
        if (m.algorithm == algorithm) values.push_back(m.final_utility);
    }
    require(!values.empty(), "algorithm",
            "no runs for algorithm " + std::string(to_string(algorithm)));
    std::sort(values.begin(), values.end());

    std::vector<std::pair<double, double>> cdf;
    const double n = static_cast<double>(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double p = static_cast<double>(k + 1) / n;
        if (!cdf.empty() && cdf.back().first == values[k]) {
            cdf.back().second = p;
        } else {
            cdf.emplace_back(values[k], p);
        }
    }
    cdf.back().second = 1.0;
    return cdf;
}

std::vector<SweepPoint> scaling_sweep(const ExperimentConfig& config,
                                      const std::vector<std::size_t>& ue_counts) {
    require(!ue_counts.empty(), "sweep.ue_counts", "at least one UE count required");
    std::vector<SweepPoint> points;
    for (std::size_t count : ue_counts) {
        ExperimentConfig sub = config;
        sub.topology.num_ue = count;
        sub.base_seed = derive_seed(config.base_seed, {count});
        const auto metrics = run_batch(sub);
        for (Algorithm algorithm : config.algorithms) {
            SweepPoint p;
            p.num_ue = count;
            p.algorithm = algorithm;
            for (const auto& m : metrics) {
                if (m.algorithm != algorithm) continue;
                p.mean_utility += m.final_utility;
                p.mean_served_fraction += m.served_fraction;
                ++p.runs;
            }
            p.mean_utility /= p.runs;
            p.mean_served_fraction /= p.runs;
            points.push_back(p);
        }
    }
    return points;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

nlohmann::json summarize(const std::vector<RunMetrics>& metrics) {
    nlohmann::json doc;
    std::map<Algorithm, std::vector<const RunMetrics*>> by_algo;
    for (const auto& m : metrics) by_algo[m.algorithm].push_back(&m);

    for (const auto& [algorithm, runs] : by_algo) {
        std::vector<double> utility, served;
        for (const auto* m : runs) {
            utility.push_back(m->final_utility);
            served.push_back(m->served_fraction);
        }
        auto mean = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double x : v) s += x;
            return s / static_cast<double>(v.size());
        };
        doc["algorithms"][std::string(to_string(algorithm))] = {
            {"runs", runs.size()},
            {"mean_utility_bps", mean(utility)},
            {"median_utility_bps", median(utility)},
            {"mean_served_fraction", mean(served)},
            {"median_served_fraction", median(served)}};
    }

    std::map<int, std::map<Algorithm, double>> per_topology;
    for (const auto& m : metrics) per_topology[m.topology_index][m.algorithm] = m.final_utility;
    int gwo_wins = 0, pso_wins = 0, ties = 0;
    for (const auto& [index, row] : per_topology) {
        if (!row.contains(Algorithm::gwo) || !row.contains(Algorithm::pso)) continue;
        const double g = row.at(Algorithm::gwo);
        const double p = row.at(Algorithm::pso);
        g > p ? ++gwo_wins : (p > g ? ++pso_wins : ++ties);
    }
    doc["wins"] = {{"gwo", gwo_wins}, {"pso", pso_wins}, {"ties", ties}};
    return doc;
}

}  // namespace thzcell
