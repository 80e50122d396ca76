#pragma once

// Batch experiment driver: many topologies, both solvers on each with
// matched budgets, and the aggregate views (utility CDF, scaling sweep).

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "thzcell/association.hpp"
#include "thzcell/channel.hpp"
#include "thzcell/pso.hpp"
#include "thzcell/scenario.hpp"

namespace thzcell {

enum class Algorithm { gwo, pso };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

struct ExperimentConfig {
    TopologyParams topology;
    LinkBudgetParams channel;
    int pop_size = 200;
    int g_max = 150;
    PsoConfig pso;  // only the coefficients are used; budgets come from above
    int num_topologies = 20;
    std::uint64_t base_seed = 1;
    std::vector<Algorithm> algorithms{Algorithm::gwo, Algorithm::pso};
    int jobs = 1;

    void validate() const;
};

struct RunMetrics {
    Algorithm algorithm = Algorithm::gwo;
    int topology_index = 0;
    std::uint64_t seed = 0;  // solver seed
    std::vector<double> trace;
    double final_utility = 0.0;
    double served_fraction = 0.0;
    double wall_time_s = 0.0;
};

std::uint64_t topology_seed(std::uint64_t base_seed, int topology_index);
std::uint64_t solver_seed(std::uint64_t base_seed, int topology_index, Algorithm algorithm);

// Ordered by topology index, then by the order of config.algorithms.
// Throws std::logic_error if a solver ever emits an infeasible solution.
std::vector<RunMetrics> run_batch(const ExperimentConfig& config);

// Empirical CDF of final utility for one algorithm.
std::vector<std::pair<double, double>> utility_cdf(const std::vector<RunMetrics>& metrics,
                                                   Algorithm algorithm);

struct SweepPoint {
    std::size_t num_ue = 0;
    Algorithm algorithm = Algorithm::gwo;
    double mean_utility = 0.0;
    double mean_served_fraction = 0.0;
    int runs = 0;
};

// run_batch for each UE count (base seed derived from the count), averaged
// per algorithm. Ordered by ue_counts, then algorithm.
std::vector<SweepPoint> scaling_sweep(const ExperimentConfig& config,
                                      const std::vector<std::size_t>& ue_counts);

// Per-algorithm mean/median utility and served fraction, plus win counts
// (GWO > PSO, PSO > GWO, ties) across topologies.
nlohmann::json summarize(const std::vector<RunMetrics>& metrics);

}  // namespace thzcell
