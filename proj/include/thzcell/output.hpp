#pragma once

// CSV writers for experiment results. Every file starts with one provenance
// comment line: "# thzcell <version> config_hash=<hex> seed=<n>".

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "thzcell/harness.hpp"

namespace thzcell {

inline constexpr const char* kVersion = "0.1.0";

struct Provenance {
    std::string config_hash;
    std::uint64_t seed = 0;
};

std::string provenance_line(const Provenance& provenance);

// Shortest representation that round-trips.
std::string format_double(double value);

// algorithm,topology_idx,seed,final_utility_bps,served_fraction,wall_time_s
void write_runs_csv(std::ostream& out, const std::vector<RunMetrics>& metrics,
                    const Provenance& provenance);

// algorithm,topology_idx,generation,best_fitness_bps
void write_traces_csv(std::ostream& out, const std::vector<RunMetrics>& metrics,
                      const Provenance& provenance);

// algorithm,utility_bps,cumulative_probability
void write_cdf_csv(std::ostream& out, const std::vector<RunMetrics>& metrics,
                   const std::vector<Algorithm>& algorithms, const Provenance& provenance);

// n_ue,algorithm,runs,mean_utility_bps,mean_served_fraction
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points,
                     const Provenance& provenance);

}  // namespace thzcell
