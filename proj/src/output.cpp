#include "thzcell/output.hpp"

#include <charconv>

namespace thzcell {

std::string provenance_line(const Provenance& p) {
    return std::string("# thzcell ") + kVersion + " config_hash=" + p.config_hash +
           " seed=" + std::to_string(p.seed);
}

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_runs_csv(std::ostream& out, const std::vector<RunMetrics>& metrics,
                    const Provenance& provenance) {
    out << provenance_line(provenance) << '\n';
    out << "algorithm,topology_idx,seed,final_utility_bps,served_fraction,wall_time_s\n";
    for (const auto& m : metrics) {
        out << to_string(m.algorithm) << ',' << m.topology_index << ',' << m.seed << ','
            << format_double(m.final_utility) << ',' << format_double(m.served_fraction) << ','
            << format_double(m.wall_time_s) << '\n';
    }
}

void write_traces_csv(std::ostream& out, const std::vector<RunMetrics>& metrics,
                      const Provenance& provenance) {
    out << provenance_line(provenance) << '\n';
    out << "algorithm,topology_idx,generation,best_fitness_bps\n";
    for (const auto& m : metrics) {
        for (std::size_t g = 0; g < m.trace.size(); ++g) {
            out << to_string(m.algorithm) << ',' << m.topology_index << ',' << g << ','
                << format_double(m.trace[g]) << '\n';
        }
    }
}

void write_cdf_csv(std::ostream& out, const std::vector<RunMetrics>& metrics,
                   const std::vector<Algorithm>& algorithms, const Provenance& provenance) {
    out << provenance_line(provenance) << '\n';
    out << "algorithm,utility_bps,cumulative_probability\n";
    for (Algorithm a : algorithms) {
        for (const auto& [u, p] : utility_cdf(metrics, a)) {
            out << to_string(a) << ',' << format_double(u) << ',' << format_double(p) << '\n';
        }
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points,
                     const Provenance& provenance) {
    out << provenance_line(provenance) << '\n';
    out << "n_ue,algorithm,runs,mean_utility_bps,mean_served_fraction\n";
    for (const auto& p : points) {
        out << p.num_ue << ',' << to_string(p.algorithm) << ',' << p.runs << ','
            << format_double(p.mean_utility) << ',' << format_double(p.mean_served_fraction)
            << '\n';
    }
}

}  // namespace thzcell
