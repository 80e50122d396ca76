#include "thzcell/pso.hpp"

#include <algorithm>
#include <cmath>

#include "thzcell/errors.hpp"
#include "thzcell/rng.hpp"

namespace thzcell {

void PsoConfig::validate() const {
    require(pop_size >= 2, "solver.pop_size", "particle swarm needs at least 2 particles");
    require(g_max >= 1, "solver.g_max", "must be >= 1");
    require(inertia >= 0.0 && std::isfinite(inertia), "pso.inertia", "must be >= 0");
    require(cognitive >= 0.0 && std::isfinite(cognitive), "pso.cognitive", "must be >= 0");
    require(social >= 0.0 && std::isfinite(social), "pso.social", "must be >= 0");
    require(v_max_fraction > 0.0 && std::isfinite(v_max_fraction), "pso.v_max_fraction",
            "must be > 0");
}

SolverResult pso_optimize(const Topology& topology, const LinkBudgetParams& params,
                          const PsoConfig& config, std::uint64_t seed,
                          const PsoObserver& observer) {
    return pso_optimize(RateTable(topology, params), config, seed, observer);
}

SolverResult pso_optimize(const RateTable& table, const PsoConfig& config, std::uint64_t seed,
                          const PsoObserver& observer) {
    config.validate();
    const auto pop = static_cast<std::size_t>(config.pop_size);
    const std::size_t dims = table.num_ue();
    const double upper = static_cast<double>(table.num_bs());
    const double v_max = config.v_max_fraction * upper;

    std::vector<Rng> streams;
    streams.reserve(pop);
    for (std::size_t k = 0; k < pop; ++k) streams.emplace_back(derive_seed(seed, {k}));

    // Particles start at rest.
    std::vector<ParticleState> swarm(pop);
    for (std::size_t k = 0; k < pop; ++k) {
        auto& p = swarm[k];
        p.position.resize(dims);
        for (double& v : p.position) v = uniform_between(streams[k], 0.0, upper);
        p.velocity.assign(dims, 0.0);
        p.fitness = decode_utility(p.position, table);
        p.best_position = p.position;
        p.best_fitness = p.fitness;
    }

    // Ties keep the lower index.
    std::size_t leader = 0;
    for (std::size_t k = 1; k < pop; ++k) {
        if (swarm[k].best_fitness > swarm[leader].best_fitness) leader = k;
    }
    PositionVector global_best = swarm[leader].best_position;
    double global_best_fitness = swarm[leader].best_fitness;

    SolverResult result;
    result.evaluations = pop;
    result.trace.reserve(static_cast<std::size_t>(config.g_max) + 1);
    result.trace.push_back(global_best_fitness);
    if (observer) observer({swarm, global_best, global_best_fitness, v_max, 0});

    for (int g = 1; g <= config.g_max; ++g) {
        for (std::size_t k = 0; k < pop; ++k) {
            auto& p = swarm[k];
            for (std::size_t d = 0; d < dims; ++d) {
                const double r1 = unit_uniform(streams[k]);
                const double r2 = unit_uniform(streams[k]);
                double v = config.inertia * p.velocity[d] +
                           config.cognitive * r1 * (p.best_position[d] - p.position[d]) +
                           config.social * r2 * (global_best[d] - p.position[d]);
                v = std::clamp(v, -v_max, v_max);
                p.velocity[d] = v;
                p.position[d] = std::clamp(p.position[d] + v, 0.0, upper);
            }
        }
        // Synchronous update: the global best moves only after the whole swarm has.
        for (auto& p : swarm) {
            p.fitness = decode_utility(p.position, table);
            if (p.fitness > p.best_fitness) {
                p.best_fitness = p.fitness;
                p.best_position = p.position;
            }
        }
        result.evaluations += pop;
        for (const auto& p : swarm) {
            if (p.best_fitness > global_best_fitness) {
                global_best_fitness = p.best_fitness;
                global_best = p.best_position;
            }
        }
        result.trace.push_back(global_best_fitness);
        if (observer) observer({swarm, global_best, global_best_fitness, v_max, g});
    }

    result.best_position = global_best;
    result.best = decode(global_best, table);
    return result;
}

}  // namespace thzcell
