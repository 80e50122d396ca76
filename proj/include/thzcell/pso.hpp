#pragma once

// Global-best particle swarm optimizer over the same position encoding as
// the grey wolf optimizer; the comparison baseline.
//
//   v <- w*v + c1*r1*(pbest - x) + c2*r2*(gbest - x),  |v| <= v_max
//   x <- clamp(x + v, 0, N_b)

#include <cstdint>
#include <functional>
#include <vector>

#include "thzcell/association.hpp"
#include "thzcell/channel.hpp"
#include "thzcell/scenario.hpp"
#include "thzcell/solver.hpp"

namespace thzcell {

struct PsoConfig {
    int pop_size = 200;
    int g_max = 150;
    double inertia = 0.7298;
    double cognitive = 1.49618;
    double social = 1.49618;
    double v_max_fraction = 0.5;  // v_max = v_max_fraction * N_b

    void validate() const;
};

struct ParticleState {
    PositionVector position;
    std::vector<double> velocity;
    PositionVector best_position;
    double best_fitness = 0.0;
    double fitness = 0.0;
};

struct PsoSwarmView {
    const std::vector<ParticleState>& particles;
    const PositionVector& global_best;
    double global_best_fitness;
    double v_max;
    int generation;
};

using PsoObserver = std::function<void(const PsoSwarmView&)>;

SolverResult pso_optimize(const Topology& topology, const LinkBudgetParams& params,
                          const PsoConfig& config, std::uint64_t seed,
                          const PsoObserver& observer = {});

SolverResult pso_optimize(const RateTable& table, const PsoConfig& config, std::uint64_t seed,
                          const PsoObserver& observer = {});

}  // namespace thzcell
