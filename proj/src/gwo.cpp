#include "thzcell/gwo.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "thzcell/rng.hpp"

namespace thzcell {

namespace {

// Indices of the three fittest wolves; ties go to the lower index.
std::array<std::size_t, 3> top_three(const std::vector<double>& fitness) {
    std::vector<std::size_t> order(fitness.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                      [&](std::size_t l, std::size_t r) {
                          return fitness[l] > fitness[r] || (fitness[l] == fitness[r] && l < r);
                      });
    return {order[0], order[1], order[2]};
}

void select_leaders(SwarmState& state) {
    const auto [a, b, d] = top_three(state.fitnesses);
    state.alpha = {state.positions[a], state.fitnesses[a]};
    state.beta = {state.positions[b], state.fitnesses[b]};
    state.delta = {state.positions[d], state.fitnesses[d]};
}

// Keeps the leader triple elitist: the new leaders are the three fittest
// entries among the previous leaders and the updated pack, so a leader is
// replaced only by a strictly fitter wolf.
void promote_leaders(SwarmState& state) {
    std::array<ScoredPosition, 3> team = {std::move(state.alpha), std::move(state.beta),
                                          std::move(state.delta)};
    for (std::size_t k = 0; k < state.positions.size(); ++k) {
        const double f = state.fitnesses[k];
        std::size_t slot = 3;
        while (slot > 0 && f > team[slot - 1].fitness) --slot;
        if (slot == 3) continue;
        for (std::size_t s = 2; s > slot; --s) team[s] = std::move(team[s - 1]);
        team[slot] = {state.positions[k], f};
    }
    state.alpha = std::move(team[0]);
    state.beta = std::move(team[1]);
    state.delta = std::move(team[2]);
}

}  // namespace

void GwoConfig::validate() const {
    require(pop_size >= 4, "solver.pop_size", "grey wolf optimizer needs at least 4 wolves");
    require(g_max >= 1, "solver.g_max", "must be >= 1");
}

double control_schedule(int generation, int g_max) {
    require(g_max >= 1, "g_max", "must be >= 1");
    require(generation >= 0 && generation <= g_max, "generation", "must lie in [0, g_max]");
    return 2.0 * (1.0 - static_cast<double>(generation) / static_cast<double>(g_max));
}

SolverResult gwo_optimize(const Topology& topology, const LinkBudgetParams& params,
                          const GwoConfig& config, std::uint64_t seed,
                          const SwarmObserver& observer) {
    return gwo_optimize(RateTable(topology, params), config, seed, observer);
}

SolverResult gwo_optimize(const RateTable& table, const GwoConfig& config, std::uint64_t seed,
                          const SwarmObserver& observer) {
    config.validate();
    const auto pop = static_cast<std::size_t>(config.pop_size);
    const std::size_t dims = table.num_ue();
    const double upper = static_cast<double>(table.num_bs());

    // One stream per wolf keeps each wolf's draws independent of evaluation order.
    std::vector<Rng> streams;
    streams.reserve(pop);
    for (std::size_t k = 0; k < pop; ++k) streams.emplace_back(derive_seed(seed, {k}));

    SwarmState state;
    state.positions.assign(pop, PositionVector(dims));
    state.fitnesses.assign(pop, 0.0);
    for (std::size_t k = 0; k < pop; ++k) {
        for (double& v : state.positions[k]) v = uniform_between(streams[k], 0.0, upper);
        state.fitnesses[k] = decode_utility(state.positions[k], table);
    }
    select_leaders(state);
    state.control_a = control_schedule(0, config.g_max);

    SolverResult result;
    result.evaluations = pop;
    result.trace.reserve(static_cast<std::size_t>(config.g_max) + 1);
    result.trace.push_back(state.alpha.fitness);
    if (observer) observer(state);

    std::vector<PositionVector> next(pop, PositionVector(dims));
    for (int g = 1; g <= config.g_max; ++g) {
        state.control_a = control_schedule(g - 1, config.g_max);
        const LeaderView leaders{state.alpha.position, state.beta.position, state.delta.position};
        for (std::size_t k = 0; k < pop; ++k) {
            auto draw = [&rng = streams[k]] { return unit_uniform(rng); };
            wolf_step(state.positions[k], leaders, state.control_a, draw, next[k]);
            for (double& v : next[k]) v = std::clamp(v, 0.0, upper);
        }
        std::swap(state.positions, next);
        for (std::size_t k = 0; k < pop; ++k) {
            state.fitnesses[k] = decode_utility(state.positions[k], table);
        }
        result.evaluations += pop;
        promote_leaders(state);
        state.generation = g;

        result.trace.push_back(state.alpha.fitness);
        if (observer) observer(state);
    }

    result.best_position = state.alpha.position;
    result.best = decode(state.alpha.position, table);
    return result;
}

}  // namespace thzcell
