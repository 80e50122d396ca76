#pragma once

// Grey Wolf Optimizer over association position vectors.
//
// Each generation every wolf moves to the mean of three attractor points,
// one per leader L in {alpha, beta, delta}, computed per dimension n as
//
//   A = a * (2*f1 - 1),  K = 2*f2,  D = |K * L[n] - x[n]|,  p_L = L[n] - A * D
//
// with fresh f1, f2 ~ U[0, 1] for every (wolf, leader, dimension), and the
// result clamped to [0, N_b]. The control scalar a falls linearly from 2 to 0.
//
// The leaders are the three fittest positions seen so far: after each
// generation a wolf displaces a leader only if it is strictly fitter, so
// alpha is also the best-ever solution.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "thzcell/association.hpp"
#include "thzcell/channel.hpp"
#include "thzcell/errors.hpp"
#include "thzcell/scenario.hpp"
#include "thzcell/solver.hpp"

namespace thzcell {

struct ScoredPosition {
    PositionVector position;
    double fitness = 0.0;
};

struct SwarmState {
    std::vector<PositionVector> positions;
    std::vector<double> fitnesses;
    ScoredPosition alpha;
    ScoredPosition beta;
    ScoredPosition delta;
    int generation = 0;
    double control_a = 2.0;
};

struct LeaderView {
    std::span<const double> alpha;
    std::span<const double> beta;
    std::span<const double> delta;
};

struct GwoConfig {
    int pop_size = 200;
    int g_max = 150;

    void validate() const;
};

// a = 2 * (1 - generation / g_max).
double control_schedule(int generation, int g_max);

// Unclamped wolf move. `draw` yields U[0, 1) samples; per dimension it is
// called in the order f1, f2 for alpha, then beta, then delta.
template <class Draw>
    requires std::invocable<Draw&> && std::convertible_to<std::invoke_result_t<Draw&>, double>
void wolf_step(std::span<const double> current, const LeaderView& leaders, double a, Draw&& draw,
               std::span<double> out) {
    const std::size_t n = current.size();
    if (leaders.alpha.size() != n || leaders.beta.size() != n || leaders.delta.size() != n ||
        out.size() != n) {
        throw ParameterError("position", "leader and wolf vectors differ in length");
    }
    require(a >= 0.0, "control_a", "must be >= 0");
    const std::span<const double> team[3] = {leaders.alpha, leaders.beta, leaders.delta};
    for (std::size_t d = 0; d < n; ++d) {
        const double x = current[d];
        double sum = 0.0;
        for (const auto& leader : team) {
            const double f1 = draw();
            const double f2 = draw();
            const double A = a * (2.0 * f1 - 1.0);
            const double K = 2.0 * f2;
            const double D = std::abs(K * leader[d] - x);
            sum += leader[d] - A * D;
        }
        out[d] = sum / 3.0;
    }
}

// wolf_step followed by clamping each coordinate to [0, upper].
template <class Draw>
PositionVector wolf_update(std::span<const double> current, const LeaderView& leaders, double a,
                           double upper, Draw&& draw) {
    PositionVector next(current.size());
    wolf_step(current, leaders, a, draw, next);
    for (double& v : next) v = std::clamp(v, 0.0, upper);
    return next;
}

using SwarmObserver = std::function<void(const SwarmState&)>;

// Maximizes the decoded association utility. Deterministic per seed.
// `observer`, if set, sees the state after initialization and after every
// generation.
SolverResult gwo_optimize(const Topology& topology, const LinkBudgetParams& params,
                          const GwoConfig& config, std::uint64_t seed,
                          const SwarmObserver& observer = {});

SolverResult gwo_optimize(const RateTable& table, const GwoConfig& config, std::uint64_t seed,
                          const SwarmObserver& observer = {});

}  // namespace thzcell
