#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "thzcell/errors.hpp"
#include "thzcell/pso.hpp"

using namespace thzcell;

namespace {

TopologyParams small_params(std::size_t nb, std::size_t nu) {
    TopologyParams p;
    p.num_bs = nb;
    p.num_ue = nu;
    p.radius_m = 20.0;
    p.demand_min_bps = 1e9;
    p.demand_max_bps = 10e9;
    return p;
}

}  // namespace

TEST_CASE("default coefficients") {
    const PsoConfig cfg;
    CHECK(cfg.inertia == 0.7298);
    CHECK(cfg.cognitive == 1.49618);
    CHECK(cfg.social == 1.49618);
    CHECK(cfg.pop_size == 200);
    CHECK(cfg.g_max == 150);
}

TEST_CASE("velocity and position bounds hold every generation") {
    const Topology topo = generate_topology(small_params(4, 30), 9);
    PsoConfig cfg;
    cfg.pop_size = 25;
    cfg.g_max = 40;
    int observed = 0;
    const auto result = pso_optimize(topo, LinkBudgetParams{}, cfg, 1, [&](const PsoSwarmView& s) {
        CHECK(s.generation == observed++);
        CHECK(s.v_max == 2.0);
        for (const auto& p : s.particles) {
            for (double v : p.velocity) CHECK(std::abs(v) <= s.v_max);
            for (double x : p.position) {
                CHECK(x >= 0.0);
                CHECK(x <= 4.0);
            }
            CHECK(p.best_fitness >= p.fitness);
            CHECK(s.global_best_fitness >= p.best_fitness);
        }
    });
    CHECK(observed == 41);
    REQUIRE(result.trace.size() == 41);
    CHECK(std::is_sorted(result.trace.begin(), result.trace.end()));
    CHECK(result.trace.back() == result.best.utility);
    CHECK(check_constraints(result.best, topo).empty());
}

TEST_CASE("zero coefficients freeze the swarm") {
    const Topology topo = generate_topology(small_params(3, 12), 4);
    PsoConfig cfg;
    cfg.pop_size = 10;
    cfg.g_max = 15;
    cfg.inertia = cfg.cognitive = cfg.social = 0.0;
    std::vector<PositionVector> first;
    const auto result = pso_optimize(topo, LinkBudgetParams{}, cfg, 2, [&](const PsoSwarmView& s) {
        if (s.generation == 0) {
            for (const auto& p : s.particles) first.push_back(p.position);
        } else {
            for (std::size_t k = 0; k < s.particles.size(); ++k) {
                CHECK(s.particles[k].position == first[k]);
            }
        }
    });
    for (double v : result.trace) CHECK(v == result.trace.front());
}

TEST_CASE("unique feasible association is found") {
    Topology topo;
    topo.radius_m = 1000.0;
    topo.base_stations = {{0, {0.0, 0.0}, 0.0}, {1, {800.0, 0.0}, 0.0}};
    topo.users = {{0, {2.0, 0.0}, 0.0, 4e9}, {1, {0.0, 900.0}, 0.0, 9e9}};
    const auto best = exhaustive_search(topo, LinkBudgetParams{});
    PsoConfig cfg;
    cfg.pop_size = 12;
    cfg.g_max = 20;
    const auto result = pso_optimize(topo, LinkBudgetParams{}, cfg, 3);
    CHECK(result.best.utility == best.utility);
    CHECK(result.best.serving_bs(0) == std::optional<std::size_t>(0));
}

TEST_CASE("never exceeds the exhaustive optimum") {
    PsoConfig cfg;
    cfg.pop_size = 30;
    cfg.g_max = 40;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Topology topo = generate_topology(small_params(2, 5), 500 + seed);
        const double best = exhaustive_search(topo, LinkBudgetParams{}).utility;
        CHECK(pso_optimize(topo, LinkBudgetParams{}, cfg, seed).best.utility <= best);
    }
}

TEST_CASE("deterministic per seed") {
    const Topology topo = generate_topology(small_params(4, 30), 2);
    PsoConfig cfg;
    cfg.pop_size = 20;
    cfg.g_max = 25;
    const auto r1 = pso_optimize(topo, LinkBudgetParams{}, cfg, 8);
    const auto r2 = pso_optimize(topo, LinkBudgetParams{}, cfg, 8);
    CHECK(r1.trace == r2.trace);
    CHECK(r1.best == r2.best);
}

TEST_CASE("invalid configurations") {
    const Topology topo = generate_topology(small_params(2, 3), 1);
    PsoConfig cfg;
    cfg.pop_size = 1;
    CHECK_THROWS_AS(pso_optimize(topo, LinkBudgetParams{}, cfg, 1), ParameterError);
    cfg = {};
    cfg.g_max = 0;
    CHECK_THROWS_AS(pso_optimize(topo, LinkBudgetParams{}, cfg, 1), ParameterError);
    cfg = {};
    cfg.v_max_fraction = 0.0;
    CHECK_THROWS_AS(pso_optimize(topo, LinkBudgetParams{}, cfg, 1), ParameterError);
    cfg = {};
    cfg.inertia = -0.1;
    CHECK_THROWS_AS(pso_optimize(topo, LinkBudgetParams{}, cfg, 1), ParameterError);
}
