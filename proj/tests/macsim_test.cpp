#include <doctest.h>

#include <cmath>
#include <sstream>

#include "thzcell/errors.hpp"
#include "thzcell/macsim.hpp"

using namespace thzcell;

namespace {

struct MeanAndError {
    double mean;
    double standard_error;
};

template <class Sample>
MeanAndError monte_carlo(int trials, Sample&& sample) {
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double v = sample(static_cast<std::uint64_t>(t));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / trials;
    const double var = (sum_sq - trials * mean * mean) / (trials - 1);
    return {mean, std::sqrt(var / trials)};
}

}  // namespace

TEST_CASE("analytic collision-free expectation") {
    CHECK(expected_abft_successes(1, 5) == 1.0);
    CHECK(expected_abft_successes(2, 2) == doctest::Approx(1.0));
    // 8 * (7/8)^7 and 16 * (7/8)^15, evaluated by hand.
    CHECK(expected_abft_successes(8, 8) == doctest::Approx(3.1415672302246094));
    CHECK(expected_abft_successes(16, 8) == doctest::Approx(2.158941019817121));
    CHECK(expected_abft_successes(3, 1) == 0.0);
}

TEST_CASE("A-BFT contention edge cases") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto alone = simulate_abft(1, 4, seed);
        CHECK(alone.success == std::vector<bool>{true});
        const auto forced = simulate_abft(2, 1, seed);
        CHECK(forced.successes == 0);
        CHECK(forced.collisions == 2);
    }
    CHECK_THROWS_AS(simulate_abft(0, 2, 1), ParameterError);
    CHECK_THROWS_AS(simulate_abft(2, 0, 1), ParameterError);
}

TEST_CASE("successes and collisions account for every contender") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const int u = 1 + static_cast<int>(seed % 23);
        const int s = 1 + static_cast<int>(seed % 11);
        const auto out = simulate_abft(u, s, seed);
        CHECK(out.successes + out.collisions == u);
        CHECK(static_cast<int>(out.success.size()) == u);
        CHECK(out.collisions != 1);  // a collision always involves two stations
    }
}

TEST_CASE("simulated successes match the analytic mean") {
    for (auto [u, s] : {std::pair{2, 2}, {8, 8}, {16, 8}}) {
        const auto mc = monte_carlo(10000, [&](std::uint64_t seed) {
            return static_cast<double>(simulate_abft(u, s, seed).successes);
        });
        CHECK(std::abs(mc.mean - expected_abft_successes(u, s)) <= 3.0 * mc.standard_error);
    }
}

TEST_CASE("initial access of a lone station takes one beacon interval") {
    const auto r = simulate_initial_access(BeaconIntervalConfig{}, 1, 10, 3);
    REQUIRE(r.latency_bi.size() == 1);
    CHECK(r.latency_bi[0] == std::optional<int>(1));
    CHECK(r.stations[0].phase == IaPhase::connected);
}

TEST_CASE("every station eventually connects") {
    BeaconIntervalConfig cfg;
    cfg.num_abft_slots = 16;
    cfg.max_backoff_bi = 3;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = simulate_initial_access(cfg, 16, 500, seed);
        CHECK(r.connected_count() == 16);
        for (const auto& l : r.latency_bi) CHECK(*l >= 1);
        for (const auto& round : r.rounds) {
            CHECK(round.successes + round.collisions == round.contenders);
        }
    }
}

TEST_CASE("first beacon interval matches the collision-free expectation") {
    BeaconIntervalConfig cfg;
    cfg.num_abft_slots = 8;
    const auto mc = monte_carlo(10000, [&](std::uint64_t seed) {
        const auto r = simulate_initial_access(cfg, 8, 1, seed);
        return static_cast<double>(r.connected_count());
    });
    CHECK(std::abs(mc.mean - 3.1415672302246094) <= 3.0 * mc.standard_error);
}

TEST_CASE("unconnected only when the horizon runs out") {
    BeaconIntervalConfig cfg;
    cfg.num_abft_slots = 1;
    cfg.max_backoff_bi = 1;  // both stations re-contend every BI and always collide
    const auto r = simulate_initial_access(cfg, 2, 25, 1);
    CHECK(r.connected_count() == 0);
    for (const auto& st : r.stations) {
        CHECK(st.phase == IaPhase::searching);
        CHECK(st.bi_count == 25);
    }
}

TEST_CASE("backoff delays re-contention by at most the window") {
    BeaconIntervalConfig cfg;
    cfg.num_abft_slots = 1;
    cfg.max_backoff_bi = 4;
    const auto r = simulate_initial_access(cfg, 2, 200, 9);
    // Both stations collide whenever they contend together; the gap between
    // consecutive rounds never exceeds the backoff window.
    for (std::size_t k = 1; k < r.rounds.size(); ++k) {
        CHECK(r.rounds[k].bi - r.rounds[k - 1].bi <= 4);
        CHECK(r.rounds[k].bi > r.rounds[k - 1].bi);
    }
}

TEST_CASE("latency CSV") {
    BeaconIntervalConfig cfg;
    cfg.num_abft_slots = 1;
    cfg.max_backoff_bi = 1;
    const auto r = simulate_initial_access(cfg, 2, 3, 1);
    std::ostringstream os;
    write_latency_csv(os, r, 42);
    CHECK(os.str() == "seed,station_id,latency_bi,connected\n42,0,,0\n42,1,,0\n");

    const auto one = simulate_initial_access(BeaconIntervalConfig{}, 1, 3, 1);
    std::ostringstream os1;
    write_latency_csv(os1, one, 7);
    CHECK(os1.str() == "seed,station_id,latency_bi,connected\n7,0,1,1\n");
}

TEST_CASE("beacon configuration validation") {
    BeaconIntervalConfig cfg;
    cfg.num_sectors = 0;
    CHECK_THROWS_AS(simulate_initial_access(cfg, 2, 3, 1), ParameterError);
    cfg = {};
    cfg.max_backoff_bi = 0;
    CHECK_THROWS_AS(simulate_initial_access(cfg, 2, 3, 1), ParameterError);
    CHECK_THROWS_AS(simulate_initial_access(BeaconIntervalConfig{}, 0, 3, 1), ParameterError);
    CHECK_THROWS_AS(simulate_initial_access(BeaconIntervalConfig{}, 2, 0, 1), ParameterError);
}
