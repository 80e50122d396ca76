#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "thzcell/config.hpp"
#include "thzcell/errors.hpp"

using namespace thzcell;
using nlohmann::json;

namespace {

std::string error_key(const json& doc) {
    try {
        parse_config(doc);
    } catch (const ParameterError& e) {
        return e.key();
    }
    return {};
}

}  // namespace

TEST_CASE("empty document keeps the defaults") {
    const RunConfig c = parse_config(json::object());
    CHECK(c.experiment.topology.num_bs == 6);
    CHECK(c.experiment.topology.num_ue == 120);
    CHECK(c.experiment.channel.theta_db == 120.0);
    CHECK(c.experiment.pop_size == 200);
    CHECK(c.experiment.g_max == 150);
    CHECK(c.experiment.num_topologies == 20);
    CHECK(c.experiment.algorithms.size() == 2);
}

TEST_CASE("dotted keys set nested values") {
    const RunConfig c = parse_config(json{{"topology.n_bs", 2},
                                          {"topology.radius_m", 10},
                                          {"topology.bs_placement", "ring"},
                                          {"channel.theta_db", 140.5},
                                          {"channel.absorption_coeff_per_m", 0.01},
                                          {"solver.pop_size", 30},
                                          {"pso.inertia", 0.5},
                                          {"experiment.seed", 77},
                                          {"experiment.algorithms", {"pso"}},
                                          {"sweep.ue_counts", {10, 20}},
                                          {"macsim.num_abft_slots", 4},
                                          {"macsim.ati_present", false}});
    CHECK(c.experiment.topology.num_bs == 2);
    CHECK(c.experiment.topology.radius_m == 10.0);
    CHECK(c.experiment.topology.bs_placement == BsPlacement::regular_ring);
    CHECK(c.experiment.channel.theta_db == 140.5);
    CHECK(c.experiment.channel.absorption_coeff_per_m == 0.01);
    CHECK(c.experiment.pop_size == 30);
    CHECK(c.experiment.pso.inertia == 0.5);
    CHECK(c.experiment.base_seed == 77);
    CHECK(c.experiment.algorithms == std::vector{Algorithm::pso});
    CHECK(c.sweep_ue_counts == std::vector<std::size_t>{10, 20});
    CHECK(c.macsim.beacon.num_abft_slots == 4);
    CHECK_FALSE(c.macsim.beacon.ati_present);
}

TEST_CASE("errors name the offending key") {
    CHECK(error_key(json{{"topology.nbs", 3}}) == "topology.nbs");
    CHECK(error_key(json{{"topology.n_bs", "six"}}) == "topology.n_bs");
    CHECK(error_key(json{{"topology.n_bs", 2.5}}) == "topology.n_bs");
    CHECK(error_key(json{{"topology.n_bs", 0}}) == "topology.n_bs");
    CHECK(error_key(json{{"channel.bandwidth_hz", -1}}) == "channel.bandwidth_hz");
    CHECK(error_key(json{{"solver.pop_size", 3}}) == "solver.pop_size");
    CHECK(error_key(json{{"experiment.algorithms", {"gwo", "abc"}}}) == "experiment.algorithms");
    CHECK(error_key(json{{"experiment.seed", -4}}) == "experiment.seed");
    CHECK(error_key(json{{"topology.bs_placement", "grid"}}) == "topology.bs_placement");
    CHECK(error_key(json{{"sweep.ue_counts", {10, 0}}}) == "sweep.ue_counts");
    CHECK(error_key(json{{"macsim.max_backoff_bi", 0}}) == "macsim.max_backoff_bi");
    CHECK(error_key(json::array()) == "config");
}

TEST_CASE("serialized config parses back to the same values") {
    RunConfig c = parse_config(json{{"topology.n_ue", 33},
                                    {"channel.carrier_frequency_hz", 0.35e12},
                                    {"experiment.algorithms", {"gwo"}},
                                    {"sweep.ue_counts", {5}},
                                    {"macsim.max_bi", 9}});
    const json once = config_to_json(c);
    CHECK(config_to_json(parse_config(json::parse(once.dump()))) == once);
}

TEST_CASE("file loading") {
    const auto dir = std::filesystem::temp_directory_path() / "thzcell_config_test";
    std::filesystem::create_directories(dir);
    const auto good = dir / "good.json";
    std::ofstream(good) << R"({"topology.n_ue": 12})";
    CHECK(load_config(good).experiment.topology.num_ue == 12);

    const auto bad = dir / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS_AS(load_config(bad), ParameterError);
    CHECK_THROWS_AS(load_config(dir / "missing.json"), IoError);
}

TEST_CASE("content hash is FNV-1a 64") {
    CHECK(content_hash("") == "cbf29ce484222325");
    CHECK(content_hash("a") == "af63dc4c8601ec8c");
    CHECK(content_hash("foobar") == "85944171f73967e8");
}
