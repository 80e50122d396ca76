#include "thzcell/scenario.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "thzcell/errors.hpp"
#include "thzcell/rng.hpp"

namespace thzcell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative slack for the "inside the disk" check so that serialized
// coordinates survive a decimal round trip.
constexpr double kRadiusSlack = 1e-9;

Point2 sample_disk(Rng& rng, double radius) {
    const double r = radius * std::sqrt(unit_uniform(rng));
    const double theta = kTwoPi * unit_uniform(rng);
    return {r * std::cos(theta), r * std::sin(theta)};
}

bool in_angle_range(double angle) { return angle >= 0.0 && angle < kTwoPi; }

}  // namespace

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

void Topology::validate() const {
    require(!base_stations.empty(), "topology.n_bs", "at least one base station required");
    require(!users.empty(), "topology.n_ue", "at least one user required");
    require(radius_m > 0.0 && std::isfinite(radius_m), "topology.radius_m",
            "radius must be positive");

    const double limit = radius_m * (1.0 + kRadiusSlack);
    std::set<int> ids;
    for (const auto& bs : base_stations) {
        require(ids.insert(bs.id).second, "base_stations.id",
                "duplicate base station id " + std::to_string(bs.id));
        require(distance(bs.position, {}) <= limit, "base_stations.position",
                "base station " + std::to_string(bs.id) + " outside deployment disk");
        require(in_angle_range(bs.boresight), "base_stations.boresight",
                "boresight of base station " + std::to_string(bs.id) + " outside [0, 2pi)");
    }
    ids.clear();
    for (const auto& ue : users) {
        require(ids.insert(ue.id).second, "users.id",
                "duplicate user id " + std::to_string(ue.id));
        require(distance(ue.position, {}) <= limit, "users.position",
                "user " + std::to_string(ue.id) + " outside deployment disk");
        require(in_angle_range(ue.boresight), "users.boresight",
                "boresight of user " + std::to_string(ue.id) + " outside [0, 2pi)");
        require(ue.min_rate_bps > 0.0 && std::isfinite(ue.min_rate_bps), "users.min_rate_bps",
                "demand of user " + std::to_string(ue.id) + " must be positive");
    }
}

void TopologyParams::validate() const {
    require(num_bs >= 1, "topology.n_bs", "must be >= 1");
    require(num_ue >= 1, "topology.n_ue", "must be >= 1");
    require(radius_m > 0.0 && std::isfinite(radius_m), "topology.radius_m", "must be > 0");
    require(demand_min_bps > 0.0 && std::isfinite(demand_min_bps), "topology.demand_min_bps",
            "must be > 0");
    require(demand_max_bps >= demand_min_bps && std::isfinite(demand_max_bps),
            "topology.demand_max_bps", "must be >= topology.demand_min_bps");
}

Topology generate_topology(const TopologyParams& params, std::uint64_t seed) {
    params.validate();

    // Separate streams so the UE draws do not depend on the BS placement mode.
    Rng bs_rng(derive_seed(seed, {1}));
    Rng ue_rng(derive_seed(seed, {2}));

    Topology topo;
    topo.radius_m = params.radius_m;
    topo.base_stations.reserve(params.num_bs);
    for (std::size_t i = 0; i < params.num_bs; ++i) {
        BaseStationNode bs;
        bs.id = static_cast<int>(i);
        if (params.bs_placement == BsPlacement::uniform_disk) {
            bs.position = sample_disk(bs_rng, params.radius_m);
        } else if (params.num_bs == 1) {
            bs.position = {0.0, 0.0};
        } else {
            const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(params.num_bs);
            bs.position = {0.5 * params.radius_m * std::cos(theta),
                           0.5 * params.radius_m * std::sin(theta)};
        }
        bs.boresight = kTwoPi * unit_uniform(bs_rng);
        topo.base_stations.push_back(bs);
    }

    topo.users.reserve(params.num_ue);
    for (std::size_t j = 0; j < params.num_ue; ++j) {
        UserNode ue;
        ue.id = static_cast<int>(j);
        ue.position = sample_disk(ue_rng, params.radius_m);
        ue.boresight = kTwoPi * unit_uniform(ue_rng);
        ue.min_rate_bps = params.demand_min_bps == params.demand_max_bps
                              ? params.demand_min_bps
                              : uniform_between(ue_rng, params.demand_min_bps, params.demand_max_bps);
        topo.users.push_back(ue);
    }
    return topo;
}

ScenarioPreset load_scenario_preset(int scenario_id) {
    switch (scenario_id) {
        case 1:
            return {1, 1.0, 1000.0, 50.0, 1, 1000.0, 1000.0, 1000.0, 1000.0, "1e-12", "Critical"};
        case 2:
            return {2, 1.0, 500.0, 10.0, 10, 100.0, 100.0, 1000.0, 1000.0,
                    "Application dependent", "Critical"};
        case 3:
            return {3, 1.0, 10.0, 1.0, 100, 10.0, 10.0, 10.0, 1000.0,
                    "Application dependent", "Application dependent"};
        default:
            throw ParameterError("scenario", "unknown scenario id " + std::to_string(scenario_id) +
                                                 " (expected 1, 2 or 3)");
    }
}

nlohmann::json topology_to_json(const Topology& topology) {
    nlohmann::json doc;
    doc["radius_m"] = topology.radius_m;
    auto& bs_list = doc["base_stations"] = nlohmann::json::array();
    for (const auto& bs : topology.base_stations) {
        bs_list.push_back({{"id", bs.id},
                           {"x", bs.position.x},
                           {"y", bs.position.y},
                           {"boresight", bs.boresight}});
    }
    auto& ue_list = doc["users"] = nlohmann::json::array();
    for (const auto& ue : topology.users) {
        ue_list.push_back({{"id", ue.id},
                           {"x", ue.position.x},
                           {"y", ue.position.y},
                           {"boresight", ue.boresight},
                           {"min_rate_bps", ue.min_rate_bps}});
    }
    return doc;
}

namespace {

template <class T>
T field(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ParameterError(where + "." + key, "missing field");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParameterError(where + "." + key, "wrong type");
    }
}

}  // namespace

Topology topology_from_json(const nlohmann::json& doc) {
    Topology topo;
    topo.radius_m = field<double>(doc, "radius_m", "topology");
    for (const auto& item : field<nlohmann::json>(doc, "base_stations", "topology")) {
        BaseStationNode bs;
        bs.id = field<int>(item, "id", "base_stations");
        bs.position = {field<double>(item, "x", "base_stations"),
                       field<double>(item, "y", "base_stations")};
        bs.boresight = field<double>(item, "boresight", "base_stations");
        topo.base_stations.push_back(bs);
    }
    for (const auto& item : field<nlohmann::json>(doc, "users", "topology")) {
        UserNode ue;
        ue.id = field<int>(item, "id", "users");
        ue.position = {field<double>(item, "x", "users"), field<double>(item, "y", "users")};
        ue.boresight = field<double>(item, "boresight", "users");
        ue.min_rate_bps = field<double>(item, "min_rate_bps", "users");
        topo.users.push_back(ue);
    }
    topo.validate();
    return topo;
}

nlohmann::json preset_to_json(const ScenarioPreset& p) {
    return {{"scenario", p.id},
            {"max_link_latency_ms", p.max_link_latency_ms},
            {"max_link_range_m", p.max_link_range_m},
            {"max_optical_link_range_km", p.max_optical_link_range_km},
            {"connections_per_node", p.connections_per_node},
            {"link_throughput_gbps", p.link_throughput_gbps},
            {"throughput_x_range", {p.throughput_range_gbps, p.throughput_range_m}},
            {"aggregate_throughput_gbps", p.aggregate_throughput_gbps},
            {"target_ber", p.target_ber},
            {"availability", p.availability}};
}

}  // namespace thzcell
