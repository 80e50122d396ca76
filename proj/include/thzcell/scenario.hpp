#pragma once

// Network instances: base stations and users on a disk, per-user rate
// demands, and the three technical-scenario KPI presets.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace thzcell {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b);

struct BaseStationNode {
    int id = 0;
    Point2 position;
    double boresight = 0.0;  // radians, [0, 2*pi)

    friend bool operator==(const BaseStationNode&, const BaseStationNode&) = default;
};

struct UserNode {
    int id = 0;
    Point2 position;
    double boresight = 0.0;     // radians, [0, 2*pi)
    double min_rate_bps = 0.0;  // minimum rate demand

    friend bool operator==(const UserNode&, const UserNode&) = default;
};

struct Topology {
    std::vector<BaseStationNode> base_stations;
    std::vector<UserNode> users;
    double radius_m = 0.0;

    std::size_t num_bs() const { return base_stations.size(); }
    std::size_t num_ue() const { return users.size(); }

    // Throws ParameterError on any broken invariant (empty node sets,
    // duplicate ids, nodes outside the disk, non-positive demands).
    void validate() const;

    friend bool operator==(const Topology&, const Topology&) = default;
};

enum class BsPlacement {
    uniform_disk,  // same area-uniform law as the users
    regular_ring,  // evenly spaced on the circle of radius R/2 (one BS: centre)
};

struct TopologyParams {
    std::size_t num_bs = 6;
    std::size_t num_ue = 120;
    double radius_m = 50.0;
    double demand_min_bps = 1e9;
    double demand_max_bps = 10e9;
    BsPlacement bs_placement = BsPlacement::uniform_disk;

    void validate() const;
};

Topology generate_topology(const TopologyParams& params, std::uint64_t seed);

// One row of the technical-scenario KPI table.
struct ScenarioPreset {
    int id = 0;
    double max_link_latency_ms = 0.0;
    double max_link_range_m = 0.0;
    double max_optical_link_range_km = 0.0;
    int connections_per_node = 0;
    double link_throughput_gbps = 0.0;          // per connection
    double throughput_range_gbps = 0.0;         // throughput x range product,
    double throughput_range_m = 0.0;            //   kept as its two factors
    double aggregate_throughput_gbps = 0.0;     // link throughput x connections
    std::string target_ber;
    std::string availability;
};

ScenarioPreset load_scenario_preset(int scenario_id);

// Document form: {radius_m, base_stations[{id,x,y,boresight}],
// users[{id,x,y,boresight,min_rate_bps}]}.
nlohmann::json topology_to_json(const Topology& topology);
Topology topology_from_json(const nlohmann::json& doc);

nlohmann::json preset_to_json(const ScenarioPreset& preset);

}  // namespace thzcell
