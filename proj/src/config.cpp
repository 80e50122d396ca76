#include "thzcell/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "thzcell/errors.hpp"

namespace thzcell {

namespace {

using Json = nlohmann::json;

double as_double(const Json& v, const std::string& key) {
    require(v.is_number(), key.c_str(), "expected a number");
    return v.get<double>();
}

std::int64_t as_int(const Json& v, const std::string& key) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        require(std::floor(d) == d && std::abs(d) < 9e15, key.c_str(), "expected an integer");
        return static_cast<std::int64_t>(d);
    }
    throw ParameterError(key, "expected an integer");
}

int as_count(const Json& v, const std::string& key) {
    const auto n = as_int(v, key);
    require(n >= 0 && n <= std::numeric_limits<int>::max(), key.c_str(), "out of range");
    return static_cast<int>(n);
}

using Setter = std::function<void(RunConfig&, const Json&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"topology.n_bs",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.topology.num_bs = static_cast<std::size_t>(as_count(v, k));
         }},
        {"topology.n_ue",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.topology.num_ue = static_cast<std::size_t>(as_count(v, k));
         }},
        {"topology.radius_m",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.topology.radius_m = as_double(v, k);
         }},
        {"topology.demand_min_bps",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.topology.demand_min_bps = as_double(v, k);
         }},
        {"topology.demand_max_bps",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.topology.demand_max_bps = as_double(v, k);
         }},
        {"topology.bs_placement",
         [](RunConfig& c, const Json& v, const std::string& k) {
             require(v.is_string(), k.c_str(), "expected \"uniform\" or \"ring\"");
             const auto s = v.get<std::string>();
             if (s == "uniform") {
                 c.experiment.topology.bs_placement = BsPlacement::uniform_disk;
             } else if (s == "ring") {
                 c.experiment.topology.bs_placement = BsPlacement::regular_ring;
             } else {
                 throw ParameterError(k, "expected \"uniform\" or \"ring\", got \"" + s + "\"");
             }
         }},
        {"channel.carrier_frequency_hz",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.channel.carrier_frequency_hz = as_double(v, k);
         }},
        {"channel.bandwidth_hz",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.channel.bandwidth_hz = as_double(v, k);
         }},
        {"channel.theta_db",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.channel.theta_db = as_double(v, k);
         }},
        {"channel.absorption_coeff_per_m",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.channel.absorption_coeff_per_m = as_double(v, k);
         }},
        {"channel.min_distance_m",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.channel.min_distance_m = as_double(v, k);
         }},
        {"solver.pop_size",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.pop_size = as_count(v, k);
         }},
        {"solver.g_max",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.g_max = as_count(v, k);
         }},
        {"pso.inertia",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.pso.inertia = as_double(v, k);
         }},
        {"pso.cognitive",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.pso.cognitive = as_double(v, k);
         }},
        {"pso.social",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.pso.social = as_double(v, k);
         }},
        {"pso.v_max_fraction",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.pso.v_max_fraction = as_double(v, k);
         }},
        {"experiment.num_topologies",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.experiment.num_topologies = as_count(v, k);
         }},
        {"experiment.seed",
         [](RunConfig& c, const Json& v, const std::string& k) {
             require(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0),
                     k.c_str(), "expected a non-negative integer");
             c.experiment.base_seed = v.get<std::uint64_t>();
         }},
        {"experiment.algorithms",
         [](RunConfig& c, const Json& v, const std::string& k) {
             require(v.is_array(), k.c_str(), "expected a list such as [\"gwo\", \"pso\"]");
             c.experiment.algorithms.clear();
             for (const auto& item : v) {
                 require(item.is_string(), k.c_str(), "expected algorithm names");
                 try {
                     c.experiment.algorithms.push_back(parse_algorithm(item.get<std::string>()));
                 } catch (const ParameterError& e) {
                     throw ParameterError(k, e.what());
                 }
             }
         }},
        {"sweep.ue_counts",
         [](RunConfig& c, const Json& v, const std::string& k) {
             require(v.is_array(), k.c_str(), "expected a list of UE counts");
             c.sweep_ue_counts.clear();
             for (const auto& item : v) {
                 const int n = as_count(item, k);
                 require(n >= 1, k.c_str(), "UE counts must be >= 1");
                 c.sweep_ue_counts.push_back(static_cast<std::size_t>(n));
             }
         }},
        {"macsim.num_sectors",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.macsim.beacon.num_sectors = as_count(v, k);
         }},
        {"macsim.num_abft_slots",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.macsim.beacon.num_abft_slots = as_count(v, k);
         }},
        {"macsim.ati_present",
         [](RunConfig& c, const Json& v, const std::string& k) {
             require(v.is_boolean(), k.c_str(), "expected true or false");
             c.macsim.beacon.ati_present = v.get<bool>();
         }},
        {"macsim.max_backoff_bi",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.macsim.beacon.max_backoff_bi = as_count(v, k);
         }},
        {"macsim.num_stations",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.macsim.num_stations = as_count(v, k);
         }},
        {"macsim.max_bi",
         [](RunConfig& c, const Json& v, const std::string& k) {
             c.macsim.max_bi = as_count(v, k);
         }},
    };
    return table;
}

}  // namespace

RunConfig parse_config(const nlohmann::json& doc) {
    require(doc.is_object(), "config", "expected a JSON object of dotted keys");
    RunConfig config;
    for (const auto& [key, value] : doc.items()) {
        const auto it = setters().find(key);
        if (it == setters().end()) throw ParameterError(key, "unknown config key");
        it->second(config, value, key);
    }
    config.experiment.validate();
    config.macsim.beacon.validate();
    require(config.macsim.num_stations >= 1, "macsim.num_stations", "must be >= 1");
    require(config.macsim.max_bi >= 1, "macsim.max_bi", "must be >= 1");
    return config;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error while reading " + path.string());
    return buf.str();
}

RunConfig load_config(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParameterError("config", path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

nlohmann::json config_to_json(const RunConfig& c) {
    const auto& e = c.experiment;
    auto algorithms = nlohmann::json::array();
    for (Algorithm a : e.algorithms) algorithms.push_back(std::string(to_string(a)));
    return {
        {"topology.n_bs", e.topology.num_bs},
        {"topology.n_ue", e.topology.num_ue},
        {"topology.radius_m", e.topology.radius_m},
        {"topology.demand_min_bps", e.topology.demand_min_bps},
        {"topology.demand_max_bps", e.topology.demand_max_bps},
        {"topology.bs_placement",
         e.topology.bs_placement == BsPlacement::uniform_disk ? "uniform" : "ring"},
        {"channel.carrier_frequency_hz", e.channel.carrier_frequency_hz},
        {"channel.bandwidth_hz", e.channel.bandwidth_hz},
        {"channel.theta_db", e.channel.theta_db},
        {"channel.absorption_coeff_per_m", e.channel.absorption_coeff_per_m},
        {"channel.min_distance_m", e.channel.min_distance_m},
        {"solver.pop_size", e.pop_size},
        {"solver.g_max", e.g_max},
        {"pso.inertia", e.pso.inertia},
        {"pso.cognitive", e.pso.cognitive},
        {"pso.social", e.pso.social},
        {"pso.v_max_fraction", e.pso.v_max_fraction},
        {"experiment.num_topologies", e.num_topologies},
        {"experiment.seed", e.base_seed},
        {"experiment.algorithms", algorithms},
        {"sweep.ue_counts", c.sweep_ue_counts},
        {"macsim.num_sectors", c.macsim.beacon.num_sectors},
        {"macsim.num_abft_slots", c.macsim.beacon.num_abft_slots},
        {"macsim.ati_present", c.macsim.beacon.ati_present},
        {"macsim.max_backoff_bi", c.macsim.beacon.max_backoff_bi},
        {"macsim.num_stations", c.macsim.num_stations},
        {"macsim.max_bi", c.macsim.max_bi},
    };
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

}  // namespace thzcell
