#pragma once

// Flat dotted-key configuration documents, e.g.
//
//   { "topology.n_bs": 6, "channel.theta_db": 120, "solver.pop_size": 200 }
//
// Missing keys keep their defaults; unknown keys and bad values raise
// ParameterError naming the key.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "thzcell/harness.hpp"
#include "thzcell/macsim.hpp"

namespace thzcell {

struct MacSimSettings {
    BeaconIntervalConfig beacon;
    int num_stations = 16;
    int max_bi = 100;
};

struct RunConfig {
    ExperimentConfig experiment;
    std::vector<std::size_t> sweep_ue_counts;
    MacSimSettings macsim;
};

RunConfig parse_config(const nlohmann::json& doc);

// Reads and parses a config file. Throws IoError if unreadable and
// ParameterError on malformed JSON or bad values.
RunConfig load_config(const std::filesystem::path& path);

// Every recognised key with its current value.
nlohmann::json config_to_json(const RunConfig& config);

// FNV-1a 64 of the bytes, as 16 lowercase hex digits.
std::string content_hash(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);

}  // namespace thzcell
