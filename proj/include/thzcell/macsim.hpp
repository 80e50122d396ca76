#pragma once

// Beacon-interval (BI) level simulator of directional initial access.
//
// Within one BI a searching station locks to the AP sector sweep (BTI),
// then picks an A-BFT slot uniformly at random. A station whose slot nobody
// else picked completes the remaining access steps in the same BI. Colliding
// stations back off for a uniform number of BIs in [1, max_backoff_bi].

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace thzcell {

struct BeaconIntervalConfig {
    int num_sectors = 32;
    int num_abft_slots = 8;
    bool ati_present = true;
    int max_backoff_bi = 4;

    void validate() const;
};

enum class IaPhase {
    searching,      // waiting for a beacon (or backing off)
    synchronized,   // locked to a BTI beacon
    preamble_sent,  // transmitted in an A-BFT slot
    rar_received,   // access response decoded
    connected,      // scheduled communication established
};

struct StationIAState {
    IaPhase phase = IaPhase::searching;
    int bi_count = 0;
    int backoff_remaining = 0;
};

struct AbftOutcome {
    std::vector<bool> success;  // per contender
    int successes = 0;
    int collisions = 0;  // contenders that shared their slot
};

// Each contender picks one of `num_slots` slots uniformly; a contender
// succeeds iff no other contender picked its slot.
AbftOutcome simulate_abft(int num_contenders, int num_slots, std::uint64_t seed);

// Expected collision-free contenders: U * (1 - 1/S)^(U - 1).
double expected_abft_successes(int num_contenders, int num_slots);

struct AbftRound {
    int bi = 0;
    int contenders = 0;
    int successes = 0;
    int collisions = 0;
};

struct InitialAccessResult {
    // BI index (1-based) in which each station connected; nullopt if it was
    // still unconnected after max_bi BIs.
    std::vector<std::optional<int>> latency_bi;
    std::vector<StationIAState> stations;
    std::vector<AbftRound> rounds;

    int connected_count() const;
};

InitialAccessResult simulate_initial_access(const BeaconIntervalConfig& config, int num_stations,
                                            int max_bi, std::uint64_t seed);

// CSV rows: seed,station_id,latency_bi,connected
void write_latency_csv(std::ostream& out, const InitialAccessResult& result, std::uint64_t seed);

}  // namespace thzcell
