#include "thzcell/macsim.hpp"

#include <algorithm>
#include <cmath>

#include "thzcell/errors.hpp"
#include "thzcell/rng.hpp"

namespace thzcell {

namespace {

// Slot contention with a caller-owned stream; fills `slot_of` and returns
// per-contender success.
AbftOutcome contend(int num_contenders, int num_slots, Rng& rng) {
    std::vector<int> slot_of(static_cast<std::size_t>(num_contenders));
    std::vector<int> load(static_cast<std::size_t>(num_slots), 0);
    for (int& s : slot_of) {
        s = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(num_slots)));
        ++load[static_cast<std::size_t>(s)];
    }
    AbftOutcome out;
    out.success.resize(slot_of.size());
    for (std::size_t k = 0; k < slot_of.size(); ++k) {
        const bool alone = load[static_cast<std::size_t>(slot_of[k])] == 1;
        out.success[k] = alone;
        alone ? ++out.successes : ++out.collisions;
    }
    return out;
}

}  // namespace

void BeaconIntervalConfig::validate() const {
    require(num_sectors >= 1, "macsim.num_sectors", "must be >= 1");
    require(num_abft_slots >= 1, "macsim.num_abft_slots", "must be >= 1");
    require(max_backoff_bi >= 1, "macsim.max_backoff_bi", "must be >= 1");
}

AbftOutcome simulate_abft(int num_contenders, int num_slots, std::uint64_t seed) {
    require(num_contenders >= 1, "num_contenders", "must be >= 1");
    require(num_slots >= 1, "num_slots", "must be >= 1");
    Rng rng(derive_seed(seed, {0xabf7}));
    return contend(num_contenders, num_slots, rng);
}

double expected_abft_successes(int num_contenders, int num_slots) {
    require(num_contenders >= 1, "num_contenders", "must be >= 1");
    require(num_slots >= 1, "num_slots", "must be >= 1");
    const double u = num_contenders;
    return u * std::pow(1.0 - 1.0 / num_slots, u - 1.0);
}

int InitialAccessResult::connected_count() const {
    return static_cast<int>(
        std::count_if(latency_bi.begin(), latency_bi.end(), [](const auto& l) { return l.has_value(); }));
}

InitialAccessResult simulate_initial_access(const BeaconIntervalConfig& config, int num_stations,
                                            int max_bi, std::uint64_t seed) {
    config.validate();
    require(num_stations >= 1, "macsim.num_stations", "must be >= 1");
    require(max_bi >= 1, "macsim.max_bi", "must be >= 1");

    Rng rng(derive_seed(seed, {0x1a}));
    InitialAccessResult result;
    result.latency_bi.assign(static_cast<std::size_t>(num_stations), std::nullopt);
    result.stations.assign(static_cast<std::size_t>(num_stations), StationIAState{});

    std::vector<std::size_t> contenders;
    for (int bi = 1; bi <= max_bi; ++bi) {
        contenders.clear();
        for (std::size_t k = 0; k < result.stations.size(); ++k) {
            auto& st = result.stations[k];
            if (st.phase == IaPhase::connected) continue;
            st.bi_count = bi;
            if (st.backoff_remaining > 0 && --st.backoff_remaining > 0) continue;
            // Step 1: the BTI sweep covers every sector, so detection is certain.
            st.phase = IaPhase::synchronized;
            contenders.push_back(k);
        }
        if (contenders.empty()) {
            if (result.connected_count() == num_stations) break;
            continue;
        }

        // Step 2: preamble in a random A-BFT slot.
        const AbftOutcome outcome =
            contend(static_cast<int>(contenders.size()), config.num_abft_slots, rng);
        result.rounds.push_back({bi, static_cast<int>(contenders.size()), outcome.successes,
                                 outcome.collisions});
        for (std::size_t c = 0; c < contenders.size(); ++c) {
            auto& st = result.stations[contenders[c]];
            st.phase = IaPhase::preamble_sent;
            if (outcome.success[c]) {
                // Steps 3-5 are deterministic once the preamble is heard.
                st.phase = IaPhase::rar_received;
                st.phase = IaPhase::connected;
                result.latency_bi[contenders[c]] = bi;
            } else {
                st.phase = IaPhase::searching;
                st.backoff_remaining = 1 + static_cast<int>(uniform_index(
                                               rng, static_cast<std::uint64_t>(config.max_backoff_bi)));
            }
        }
    }
    return result;
}

void write_latency_csv(std::ostream& out, const InitialAccessResult& result, std::uint64_t seed) {
    out << "seed,station_id,latency_bi,connected\n";
    for (std::size_t k = 0; k < result.latency_bi.size(); ++k) {
        const auto& l = result.latency_bi[k];
        out << seed << ',' << k << ',';
        if (l) {
            out << *l << ",1\n";
        } else {
            out << ",0\n";
        }
    }
}

}  // namespace thzcell
