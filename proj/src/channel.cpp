#include "thzcell/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thzcell/errors.hpp"

namespace thzcell {

void LinkBudgetParams::validate() const {
    require(carrier_frequency_hz > 0.0 && std::isfinite(carrier_frequency_hz),
            "channel.carrier_frequency_hz", "must be > 0");
    require(bandwidth_hz > 0.0 && std::isfinite(bandwidth_hz), "channel.bandwidth_hz",
            "must be > 0");
    require(std::isfinite(theta_db), "channel.theta_db", "must be finite");
    require(absorption_coeff_per_m >= 0.0 && std::isfinite(absorption_coeff_per_m),
            "channel.absorption_coeff_per_m", "must be >= 0");
    require(min_distance_m > 0.0 && std::isfinite(min_distance_m), "channel.min_distance_m",
            "must be > 0");
}

double fspl_db(double frequency_hz, double distance_m) {
    require(frequency_hz > 0.0, "frequency_hz", "must be > 0");
    require(distance_m > 0.0, "distance_m", "must be > 0");
    return 20.0 * std::log10(4.0 * std::numbers::pi * frequency_hz * distance_m / kSpeedOfLight);
}

double mal_db(double distance_m, double absorption_coeff_per_m) {
    require(distance_m >= 0.0, "distance_m", "must be >= 0");
    require(absorption_coeff_per_m >= 0.0, "absorption_coeff_per_m", "must be >= 0");
    // 10*log10(e^x) evaluated without forming e^x, which overflows for long links.
    return 10.0 * absorption_coeff_per_m * distance_m * std::numbers::log10e;
}

double snr_db(const LinkBudgetParams& params, double distance_m) {
    params.validate();
    require(distance_m >= 0.0, "distance_m", "must be >= 0");
    const double d = std::max(distance_m, params.min_distance_m);
    return params.theta_db - fspl_db(params.carrier_frequency_hz, d) -
           mal_db(d, params.absorption_coeff_per_m);
}

double achievable_rate(const LinkBudgetParams& params, double distance_m) {
    const double snr_linear = std::pow(10.0, snr_db(params, distance_m) / 10.0);
    return params.bandwidth_hz * std::log1p(snr_linear) / std::numbers::ln2;
}

}  // namespace thzcell
