#pragma once

// THz link budget: distance -> path loss -> SNR -> achievable rate.
//
//   SNR_dB = theta_db - FSPL_dB(f, d) - MAL_dB(d, K)
//   rate   = B * log2(1 + 10^(SNR_dB / 10))
//
// theta_db folds transmit power, both antenna gains and the total noise
// power into one figure, so the bandwidth does not rescale the noise.

namespace thzcell {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

struct LinkBudgetParams {
    double carrier_frequency_hz = 300e9;
    double bandwidth_hz = 1e9;
    double theta_db = 120.0;
    double absorption_coeff_per_m = 0.0;  // molecular absorption exponent K
    double min_distance_m = 0.1;          // distances below this are clamped

    void validate() const;
};

// Free-space path loss 20*log10(4*pi*f*d/c).
double fspl_db(double frequency_hz, double distance_m);

// Molecular absorption loss 10*log10(e^(K*d)).
double mal_db(double distance_m, double absorption_coeff_per_m);

double snr_db(const LinkBudgetParams& params, double distance_m);

// Shannon rate in bit/s; non-increasing in distance.
double achievable_rate(const LinkBudgetParams& params, double distance_m);

}  // namespace thzcell
