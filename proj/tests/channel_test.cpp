#include <doctest.h>

#include <cmath>
#include <numbers>

#include "thzcell/channel.hpp"
#include "thzcell/errors.hpp"
#include "thzcell/rng.hpp"

using namespace thzcell;

// Reference values below were evaluated by hand (arbitrary-precision
// calculator) with c = 299792458 m/s:
//   20*log10(4*pi*3e11/c)                   = 81.99020831627662 dB
//   120 - 81.99020831627662                 = 38.00979168372338 dB
//   1e9*log2(1 + 10^(38.00979168372338/10)) = 12626807606.27 bit/s
//   10*log10(e)                             = 4.342944819032518 dB

TEST_CASE("free-space path loss") {
    const double f = 300e9;
    CHECK(fspl_db(f, kSpeedOfLight / (4.0 * std::numbers::pi * f)) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(fspl_db(f, 1.0) == doctest::Approx(81.99020831627662).epsilon(1e-12));
    CHECK(fspl_db(f, 10.0) == doctest::Approx(fspl_db(f, 1.0) + 20.0).epsilon(1e-12));
    CHECK(fspl_db(2 * f, 1.0) > fspl_db(f, 1.0));
    CHECK(fspl_db(f, 2.0) > fspl_db(f, 1.0));
    CHECK_THROWS_AS(fspl_db(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(fspl_db(f, 0.0), ParameterError);
    CHECK_THROWS_AS(fspl_db(f, -1.0), ParameterError);
}

TEST_CASE("molecular absorption loss") {
    CHECK(mal_db(37.0, 0.0) == 0.0);
    CHECK(mal_db(0.0, 0.5) == 0.0);
    CHECK(mal_db(100.0, 0.01) == doctest::Approx(4.342944819032518).epsilon(1e-12));
    CHECK(mal_db(200.0, 0.01) == doctest::Approx(2.0 * mal_db(100.0, 0.01)));
    // Large K*d would overflow e^(K*d); the dB form stays finite.
    CHECK(std::isfinite(mal_db(1e4, 1.0)));
    CHECK_THROWS_AS(mal_db(-1.0, 0.1), ParameterError);
    CHECK_THROWS_AS(mal_db(1.0, -0.1), ParameterError);
}

TEST_CASE("achievable rate") {
    LinkBudgetParams p;
    SUBCASE("0 dB SNR over 1 GHz is 1 Gbps") {
        p.theta_db = fspl_db(p.carrier_frequency_hz, 5.0);
        CHECK(snr_db(p, 5.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(achievable_rate(p, 5.0) == doctest::Approx(1e9).epsilon(1e-12));
    }
    SUBCASE("composed link budget at 1 m") {
        CHECK(snr_db(p, 1.0) == doctest::Approx(38.00979168372338).epsilon(1e-12));
        CHECK(achievable_rate(p, 1.0) == doctest::Approx(12626807606.27).epsilon(1e-10));
    }
    SUBCASE("rate vanishes with distance") {
        CHECK(achievable_rate(p, 1e6) < 10.0);
        CHECK(achievable_rate(p, 1e8) < 1e-3);
        CHECK(achievable_rate(p, 1e9) >= 0.0);
    }
    SUBCASE("absorption lowers the rate") {
        LinkBudgetParams absorbing = p;
        absorbing.absorption_coeff_per_m = 0.05;
        CHECK(achievable_rate(absorbing, 20.0) < achievable_rate(p, 20.0));
    }
}

TEST_CASE("losses add in dB") {
    LinkBudgetParams p;
    p.absorption_coeff_per_m = 0.02;
    Rng rng(11);
    for (int n = 0; n < 1000; ++n) {
        const double d = uniform_between(rng, 0.1, 500.0);
        CHECK(p.theta_db - snr_db(p, d) ==
              doctest::Approx(fspl_db(p.carrier_frequency_hz, d) + mal_db(d, 0.02)).epsilon(1e-12));
    }
}

TEST_CASE("rate is non-increasing in distance") {
    LinkBudgetParams p;
    p.absorption_coeff_per_m = 0.003;
    Rng rng(7);
    for (int n = 0; n < 10000; ++n) {
        double d1 = uniform_between(rng, 0.0, 300.0);
        double d2 = uniform_between(rng, 0.0, 300.0);
        if (d1 > d2) std::swap(d1, d2);
        CHECK(achievable_rate(p, d1) >= achievable_rate(p, d2));
    }
}

TEST_CASE("distances below the minimum are clamped") {
    LinkBudgetParams p;
    p.min_distance_m = 0.25;
    const double at_min = achievable_rate(p, 0.25);
    for (double d : {0.0, 1e-9, 0.1, 0.2499}) CHECK(achievable_rate(p, d) == at_min);
    CHECK(achievable_rate(p, 0.3) < at_min);
}

TEST_CASE("link budget validation names the key") {
    auto key_of = [](const LinkBudgetParams& p) {
        try {
            p.validate();
        } catch (const ParameterError& e) {
            return e.key();
        }
        return std::string();
    };
    LinkBudgetParams p;
    CHECK(key_of(p).empty());
    p.carrier_frequency_hz = 0.0;
    CHECK(key_of(p) == "channel.carrier_frequency_hz");
    p = {};
    p.bandwidth_hz = -1.0;
    CHECK(key_of(p) == "channel.bandwidth_hz");
    p = {};
    p.absorption_coeff_per_m = -0.1;
    CHECK(key_of(p) == "channel.absorption_coeff_per_m");
    p = {};
    p.min_distance_m = 0.0;
    CHECK(key_of(p) == "channel.min_distance_m");
    CHECK_THROWS_AS(achievable_rate(LinkBudgetParams{}, -1.0), ParameterError);
}
