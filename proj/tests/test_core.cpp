#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "test_util.hpp"
#include "vitalwave/types.hpp"

using namespace vitalwave;

TEST_CASE("derive_constants computes wavelength, resolution and max range") {
    RadarConfig cfg;  // 77 GHz, 4 GHz, 256 bins
    const DerivedConstants dc = derive_constants(cfg);
    CHECK(dc.wavelength_m == doctest::Approx(299792458.0 / 77e9).epsilon(1e-12));
    CHECK(dc.wavelength_m == doctest::Approx(3.8934e-3).epsilon(1e-4));
    CHECK(dc.range_resolution_m == doctest::Approx(299792458.0 / 8e9).epsilon(1e-12));
    CHECK(dc.range_resolution_m == doctest::Approx(3.7474e-2).epsilon(1e-4));
    CHECK(dc.max_unambiguous_range_m == doctest::Approx(256 * 299792458.0 / 8e9).epsilon(1e-12));
    CHECK(dc.max_unambiguous_range_m == doctest::Approx(9.59).epsilon(1e-3));
}

TEST_CASE("derive_constants is deterministic and pure") {
    RadarConfig cfg;
    const DerivedConstants a = derive_constants(cfg);
    const DerivedConstants b = derive_constants(cfg);
    CHECK(a.wavelength_m == b.wavelength_m);
    CHECK(a.range_resolution_m == b.range_resolution_m);
    CHECK(a.max_unambiguous_range_m == b.max_unambiguous_range_m);
}

TEST_CASE("derive_constants rejects non-positive frequency or bandwidth") {
    RadarConfig cfg;
    cfg.carrier_freq_hz = 0.0;
    CHECK_THROWS_AS(derive_constants(cfg), ConfigError);
    cfg = RadarConfig{};
    cfg.bandwidth_hz = -1.0;
    CHECK_THROWS_AS(derive_constants(cfg), ConfigError);
}

TEST_CASE("slope consistency flag") {
    RadarConfig cfg;
    CHECK(slope_bandwidth_consistent(cfg));
    cfg.chirp_slope_hz_per_s = 66e9;  // far from B/Tc for a 64 us chirp
    CHECK_FALSE(slope_bandwidth_consistent(cfg));
    // tolerated by derive_constants, only flagged
    CHECK_NOTHROW(derive_constants(cfg));
}

TEST_CASE("config invariants") {
    RadarConfig cfg;
    cfg.num_range_bins = 200;  // not a power of two
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RadarConfig{};
    cfg.slow_time_rate_hz = 3.0;  // below the physiological Nyquist margin
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RadarConfig{};
    cfg.num_tx = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("phase_to_displacement examples") {
    const double lam = 3.8934e-3;
    SUBCASE("zero phase maps to zero displacement") {
        auto sig = vwtest::make_signal({0.0, 0.0, 0.0}, 20.0);
        const auto d = phase_to_displacement(sig, lam);
        CHECK(d.unit == SignalUnit::meters);
        for (double v : d.samples) CHECK(v == 0.0);
    }
    SUBCASE("phi = pi gives lambda/4") {
        auto sig = vwtest::make_signal({std::numbers::pi, std::numbers::pi}, 20.0);
        const auto d = phase_to_displacement(sig, lam);
        CHECK(d.samples[0] == doctest::Approx(lam / 4.0).epsilon(1e-12));
        CHECK(d.samples[0] == doctest::Approx(0.9734e-3).epsilon(1e-4));
    }
    SUBCASE("phi = 4pi gives one wavelength") {
        auto sig = vwtest::make_signal({4.0 * std::numbers::pi}, 20.0);
        sig.samples.push_back(0.0);
        const auto d = phase_to_displacement(sig, 4e-3);
        CHECK(d.samples[0] == doctest::Approx(4e-3).epsilon(1e-12));
    }
}

TEST_CASE("phase_to_displacement rejects wrong unit") {
    auto sig = vwtest::make_signal({1.0, 2.0}, 20.0, SignalUnit::meters);
    CHECK_THROWS_AS(phase_to_displacement(sig, 4e-3), UnitMismatchError);
    auto sig2 = vwtest::make_signal({1.0, 2.0}, 20.0, SignalUnit::radians);
    CHECK_THROWS_AS(displacement_to_phase(sig2, 4e-3), UnitMismatchError);
}

TEST_CASE("phase_to_displacement is linear") {
    Rng rng(42);
    const double lam = 3.8934e-3;
    std::vector<double> p1 = vwtest::white_noise(1.0, 64, rng);
    std::vector<double> p2 = vwtest::white_noise(1.0, 64, rng);
    const double a = 2.25, b = -0.75;
    std::vector<double> combo(64);
    for (int i = 0; i < 64; ++i) combo[i] = a * p1[i] + b * p2[i];
    const auto d1 = phase_to_displacement(vwtest::make_signal(p1, 20.0), lam);
    const auto d2 = phase_to_displacement(vwtest::make_signal(p2, 20.0), lam);
    const auto dc = phase_to_displacement(vwtest::make_signal(combo, 20.0), lam);
    for (int i = 0; i < 64; ++i) {
        CHECK(dc.samples[i] ==
              doctest::Approx(a * d1.samples[i] + b * d2.samples[i]).epsilon(1e-12));
    }
}

TEST_CASE("displacement -> phase -> displacement round trip is identity") {
    Rng rng(7);
    const double lam = 3.8934e-3;
    auto sig = vwtest::make_signal(vwtest::white_noise(1e-3, 256, rng), 20.0, SignalUnit::meters);
    const auto back = phase_to_displacement(displacement_to_phase(sig, lam), lam);
    for (std::size_t i = 0; i < sig.samples.size(); ++i) {
        CHECK(back.samples[i] == doctest::Approx(sig.samples[i]).epsilon(1e-12));
    }
}

TEST_CASE("cube validation") {
    RadarConfig cfg;
    cfg.num_tx = 1;
    cfg.num_rx = 2;
    RadarCube cube(cfg, 2, 4, 8);
    CHECK_NOTHROW(cube.validate());
    cube.at(1, 2, 3) = {std::nan(""), 0.0};
    CHECK_THROWS_AS(cube.validate(), DataError);

    RadarCube mismatched(cfg, 3, 4, 8);  // 3 channels vs num_tx*num_rx = 2
    CHECK_THROWS_AS(mismatched.validate(), DataError);
}
