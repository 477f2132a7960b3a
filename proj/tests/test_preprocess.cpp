#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "vitalwave/fft.hpp"
#include "vitalwave/motion.hpp"
#include "vitalwave/preprocess.hpp"
#include "vitalwave/range_select.hpp"
#include "vitalwave/simulator.hpp"
#include "vitalwave/spectrum.hpp"

using namespace vitalwave;

namespace {

RadarCube blank_cube(int channels, int chirps, int samples) {
    RadarConfig cfg;
    cfg.num_tx = 1;
    cfg.num_rx = channels;
    cfg.num_range_bins = 256;
    return RadarCube(cfg, channels, chirps, samples);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

Scenario one_scatterer(double range_m, double alpha = 0.0, double beta = 0.0) {
    Scenario s;
    s.config.num_tx = 1;
    s.config.num_rx = 1;
    Scatterer sc;
    sc.rest_range_m = range_m;
    sc.alpha = alpha;
    sc.beta = beta;
    s.scatterers = {sc};
    s.coupling = ChannelCoupling(1, 1);
    s.coupling.gain[0] = {1.0, 0.0};
    s.noise_snr_db = kInf;
    s.phase_noise_std_rad = 0.0;
    return s;
}

}  // namespace

TEST_CASE("remove_dc zeroes the fast-time mean per chirp") {
    RadarCube cube = blank_cube(1, 4, 256);
    Rng rng(12);
    for (auto& v : cube.data) v = {rng.normal() + 3.5, rng.normal() - 1.25};
    remove_dc(cube);
    for (int m = 0; m < cube.num_chirps; ++m) {
        cdouble mean(0.0, 0.0);
        double scale = 0.0;
        for (int n = 0; n < cube.samples_per_chirp; ++n) {
            mean += cube.at(0, m, n);
            scale = std::max(scale, std::abs(cube.at(0, m, n)));
        }
        mean /= static_cast<double>(cube.samples_per_chirp);
        CHECK(std::abs(mean) < 1e-12 * std::max(scale, 1.0));
    }
}

TEST_CASE("remove_dc on a constant vector gives zeros; zero input stays zero") {
    RadarCube cube = blank_cube(1, 2, 64);
    for (int n = 0; n < 64; ++n) cube.at(0, 0, n) = {2.5, -1.0};
    remove_dc(cube);
    for (int n = 0; n < 64; ++n) {
        CHECK(std::abs(cube.at(0, 0, n)) < 1e-14);
        CHECK(std::abs(cube.at(0, 1, n)) == 0.0);
    }
}

TEST_CASE("remove_dc suppresses a DC offset on a sinusoid by >= 60 dB") {
    RadarCube cube = blank_cube(1, 1, 256);
    const double offset = 4.0;
    for (int n = 0; n < 256; ++n) {
        const double tone = std::cos(2.0 * std::numbers::pi * 20.0 * n / 256.0);
        cube.at(0, 0, n) = {tone + offset, 0.0};
    }
    std::vector<cdouble> before(256), after(256);
    for (int n = 0; n < 256; ++n) before[n] = cube.at(0, 0, n);
    remove_dc(cube);
    for (int n = 0; n < 256; ++n) after[n] = cube.at(0, 0, n);
    fft_pow2(before, false);
    fft_pow2(after, false);
    const double dc_before = std::norm(before[0]);
    const double dc_after = std::norm(after[0]);
    CHECK(10.0 * std::log10(dc_before / std::max(dc_after, 1e-300)) >= 60.0);
    // tone energy untouched
    CHECK(std::abs(after[20]) == doctest::Approx(std::abs(before[20])).epsilon(1e-9));
}

TEST_CASE("range_transform: lone scatterer at 0.5 m peaks at bin 13 +- 1") {
    const RadarCube cube = synthesize_cube(one_scatterer(0.5));
    const auto mats = preprocess_cube(cube);
    const auto profile = mean_power_profile(mats[0]);
    const int argmax = static_cast<int>(
        std::max_element(profile.begin(), profile.end()) - profile.begin());
    CHECK(std::abs(argmax - 13) <= 1);
    CHECK(mats[0].num_bins == cube.config.num_range_bins);
    CHECK(mats[0].num_cols == cube.num_chirps);
}

TEST_CASE("range_transform resolves two scatterers >= 2 bins apart") {
    Scenario s = one_scatterer(0.45);
    Scatterer sc2;
    sc2.rest_range_m = 0.60;  // 4 bins away
    s.scatterers.push_back(sc2);
    s.coupling = ChannelCoupling(1, 2);
    s.coupling.gain[0] = {1.0, 0.0};
    s.coupling.gain[1] = {1.0, 0.0};
    const RadarCube cube = synthesize_cube(s);
    const auto mats = preprocess_cube(cube);
    const auto profile = mean_power_profile(mats[0]);
    const DerivedConstants dc = derive_constants(s.config);
    const int b1 = static_cast<int>(std::lround(0.45 / dc.range_resolution_m));
    const int b2 = static_cast<int>(std::lround(0.60 / dc.range_resolution_m));
    // local maxima at both scatterer bins (within one bin)
    auto is_local_peak_near = [&](int bin) {
        for (int b = bin - 1; b <= bin + 1; ++b) {
            if (profile[b] > profile[b - 2] && profile[b] > profile[b + 2]) return true;
        }
        return false;
    };
    CHECK(is_local_peak_near(b1));
    CHECK(is_local_peak_near(b2));
}

TEST_CASE("range_transform is linear in its input") {
    Rng rng(31);
    RadarCube a = blank_cube(1, 3, 256);
    RadarCube b = blank_cube(1, 3, 256);
    for (auto& v : a.data) v = {rng.normal(), rng.normal()};
    for (auto& v : b.data) v = {rng.normal(), rng.normal()};
    RadarCube sum = a;
    for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += b.data[i];
    const auto ma = range_transform(a, 0);
    const auto mb = range_transform(b, 0);
    const auto ms = range_transform(sum, 0);
    for (std::size_t i = 0; i < ms.bins.size(); ++i) {
        CHECK(std::abs(ms.bins[i] - (ma.bins[i] + mb.bins[i])) < 1e-9);
    }
}

TEST_CASE("fast-time length != num_range_bins is padded or truncated") {
    // shorter record zero-pads
    RadarCube cube = blank_cube(1, 2, 200);
    Rng rng(5);
    for (auto& v : cube.data) v = {rng.normal(), rng.normal()};
    const auto mats = preprocess_cube(cube);
    CHECK(mats[0].num_bins == 256);
    // longer record truncates
    RadarCube cube2 = blank_cube(1, 2, 300);
    for (auto& v : cube2.data) v = {rng.normal(), rng.normal()};
    const auto mats2 = preprocess_cube(cube2);
    CHECK(mats2[0].num_bins == 256);
}

TEST_CASE("extract_phase unwraps a slowly varying angle through 3pi") {
    RangeTimeMatrix m(0, 4, 300, 20.0);
    for (int c = 0; c < 300; ++c) {
        const double theta = 3.0 * std::numbers::pi * c / 299.0;
        m.at(2, c) = std::polar(1.0, theta);
    }
    const PhysioSignal phase = extract_phase(m, 2);
    for (int c = 1; c < 300; ++c) {
        CHECK(phase.samples[c] >= phase.samples[c - 1] - 1e-9);  // monotone
        CHECK(std::abs(phase.samples[c] - phase.samples[c - 1]) < std::numbers::pi);
    }
    CHECK(phase.samples[299] == doctest::Approx(3.0 * std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("extract_phase recovers a constructed displacement amplitude within 2%") {
    // bin constructed directly from Eq.-4-style phase: d = 0.5 mm sinusoid
    const double lam = 299792458.0 / 77e9;
    const double rate = 20.0;
    RangeTimeMatrix m(0, 2, 300, rate);
    const auto d = vwtest::tone(0.3, 0.5e-3, rate, 300);
    for (int c = 0; c < 300; ++c) {
        m.at(0, c) = std::polar(1.0, 4.0 * std::numbers::pi * d[c] / lam);
        m.at(1, c) = {1.0, 0.0};
    }
    const PhysioSignal phase = extract_phase(m, 0);
    const auto [lo, hi] = std::minmax_element(phase.samples.begin(), phase.samples.end());
    const double expected = 2.0 * 4.0 * std::numbers::pi * 0.5e-3 / lam;  // peak-to-peak
    CHECK(*hi - *lo == doctest::Approx(expected).epsilon(0.02));

    SUBCASE("constant bin gives constant phase") {
        const PhysioSignal flat = extract_phase(m, 1);
        for (double v : flat.samples) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("extract_phase rejects a mostly-zero bin") {
    RangeTimeMatrix m(0, 2, 100, 20.0);
    for (int c = 0; c < 100; ++c) {
        m.at(0, c) = c < 60 ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);  // 40% zero
        m.at(1, c) = {0.0, 0.0};                                       // all zero
    }
    CHECK_THROWS_AS(extract_phase(m, 0), DataError);
    CHECK_THROWS_AS(extract_phase(m, 1), DataError);
}

TEST_CASE("closed loop: extract_phase recovers injected displacement, correlation >= 0.999") {
    Scenario s = one_scatterer(0.5, /*alpha=*/1.0);
    const RadarCube cube = synthesize_cube(s);
    const auto mats = preprocess_cube(cube);
    const auto profile = mean_power_profile(mats[0]);
    const int argmax = static_cast<int>(
        std::max_element(profile.begin(), profile.end()) - profile.begin());
    const PhysioSignal phase = extract_phase(mats[0], argmax);
    const DerivedConstants dc = derive_constants(s.config);
    const PhysioSignal disp = phase_to_displacement(phase, dc.wavelength_m);

    const PhysioSignal d_r = respiration_motion(s.rr_bpm_truth, s.resp_amplitude_m,
                                                s.resp_t1_fraction, cube.num_chirps,
                                                s.config.slow_time_rate_hz, s.tau_rs_s);
    CHECK(vwtest::pearson(disp.samples, d_r.samples) >= 0.999);
}
