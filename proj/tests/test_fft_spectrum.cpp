#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vitalwave/fft.hpp"
#include "vitalwave/spectrum.hpp"

using namespace vitalwave;

TEST_CASE("fft matches the reference DFT") {
    Rng rng(3);
    for (std::size_t n : {8u, 64u, 300u, 37u}) {
        std::vector<cdouble> x(n);
        for (auto& v : x) v = cdouble(rng.normal(), rng.normal());
        const auto fast = fft(x, false);
        const auto slow = vwtest::naive_dft(x, false);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(fast[k] - slow[k]) < 1e-9);
        }
        // inverse round trip
        const auto back = fft(fast, true);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(back[k] - x[k]) < 1e-9);
        }
    }
}

TEST_CASE("fft satisfies Parseval for non-power-of-two lengths") {
    Rng rng(9);
    std::vector<cdouble> x(300);
    for (auto& v : x) v = cdouble(rng.normal(), rng.normal());
    double time_energy = 0.0;
    for (const auto& v : x) time_energy += std::norm(v);
    const auto spec = fft(x, false);
    double freq_energy = 0.0;
    for (const auto& v : spec) freq_energy += std::norm(v);
    CHECK(freq_energy / 300.0 == doctest::Approx(time_energy).epsilon(1e-10));
}

TEST_CASE("periodogram localizes a tone") {
    const double rate = 20.0;
    const auto x = vwtest::tone(0.25, 1.0, rate, 300);
    const Periodogram p = periodogram(x, rate);
    const std::size_t pk = peak_in_range(p, 0.05, 10.0);
    REQUIRE(pk != knpos);
    CHECK(p.freq_hz[pk] == doctest::Approx(0.25).epsilon(0.05));
    // coherent normalization: unit-amplitude tone peak reads ~1
    CHECK(p.power[pk] == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("window sidelobe levels: Blackman vs rectangular") {
    // worst-case off-grid tone, heavily padded FFT samples the DTFT finely
    const std::size_t n = 256;
    const std::size_t nfft = 16384;
    const double bin = 32.5;  // halfway between bins

    auto sidelobe_db = [&](const std::vector<double>& w) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = std::cos(2.0 * std::numbers::pi * bin * static_cast<double>(i) /
                            static_cast<double>(n)) *
                   w[i];
        }
        const auto spec = fft_real(x, nfft);
        std::vector<double> mag(nfft / 2);
        for (std::size_t k = 0; k < nfft / 2; ++k) mag[k] = std::abs(spec[k]);
        const std::size_t pk =
            static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
        // walk down into the first null, then take the highest later lobe
        std::size_t k = pk;
        while (k + 1 < mag.size() && mag[k + 1] < mag[k]) ++k;
        double best = 0.0;
        for (std::size_t j = k; j < mag.size(); ++j) best = std::max(best, mag[j]);
        return 20.0 * std::log10(best / mag[pk]);
    };

    const double rect_db = sidelobe_db(std::vector<double>(n, 1.0));
    const double blackman_db = sidelobe_db(blackman_window(n));
    CHECK(rect_db == doctest::Approx(-13.3).epsilon(0.05));
    CHECK(blackman_db <= -57.0);
}

TEST_CASE("dominant_frequency on generated tones") {
    auto sig = vwtest::make_signal(vwtest::tone(1.25, 1.0, 20.0, 300), 20.0);
    CHECK(dominant_frequency(sig, 0.05, 10.0) == doctest::Approx(1.25).epsilon(0.03));
}
