#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "vitalwave/motion.hpp"
#include "vitalwave/spectrum.hpp"

using namespace vitalwave;

namespace {

// Independent integration oracle: plain RK4 at a finer step with its own
// crossing bookkeeping, kept free of the library's limit-cycle machinery.
struct OracleResult {
    double period;
    double vmax;
    double crest;
};

OracleResult vdp_oracle(double alpha) {
    const double h = 2e-4;
    double v = 2.0, w = 0.0;
    auto acc = [&](double vv, double ww) { return alpha * (1.0 - vv * vv) * ww - vv; };
    auto step = [&]() {
        const double k1v = w, k1w = acc(v, w);
        const double k2v = w + 0.5 * h * k1w, k2w = acc(v + 0.5 * h * k1v, w + 0.5 * h * k1w);
        const double k3v = w + 0.5 * h * k2w, k3w = acc(v + 0.5 * h * k2v, w + 0.5 * h * k2w);
        const double k4v = w + h * k3w, k4w = acc(v + h * k3v, w + h * k3w);
        v += h * (k1v + 2 * k2v + 2 * k3v + k4v) / 6.0;
        w += h * (k1w + 2 * k2w + 2 * k3w + k4w) / 6.0;
    };
    // long settling run
    const long settle = static_cast<long>(300.0 / h);
    for (long i = 0; i < settle; ++i) step();

    // capture crossings and waveform stats over the tail
    std::vector<double> crossings;
    std::vector<double> wave;
    double t = 0.0, prev = v;
    while (crossings.size() < 8 && t < 200.0) {
        step();
        t += h;
        if (!crossings.empty()) wave.push_back(v);
        if (prev < 0.0 && v >= 0.0) {
            crossings.push_back(t - h * v / (v - prev));
        }
        prev = v;
    }
    OracleResult r{};
    double p = 0.0;
    for (std::size_t i = crossings.size() - 5; i + 1 < crossings.size(); ++i) {
        p += crossings[i + 1] - crossings[i];
    }
    r.period = p / 4.0;
    double mean = 0.0, vmax = 0.0, rms = 0.0;
    for (double x : wave) mean += x;
    mean /= static_cast<double>(wave.size());
    for (double x : wave) {
        vmax = std::max(vmax, std::abs(x - mean));
        rms += (x - mean) * (x - mean);
    }
    rms = std::sqrt(rms / static_cast<double>(wave.size()));
    r.vmax = vmax;
    r.crest = vmax / rms;
    return r;
}

}  // namespace

TEST_CASE("vdp alpha=0 degenerates to the harmonic oscillator, period 2pi") {
    const VdpLimitCycle cyc = vdp_limit_cycle(0.0);
    CHECK(cyc.period == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-3));
    // waveform is a cosine up to phase: RMS of a unit-amplitude harmonic
    double mean = 0.0;
    for (double v : cyc.samples) mean += v;
    mean /= static_cast<double>(cyc.samples.size());
    double rms = 0.0, peak = 0.0;
    for (double v : cyc.samples) {
        rms += (v - mean) * (v - mean);
        peak = std::max(peak, std::abs(v - mean));
    }
    rms = std::sqrt(rms / static_cast<double>(cyc.samples.size()));
    CHECK(peak / rms == doctest::Approx(std::numbers::sqrt2).epsilon(0.005));
}

TEST_CASE("vdp alpha=0.5 limit cycle: amplitude 2.0 within 2% (integration oracle)") {
    const OracleResult oracle = vdp_oracle(0.5);
    CHECK(oracle.vmax == doctest::Approx(2.0).epsilon(0.02));

    const VdpLimitCycle cyc = vdp_limit_cycle(0.5);
    CHECK(cyc.peak_to_peak() / 2.0 == doctest::Approx(2.0).epsilon(0.02));
    CHECK(cyc.period == doctest::Approx(oracle.period).epsilon(1e-3));
}

TEST_CASE("vdp alpha=5 relaxation waveform: oracle-frozen period and crest factor") {
    const OracleResult o5 = vdp_oracle(5.0);
    const OracleResult o0 = vdp_oracle(0.0);
    // frozen oracle values; the relaxation waveform of V is squarish, so its
    // crest factor sits BELOW the harmonic sqrt(2) rather than above it
    CHECK(o5.period == doctest::Approx(11.612).epsilon(2e-3));
    CHECK(o0.crest == doctest::Approx(1.4142).epsilon(0.005));
    CHECK(o5.crest == doctest::Approx(1.286).epsilon(0.01));
    CHECK(o5.crest < o0.crest);

    const VdpLimitCycle cyc = vdp_limit_cycle(5.0);
    CHECK(cyc.period == doctest::Approx(o5.period).epsilon(2e-3));
    double mean = 0.0;
    for (double v : cyc.samples) mean += v;
    mean /= static_cast<double>(cyc.samples.size());
    double rms = 0.0, peak = 0.0;
    for (double v : cyc.samples) {
        rms += (v - mean) * (v - mean);
        peak = std::max(peak, std::abs(v - mean));
    }
    rms = std::sqrt(rms / static_cast<double>(cyc.samples.size()));
    CHECK(peak / rms == doctest::Approx(o5.crest).epsilon(0.01));
}

TEST_CASE("vdp settle check fires for an off-cycle start with no transient discard") {
    CHECK_THROWS_AS(vdp_limit_cycle(0.02, 1e-3, /*transient_periods=*/0, /*settle_tol=*/0.01,
                                    /*v0=*/0.2),
                    DegenerateSignalError);
}

TEST_CASE("respiration waveform: period, continuity, normalization") {
    SUBCASE("rr=15 bpm gives a 4 s period") {
        // sampled waveform repeats exactly after 60/15 s
        const double rate = 40.0;
        const auto w = resp_waveform(15.0, 0.4, 0.6, 400, rate);
        const int period_samples = static_cast<int>(4.0 * rate);
        for (int i = 0; i + period_samples < 400; ++i) {
            CHECK(w[i] == doctest::Approx(w[i + period_samples]).epsilon(1e-9));
        }
    }
    SUBCASE("branch continuity at t1 within 1e-9 relative") {
        const double period = 4.0;
        for (double t1f : {0.3, 0.4, 0.5}) {
            for (double tau : {0.3, 0.6, 1.2}) {
                const double left = resp_volume_at_phase(t1f - 1e-12, t1f, tau, period);
                const double right = resp_volume_at_phase(t1f + 1e-12, t1f, tau, period);
                CHECK(std::abs(left - right) <= 1e-9 * std::max(std::abs(left), 1.0));
            }
        }
        // period boundary
        const double end = resp_volume_at_phase(1.0 - 1e-12, 0.4, 0.6, period);
        const double start = resp_volume_at_phase(0.0, 0.4, 0.6, period);
        CHECK(std::abs(end - start) <= 1e-9);
    }
    SUBCASE("unit peak-to-peak and zero mean") {
        const auto w = resp_waveform(15.0, 0.4, 0.6, 300, 20.0);
        double lo = w[0], hi = w[0], mean = 0.0;
        for (double v : w) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            mean += v;
        }
        CHECK(hi - lo == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(mean / 300.0) < 1e-12);
    }
}

TEST_CASE("respiration_motion spectral peak at rr/60 within one FFT bin") {
    const auto sig = respiration_motion(15.0, 2.5e-3, 0.4, 300, 20.0);
    const Periodogram p = periodogram(sig.samples, 20.0);
    const std::size_t pk = peak_in_range(p, 0.05, 10.0);
    CHECK(std::abs(p.freq_hz[pk] - 0.25) <= p.df_hz * (1.0 + 1e-9));
    // peak-to-peak equals the requested amplitude
    double lo = sig.samples[0], hi = sig.samples[0];
    for (double v : sig.samples) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi - lo == doctest::Approx(2.5e-3).epsilon(1e-9));
}

TEST_CASE("heartbeat_motion spectral peak at hr/60 within one FFT bin") {
    const auto sig = heartbeat_motion(75.0, 0.6e-3, 1.0, 300, 20.0);
    const Periodogram p = periodogram(sig.samples, 20.0);
    const std::size_t pk = peak_in_range(p, 0.05, 10.0);
    CHECK(std::abs(p.freq_hz[pk] - 1.25) <= p.df_hz * (1.0 + 1e-9));
}

TEST_CASE("motion rate bands are enforced") {
    CHECK_THROWS_AS(respiration_motion(50.0, 1e-3, 0.4, 100, 20.0), ConfigError);
    CHECK_THROWS_AS(respiration_motion(5.0, 1e-3, 0.4, 100, 20.0), ConfigError);
    CHECK_THROWS_AS(heartbeat_motion(130.0, 1e-3, 1.0, 100, 20.0), ConfigError);
    CHECK_THROWS_AS(heartbeat_motion(40.0, 1e-3, 1.0, 100, 20.0), ConfigError);
}
