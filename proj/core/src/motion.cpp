#include "vitalwave/motion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vitalwave {

double resp_volume_at_phase(double u, double t1_fraction, double tau_s, double period_s) {
    u -= std::floor(u);
    const double t1 = t1_fraction * period_s;
    const double t2 = (1.0 - t1_fraction) * period_s;
    const double t = u * period_s;
    if (t < t1) {
        // inspiration: saturating rise, 0 at t=0, 1 at t=t1
        return -std::expm1(-t / tau_s) / -std::expm1(-t1 / tau_s);
    }
    // expiration: decay from 1 at t=t1 back to 0 at t=t1+t2
    const double e = std::exp(-(t - t1) / tau_s);
    const double ef = std::exp(-t2 / tau_s);
    return (e - ef) / (1.0 - ef);
}

std::vector<double> resp_waveform(double rr_bpm, double t1_fraction, double tau_s,
                                  std::size_t num_samples, double rate_hz) {
    const double period_s = 60.0 / rr_bpm;
    std::vector<double> out(num_samples);
    for (std::size_t i = 0; i < num_samples; ++i) {
        const double t = static_cast<double>(i) / rate_hz;
        out[i] = resp_volume_at_phase(t / period_s, t1_fraction, tau_s, period_s);
    }
    // zero mean, unit peak-to-peak over the emitted record
    double mean = 0.0, lo = out[0], hi = out[0];
    for (double v : out) {
        mean += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    mean /= static_cast<double>(num_samples);
    const double ptp = hi - lo;
    const double scale = ptp > 0.0 ? 1.0 / ptp : 1.0;
    for (double& v : out) v = (v - mean) * scale;
    return out;
}

double VdpLimitCycle::value(double t_osc) const {
    const std::size_t n = samples.size();
    double u = t_osc / period;
    u -= std::floor(u);
    const double pos = u * static_cast<double>(n);
    const std::size_t i0 = static_cast<std::size_t>(pos) % n;
    const std::size_t i1 = (i0 + 1) % n;
    const double frac = pos - std::floor(pos);
    return samples[i0] * (1.0 - frac) + samples[i1] * frac;
}

double VdpLimitCycle::peak_to_peak() const {
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    return *hi - *lo;
}

namespace {

struct VdpState {
    double v, w;
};

inline VdpState vdp_deriv(const VdpState& s, double alpha) {
    return {s.w, alpha * (1.0 - s.v * s.v) * s.w - s.v};
}

inline VdpState rk4_step(const VdpState& s, double h, double alpha) {
    const VdpState k1 = vdp_deriv(s, alpha);
    const VdpState k2 = vdp_deriv({s.v + 0.5 * h * k1.v, s.w + 0.5 * h * k1.w}, alpha);
    const VdpState k3 = vdp_deriv({s.v + 0.5 * h * k2.v, s.w + 0.5 * h * k2.w}, alpha);
    const VdpState k4 = vdp_deriv({s.v + h * k3.v, s.w + h * k3.w}, alpha);
    return {s.v + h * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v) / 6.0,
            s.w + h * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w) / 6.0};
}

}  // namespace

VdpLimitCycle vdp_limit_cycle(double alpha, double step_s, int transient_periods,
                              double settle_tol, double v0) {
    if (alpha < 0.0) throw ConfigError("vdp_limit_cycle: alpha must be >= 0");
    if (!(step_s > 0.0) || step_s > 1e-3) {
        throw ConfigError("vdp_limit_cycle: step must be in (0, 1e-3] s");
    }

    VdpState s{v0, 0.0};

    // First pass: skip transient_periods assuming the harmonic period, then
    // measure the actual period and skip the remainder against it.
    auto integrate_for = [&](double duration) {
        const long n = static_cast<long>(std::ceil(duration / step_s));
        for (long i = 0; i < n; ++i) s = rk4_step(s, step_s, alpha);
    };
    integrate_for(transient_periods * 2.0 * std::numbers::pi);

    // Collect upward zero crossings and per-cycle extrema over many cycles.
    const int want_cycles = std::max(8, transient_periods) + 2;
    std::vector<double> crossings;
    std::vector<double> cyc_min, cyc_max;
    double cmin = s.v, cmax = s.v;
    double t = 0.0;
    double prev_v = s.v;
    const double t_limit = (want_cycles + 4) * 2.0 * std::numbers::pi * (1.0 + alpha);
    while (static_cast<int>(crossings.size()) < want_cycles && t < t_limit) {
        const VdpState next = rk4_step(s, step_s, alpha);
        t += step_s;
        cmin = std::min(cmin, next.v);
        cmax = std::max(cmax, next.v);
        if (prev_v < 0.0 && next.v >= 0.0) {
            const double frac = -prev_v / (next.v - prev_v);
            crossings.push_back(t - step_s + frac * step_s);
            if (crossings.size() > 1) {
                cyc_min.push_back(cmin);
                cyc_max.push_back(cmax);
            }
            cmin = next.v;
            cmax = next.v;
        }
        prev_v = next.v;
        s = next;
    }
    if (crossings.size() < 7) {
        throw DegenerateSignalError("heart-oscillator", "no sustained oscillation detected");
    }

    // Settle check: peak-to-peak drift over the last five full cycles.
    const std::size_t nc = cyc_min.size();
    double ptp_lo = 1e300, ptp_hi = -1e300;
    for (std::size_t i = nc - std::min<std::size_t>(5, nc); i < nc; ++i) {
        const double p = cyc_max[i] - cyc_min[i];
        ptp_lo = std::min(ptp_lo, p);
        ptp_hi = std::max(ptp_hi, p);
    }
    if (ptp_hi - ptp_lo > settle_tol * (0.5 * (ptp_hi + ptp_lo))) {
        throw DegenerateSignalError("heart-oscillator", "transient not settled");
    }

    double period = 0.0;
    const std::size_t ni = crossings.size() - 1;
    for (std::size_t i = ni - std::min<std::size_t>(5, ni); i < ni; ++i) {
        period += crossings[i + 1] - crossings[i];
    }
    period /= static_cast<double>(std::min<std::size_t>(5, ni));

    // Re-integrate one period from the last crossing onto a uniform grid.
    VdpLimitCycle cyc;
    cyc.alpha = alpha;
    cyc.period = period;
    const std::size_t grid = 4096;
    cyc.samples.resize(grid);
    // s currently sits just past the final recorded crossing; step back to it
    // by phase: integrate from here a full period and record relative times.
    const double t_start = crossings.back();
    double phase = t - t_start;  // current offset past the anchor crossing
    std::vector<double> ts, vs;
    ts.reserve(static_cast<std::size_t>(period / step_s) + 4);
    while (phase < period + step_s) {
        ts.push_back(phase);
        vs.push_back(s.v);
        s = rk4_step(s, step_s, alpha);
        phase += step_s;
    }
    std::size_t j = 0;
    for (std::size_t g = 0; g < grid; ++g) {
        const double tg = period * static_cast<double>(g) / static_cast<double>(grid);
        while (j + 1 < ts.size() && ts[j + 1] < tg) ++j;
        const double f = (tg - ts[j]) / (ts[j + 1] - ts[j]);
        cyc.samples[g] = vs[j] * (1.0 - f) + vs[j + 1] * f;
    }
    return cyc;
}

std::vector<double> heart_waveform(const VdpLimitCycle& cycle, double hr_bpm,
                                   std::size_t num_samples, double rate_hz) {
    const double heart_period_s = 60.0 / hr_bpm;
    std::vector<double> out(num_samples);
    for (std::size_t i = 0; i < num_samples; ++i) {
        const double t = static_cast<double>(i) / rate_hz;
        out[i] = cycle.value((t / heart_period_s) * cycle.period);
    }
    double mean = 0.0, lo = out[0], hi = out[0];
    for (double v : out) {
        mean += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    mean /= static_cast<double>(num_samples);
    const double ptp = hi - lo;
    const double scale = ptp > 0.0 ? 1.0 / ptp : 1.0;
    for (double& v : out) v = (v - mean) * scale;
    return out;
}

PhysioSignal respiration_motion(double rr_bpm, double amplitude_m, double t1_fraction,
                                std::size_t num_samples, double rate_hz, double tau_s) {
    if (rr_bpm < kRrMinBpm || rr_bpm > kRrMaxBpm) {
        throw ConfigError("respiration rate outside the 6-48 bpm band");
    }
    if (!(t1_fraction > 0.0) || !(t1_fraction < 1.0)) {
        throw ConfigError("t1_fraction must lie in (0, 1)");
    }
    if (amplitude_m < 0.0) throw ConfigError("amplitude must be >= 0");
    PhysioSignal sig;
    sig.rate_hz = rate_hz;
    sig.unit = SignalUnit::meters;
    sig.samples = resp_waveform(rr_bpm, t1_fraction, tau_s, num_samples, rate_hz);
    for (double& v : sig.samples) v *= amplitude_m;
    return sig;
}

PhysioSignal heartbeat_motion(double hr_bpm, double amplitude_m, double vdp_alpha,
                              std::size_t num_samples, double rate_hz) {
    if (hr_bpm < kHrMinBpm || hr_bpm > kHrMaxBpm) {
        throw ConfigError("heart rate outside the 48-120 bpm band");
    }
    if (vdp_alpha < 0.0) throw ConfigError("vdp_alpha must be >= 0");
    if (amplitude_m < 0.0) throw ConfigError("amplitude must be >= 0");
    const VdpLimitCycle cyc = vdp_limit_cycle(vdp_alpha);
    PhysioSignal sig;
    sig.rate_hz = rate_hz;
    sig.unit = SignalUnit::meters;
    sig.samples = heart_waveform(cyc, hr_bpm, num_samples, rate_hz);
    for (double& v : sig.samples) v *= amplitude_m;
    return sig;
}

}  // namespace vitalwave
