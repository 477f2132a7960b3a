#include "vitalwave/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vitalwave/fft.hpp"
#include "vitalwave/motion.hpp"
#include "vitalwave/rng.hpp"

namespace vitalwave {

const char* to_string(BodyRegion r) noexcept {
    switch (r) {
        case BodyRegion::apical: return "apical";
        case BodyRegion::sternum_xiphoid_band: return "sternum_xiphoid_band";
        case BodyRegion::abdomen: return "abdomen";
        case BodyRegion::arm: return "arm";
        case BodyRegion::other: return "other";
    }
    return "other";
}

BodyRegion body_region_from_string(const std::string& s) {
    if (s == "apical") return BodyRegion::apical;
    if (s == "sternum_xiphoid_band") return BodyRegion::sternum_xiphoid_band;
    if (s == "abdomen") return BodyRegion::abdomen;
    if (s == "arm") return BodyRegion::arm;
    if (s == "other") return BodyRegion::other;
    throw ConfigError("unknown body region: " + s);
}

const char* to_string(RbmType t) noexcept {
    switch (t) {
        case RbmType::none: return "none";
        case RbmType::leg_shake: return "leg_shake";
        case RbmType::head_turn: return "head_turn";
        case RbmType::stand_sway: return "stand_sway";
    }
    return "none";
}

RbmType rbm_type_from_string(const std::string& s) {
    if (s == "none") return RbmType::none;
    if (s == "leg_shake") return RbmType::leg_shake;
    if (s == "head_turn") return RbmType::head_turn;
    if (s == "stand_sway") return RbmType::stand_sway;
    throw ConfigError("unknown rbm model: " + s);
}

RbmModel RbmModel::make(RbmType type) {
    RbmModel m;
    m.type = type;
    switch (type) {
        case RbmType::none: break;
        case RbmType::leg_shake:
            m.amplitude_m = 0.5e-3;
            m.band_lo_hz = 4.0;
            m.band_hi_hz = 6.0;
            break;
        case RbmType::head_turn:
            m.amplitude_m = 2.0e-3;
            m.band_lo_hz = 0.2;
            m.band_hi_hz = 0.5;
            break;
        case RbmType::stand_sway:
            m.amplitude_m = 1.0e-3;
            m.band_lo_hz = 0.1;
            m.band_hi_hz = 0.3;
            break;
    }
    return m;
}

const char* to_string(Coverage c) noexcept {
    switch (c) {
        case Coverage::left_half: return "left_half";
        case Coverage::right_half: return "right_half";
        case Coverage::all: return "all";
    }
    return "all";
}

Coverage coverage_from_string(const std::string& s) {
    if (s == "left_half") return Coverage::left_half;
    if (s == "right_half") return Coverage::right_half;
    if (s == "all") return Coverage::all;
    throw ConfigError("unknown coverage: " + s);
}

void Scenario::validate() const {
    config.validate();
    if (!(duration_s > 0.0)) throw ConfigError("duration_s must be > 0");
    if (resp_amplitude_m < 0.0 || heart_amplitude_m < 0.0) {
        throw ConfigError("amplitudes must be >= 0");
    }
    if (rr_bpm_truth < kRrMinBpm || rr_bpm_truth > kRrMaxBpm) {
        throw ConfigError("rr_bpm_truth outside the 6-48 bpm band");
    }
    if (hr_bpm_truth < kHrMinBpm || hr_bpm_truth > kHrMaxBpm) {
        throw ConfigError("hr_bpm_truth outside the 48-120 bpm band");
    }
    if (scatterers.empty()) throw ConfigError("scenario needs at least one scatterer");
    if (coupling.num_channels != config.num_channels() ||
        coupling.num_scatterers != static_cast<int>(scatterers.size())) {
        throw ConfigError("coupling dimensions disagree with config/scatterers");
    }
    if (phase_noise_std_rad < 0.0) throw ConfigError("phase_noise_std_rad must be >= 0");
    for (const Scatterer& s : scatterers) {
        if (!(s.rest_range_m > 0.0)) throw ConfigError("scatterer rest_range_m must be > 0");
        if (s.alpha < 0.0 || s.beta < 0.0) throw ConfigError("modulation coefficients must be >= 0");
    }
}

namespace {

// Layout geometry, azimuth in meters across the torso, +x toward the
// subject's left. Tuned so the spatial SNR pattern reproduces the
// arm/sternum/apical contrast under all three coverages.
struct ScattererSpec {
    double x;
    double range_offset;
    double alpha;
    double beta;
    double rcs;
    BodyRegion region;
};

constexpr ScattererSpec kBody[] = {
    {-0.40, 0.300, 0.008, 0.004, 0.80, BodyRegion::arm},      // right arm
    {+0.40, 0.300, 0.008, 0.004, 0.80, BodyRegion::arm},      // left arm
    // sternum-to-xiphoid band sloping away from the radar, the main
    // thoracic breathing zone with a small common pulse component
    {-0.060, 0.000, 1.00, 0.030, 1.00, BodyRegion::sternum_xiphoid_band},
    {-0.020, 0.040, 1.05, 0.035, 1.00, BodyRegion::sternum_xiphoid_band},
    {+0.020, 0.080, 0.95, 0.035, 1.00, BodyRegion::sternum_xiphoid_band},
    {+0.060, 0.120, 1.00, 0.030, 1.00, BodyRegion::sternum_xiphoid_band},
    {-0.020, 0.215, 1.25, 0.010, 1.10, BodyRegion::abdomen},
    {+0.020, 0.235, 1.20, 0.010, 1.10, BodyRegion::abdomen},
    // apical pulsation patch, left midclavicular line
    {+0.095, 0.160, 0.20, 1.250, 0.90, BodyRegion::apical},
    {+0.110, 0.175, 0.22, 1.300, 0.90, BodyRegion::apical},
    // lateral chest surfaces; the left side around the apex travels less
    // with breathing than the right
    {-0.130, 0.020, 0.90, 0.020, 0.90, BodyRegion::other},
    {-0.195, 0.055, 0.80, 0.015, 0.85, BodyRegion::other},
    {-0.260, 0.095, 0.70, 0.012, 0.80, BodyRegion::other},
    {+0.170, 0.020, 0.60, 0.012, 0.90, BodyRegion::other},
    {+0.215, 0.045, 0.55, 0.010, 0.85, BodyRegion::other},
    {+0.260, 0.065, 0.50, 0.008, 0.80, BodyRegion::other},
    // chest-surface clutter sharing the apical range band at a different
    // azimuth: contests the apical bins for channels aimed elsewhere
    {-0.055, 0.165, 0.35, 0.012, 0.90, BodyRegion::other},
    // static wall reflection behind the subject; range-separated so it
    // cannot mask the torso bins through the CFAR training window
    {-0.300, 0.500, 0.000, 0.000, 0.70, BodyRegion::other},
};

constexpr double kBeamSigma = 0.06;
constexpr double kArmBeamSigma = 0.07;

void beam_centers(Coverage cov, int n, std::vector<double>& centers, double& sigma) {
    centers.resize(n);
    double lo = 0.0, hi = 0.0;
    switch (cov) {
        case Coverage::all:
            lo = -0.15;
            hi = +0.15;
            sigma = kBeamSigma;
            break;
        case Coverage::right_half:
            lo = -0.44;
            hi = -0.05;
            sigma = kArmBeamSigma;
            break;
        case Coverage::left_half:
            lo = +0.05;
            hi = +0.44;
            sigma = kArmBeamSigma;
            break;
    }
    // ascending azimuth: the right-half fan puts the arm on channels 1-2,
    // the left-half fan mirrors it onto channels 7-8
    for (int i = 0; i < n; ++i) {
        centers[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
}

bool in_coverage(Coverage cov, double x) {
    switch (cov) {
        case Coverage::all: return true;
        case Coverage::right_half: return x <= +0.03;
        case Coverage::left_half: return x >= -0.03;
    }
    return true;
}

}  // namespace

Layout default_layout(Coverage coverage, const RadarConfig& config, double torso_range_m) {
    const int nch = config.num_channels();
    const int nk = static_cast<int>(std::size(kBody));

    Layout out;
    out.scatterers.reserve(nk);
    for (const ScattererSpec& s : kBody) {
        Scatterer sc;
        sc.rest_range_m = torso_range_m + s.range_offset;
        sc.alpha = s.alpha;
        sc.beta = s.beta;
        sc.rcs_gain = s.rcs;
        sc.body_region = s.region;
        out.scatterers.push_back(sc);
    }

    std::vector<double> centers;
    double sigma = kBeamSigma;
    beam_centers(coverage, nch, centers, sigma);

    out.coupling = ChannelCoupling(nch, nk);
    Rng phase_rng(0x9d2c5680);  // fixed antenna-geometry phases
    std::vector<double> geom_phase(static_cast<std::size_t>(nch) * nk);
    for (double& p : geom_phase) p = phase_rng.uniform(0.0, 2.0 * std::numbers::pi);

    out.channel_region.assign(nch, BodyRegion::other);
    std::vector<double> apical_power(nch, 0.0);
    for (int ch = 0; ch < nch; ++ch) {
        double region_power[5] = {0, 0, 0, 0, 0};
        for (int k = 0; k < nk; ++k) {
            const ScattererSpec& spec = kBody[k];
            double mag = 0.0;
            if (in_coverage(coverage, spec.x)) {
                const double d = spec.x - centers[ch];
                mag = spec.rcs * std::exp(-d * d / (2.0 * sigma * sigma));
                if (mag < 1e-9) mag = 0.0;
            }
            const std::size_t i = out.coupling.idx(ch, k);
            out.coupling.gain[i] = std::complex<double>(mag, 0.0);
            out.coupling.fixed_phase_rad[i] = geom_phase[i];
            region_power[static_cast<int>(spec.region)] += mag * mag;
        }
        int best = static_cast<int>(BodyRegion::other);
        double bp = 0.0;
        for (int r = 0; r < 5; ++r) {
            if (region_power[r] > bp) {
                bp = region_power[r];
                best = r;
            }
        }
        out.channel_region[ch] = bp > 0.0 ? static_cast<BodyRegion>(best) : BodyRegion::other;
        if (out.channel_region[ch] == BodyRegion::arm) out.arm_channels.push_back(ch);
        apical_power[ch] = region_power[static_cast<int>(BodyRegion::apical)];
    }
    // the apical-mapped channel: strongest apical coupling among channels
    // labeled apical, falling back to the global maximum when the beams mix
    double best_apical = 0.0;
    for (int ch = 0; ch < nch; ++ch) {
        if (out.channel_region[ch] == BodyRegion::apical && apical_power[ch] > best_apical) {
            best_apical = apical_power[ch];
            out.apical_channel = ch;
        }
    }
    if (out.apical_channel < 0) {
        for (int ch = 0; ch < nch; ++ch) {
            if (apical_power[ch] > best_apical) {
                best_apical = apical_power[ch];
                out.apical_channel = ch;
            }
        }
        if (best_apical <= 0.0) out.apical_channel = -1;
    }
    return out;
}

Scenario default_scenario(Coverage coverage, double distance_m, std::uint64_t seed) {
    Scenario s;
    s.config = RadarConfig{};
    Layout layout = default_layout(coverage, s.config, distance_m);
    s.scatterers = std::move(layout.scatterers);
    s.coupling = std::move(layout.coupling);
    s.rng_seed = seed;
    return s;
}

namespace {

// Band-limited zero-mean displacement, std scaled to amplitude/2, built in
// the frequency domain for exact band limits.
std::vector<double> band_limited_noise(int n, double rate_hz, double lo_hz, double hi_hz,
                                       double amplitude_m, Rng rng) {
    const std::size_t nfft = next_pow2(static_cast<std::size_t>(n));
    std::vector<cdouble> spec(nfft, cdouble(0.0, 0.0));
    const double df = rate_hz / static_cast<double>(nfft);
    for (std::size_t k = 1; k < nfft / 2; ++k) {
        const double f = df * static_cast<double>(k);
        if (f < lo_hz || f > hi_hz) continue;
        spec[k] = cdouble(rng.normal(), rng.normal());
        spec[nfft - k] = std::conj(spec[k]);
    }
    fft_pow2(spec, true);
    std::vector<double> out(n);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        out[i] = spec[i].real();
        mean += out[i];
    }
    mean /= n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        out[i] -= mean;
        var += out[i] * out[i];
    }
    var /= n;
    const double sd = std::sqrt(var);
    const double scale = sd > 0.0 ? (amplitude_m / 2.0) / sd : 0.0;
    for (double& v : out) v *= scale;
    return out;
}

// 1/f-amplitude drift over [0.05, 6] Hz, std scaled to std_m
std::vector<double> pink_drift(int n, double rate_hz, double std_m, Rng rng) {
    const std::size_t nfft = next_pow2(static_cast<std::size_t>(n));
    std::vector<cdouble> spec(nfft, cdouble(0.0, 0.0));
    const double df = rate_hz / static_cast<double>(nfft);
    for (std::size_t k = 1; k < nfft / 2; ++k) {
        const double f = df * static_cast<double>(k);
        if (f < 0.05 || f > 6.0) continue;
        const double shape = 1.0 / f;
        spec[k] = cdouble(rng.normal() * shape, rng.normal() * shape);
        spec[nfft - k] = std::conj(spec[k]);
    }
    fft_pow2(spec, true);
    std::vector<double> out(n);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        out[i] = spec[i].real();
        mean += out[i];
    }
    mean /= n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        out[i] -= mean;
        var += out[i] * out[i];
    }
    var /= n;
    const double sd = std::sqrt(var);
    const double scale = sd > 0.0 ? std_m / sd : 0.0;
    for (double& v : out) v *= scale;
    return out;
}

bool rbm_targets(RbmType type, BodyRegion region) {
    switch (type) {
        case RbmType::none: return false;
        case RbmType::leg_shake: return region == BodyRegion::abdomen;
        case RbmType::head_turn:
            return region == BodyRegion::apical || region == BodyRegion::arm;
        case RbmType::stand_sway: return true;
    }
    return false;
}

}  // namespace

RadarCube synthesize_cube(const Scenario& scenario) {
    scenario.validate();
    const RadarConfig& cfg = scenario.config;
    const DerivedConstants dc = derive_constants(cfg);

    for (const Scatterer& s : scenario.scatterers) {
        if (s.rest_range_m >= dc.max_unambiguous_range_m) {
            throw ConfigError("range-overflow: scatterer at " + std::to_string(s.rest_range_m) +
                              " m exceeds the unambiguous range");
        }
    }

    const int nch = cfg.num_channels();
    const int nchirps = std::max(2, static_cast<int>(std::lround(scenario.duration_s *
                                                                 cfg.slow_time_rate_hz)));
    const int nfast = static_cast<int>(std::lround(cfg.fast_time_rate_hz * cfg.chirp_duration_s));
    const int nk = static_cast<int>(scenario.scatterers.size());

    const PhysioSignal d_r =
        respiration_motion(scenario.rr_bpm_truth, scenario.resp_amplitude_m,
                           scenario.resp_t1_fraction, nchirps, cfg.slow_time_rate_hz,
                           scenario.tau_rs_s);
    const PhysioSignal d_h = heartbeat_motion(scenario.hr_bpm_truth, scenario.heart_amplitude_m,
                                              scenario.vdp_alpha, nchirps, cfg.slow_time_rate_hz);

    const Rng root(scenario.rng_seed);

    // Common-mode phase-noise random walk, one value per chirp.
    std::vector<double> phase_noise(nchirps, 0.0);
    if (scenario.phase_noise_std_rad > 0.0) {
        Rng pn = root.fork(1);
        double acc = 0.0;
        for (int m = 0; m < nchirps; ++m) {
            acc += pn.normal(0.0, scenario.phase_noise_std_rad);
            phase_noise[m] = acc;
        }
    }

    // Common-mode body-motion displacement applied to the targeted regions.
    std::vector<double> rbm(nchirps, 0.0);
    if (scenario.rbm.type != RbmType::none && scenario.rbm.amplitude_m > 0.0) {
        rbm = band_limited_noise(nchirps, cfg.slow_time_rate_hz, scenario.rbm.band_lo_hz,
                                 scenario.rbm.band_hi_hz, scenario.rbm.amplitude_m, root.fork(2));
    }

    // Residual posture drift: common-mode 1/f displacement on every moving
    // body surface, present even when sitting still.
    std::vector<double> drift(nchirps, 0.0);
    if (scenario.body_drift_std_m > 0.0) {
        drift = pink_drift(nchirps, cfg.slow_time_rate_hz, scenario.body_drift_std_m, root.fork(3));
    }

    RadarCube cube(cfg, nch, nchirps, nfast);

    const double two_pi = 2.0 * std::numbers::pi;
    const double four_pi_over_lambda = 4.0 * std::numbers::pi / dc.wavelength_m;
    const double slope = cfg.chirp_slope_hz_per_s;

    for (int ch = 0; ch < nch; ++ch) {
        for (int k = 0; k < nk; ++k) {
            const std::size_t ci = scenario.coupling.idx(ch, k);
            const cdouble g = scenario.coupling.gain[ci];
            const double amp = std::abs(g) * scenario.scatterers[k].rcs_gain;
            if (amp <= 0.0) continue;
            const double base_phase =
                std::arg(g) + scenario.coupling.fixed_phase_rad[ci];
            const Scatterer& sc = scenario.scatterers[k];
            const bool moved = rbm_targets(scenario.rbm.type, sc.body_region);
            const bool body = sc.alpha > 0.0 || sc.beta > 0.0;
            for (int m = 0; m < nchirps; ++m) {
                const double r = sc.rest_range_m + sc.alpha * d_r.samples[m] +
                                 sc.beta * d_h.samples[m] + (moved ? rbm[m] : 0.0) +
                                 (body ? drift[m] : 0.0);
                const double beat_hz = 2.0 * slope * r / kSpeedOfLight;
                const double phi0 = four_pi_over_lambda * r + base_phase + phase_noise[m];
                // incremental rotation across fast time
                const cdouble step = std::polar(1.0, two_pi * beat_hz / cfg.fast_time_rate_hz);
                cdouble v = std::polar(amp, phi0);
                std::complex<double>* row = &cube.at(ch, m, 0);
                for (int n = 0; n < nfast; ++n) {
                    row[n] += v;
                    v *= step;
                }
            }
        }
    }

    if (std::isfinite(scenario.noise_snr_db)) {
        double sig_power = 0.0;
        for (const auto& v : cube.data) sig_power += std::norm(v);
        sig_power /= static_cast<double>(cube.data.size());
        const double noise_power = sig_power / std::pow(10.0, scenario.noise_snr_db / 10.0);
        const double sd = std::sqrt(noise_power / 2.0);
        for (int ch = 0; ch < nch; ++ch) {
            Rng nrng = root.fork(1000 + static_cast<std::uint64_t>(ch));
            std::complex<double>* base = &cube.at(ch, 0, 0);
            const std::size_t cnt = static_cast<std::size_t>(nchirps) * nfast;
            for (std::size_t i = 0; i < cnt; ++i) {
                base[i] += cdouble(nrng.normal(0.0, sd), nrng.normal(0.0, sd));
            }
        }
    }
    return cube;
}

}  // namespace vitalwave
