#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "vitalwave/types.hpp"

namespace vitalwave {

enum class BodyRegion { apical, sternum_xiphoid_band, abdomen, arm, other };

const char* to_string(BodyRegion r) noexcept;
BodyRegion body_region_from_string(const std::string& s);

struct Scatterer {
    double rest_range_m = 0.5;
    double alpha = 0.0;     // respiration modulation coefficient
    double beta = 0.0;      // heartbeat modulation coefficient
    double rcs_gain = 1.0;
    BodyRegion body_region = BodyRegion::other;
};

/// Complex gain and fixed phase offset per (virtual channel, scatterer).
struct ChannelCoupling {
    int num_channels = 0;
    int num_scatterers = 0;
    std::vector<std::complex<double>> gain;  // [channel][scatterer]
    std::vector<double> fixed_phase_rad;     // [channel][scatterer]

    ChannelCoupling() = default;
    ChannelCoupling(int channels, int scatterers)
        : num_channels(channels),
          num_scatterers(scatterers),
          gain(static_cast<std::size_t>(channels) * scatterers),
          fixed_phase_rad(static_cast<std::size_t>(channels) * scatterers, 0.0) {}

    std::size_t idx(int ch, int k) const {
        return static_cast<std::size_t>(ch) * num_scatterers + k;
    }
};

enum class RbmType { none, leg_shake, head_turn, stand_sway };

const char* to_string(RbmType t) noexcept;
RbmType rbm_type_from_string(const std::string& s);

struct RbmModel {
    RbmType type = RbmType::none;
    double amplitude_m = 0.0;
    double band_lo_hz = 0.0;
    double band_hi_hz = 0.0;

    static RbmModel make(RbmType type);
};

enum class Coverage { left_half, right_half, all };

const char* to_string(Coverage c) noexcept;
Coverage coverage_from_string(const std::string& s);

struct Scenario {
    RadarConfig config;
    std::vector<Scatterer> scatterers;
    ChannelCoupling coupling;
    double rr_bpm_truth = 15.0;
    double hr_bpm_truth = 75.0;
    double resp_amplitude_m = 2.5e-3;
    double heart_amplitude_m = 0.6e-3;
    double noise_snr_db = 20.0;          // +inf disables additive noise
    double phase_noise_std_rad = 0.01;   // random-walk step per chirp
    double body_drift_std_m = 0.4e-3;    // residual 1/f posture drift, 0 disables
    RbmModel rbm;
    double duration_s = 15.0;
    std::uint64_t rng_seed = 1;
    double resp_t1_fraction = 0.4;
    double tau_rs_s = 1.2;
    double vdp_alpha = 1.0;

    void validate() const;  // throws ConfigError
};

/// Scatterer set plus coupling realizing the organ-radiation spatial
/// pattern: an azimuth fan of channel beams over the torso (all) or over
/// one arm plus half the torso (right_half / left_half). channel_region
/// records each channel's dominantly coupled region; apical_channel and
/// arm_channels are the metadata the spatial-map checks key on.
struct Layout {
    std::vector<Scatterer> scatterers;
    ChannelCoupling coupling;
    std::vector<BodyRegion> channel_region;
    int apical_channel = -1;
    std::vector<int> arm_channels;
};

Layout default_layout(Coverage coverage, const RadarConfig& config = RadarConfig{},
                      double torso_range_m = 0.5);

/// Scenario with the default layout at the given torso distance.
Scenario default_scenario(Coverage coverage = Coverage::all, double distance_m = 0.5,
                          std::uint64_t seed = 1);

/// Physics synthesis per the multi-scattering-point model: per channel and
/// chirp, fast-time IF samples are the coherent sum over scatterers of
/// complex exponentials with beat frequency 2*S*R_k(t)/c and phase
/// (4pi/lambda)*R_k(t) + phi_ck + dphi(t). Deterministic given rng_seed.
RadarCube synthesize_cube(const Scenario& scenario);

}  // namespace vitalwave
