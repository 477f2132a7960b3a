#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "vitalwave/errors.hpp"

namespace vitalwave {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Physiological frequency bands, Hz. Respiration 0.1-0.8, heartbeat 0.8-2.
inline constexpr double kRespBandLoHz = 0.1;
inline constexpr double kRespBandHiHz = 0.8;
inline constexpr double kHeartBandLoHz = 0.8;
inline constexpr double kHeartBandHiHz = 2.0;

/// Rate limits implied by the bands, in beats/breaths per minute.
inline constexpr double kRrMinBpm = 6.0;
inline constexpr double kRrMaxBpm = 48.0;
inline constexpr double kHrMinBpm = 48.0;
inline constexpr double kHrMaxBpm = 120.0;

struct RadarConfig {
    double carrier_freq_hz = 77e9;
    double bandwidth_hz = 4e9;
    double chirp_slope_hz_per_s = 4e9 / 64e-6;
    double chirp_duration_s = 64e-6;
    int num_tx = 2;
    int num_rx = 4;
    int num_range_bins = 256;
    double slow_time_rate_hz = 20.0;
    double fast_time_rate_hz = 256 / 64e-6;

    int num_channels() const noexcept { return num_tx * num_rx; }

    /// Throws ConfigError if any invariant is violated.
    void validate() const;
};

/// True when slope * duration agrees with the bandwidth to within 10%.
bool slope_bandwidth_consistent(const RadarConfig& config) noexcept;

struct DerivedConstants {
    double wavelength_m = 0.0;
    double range_resolution_m = 0.0;
    double max_unambiguous_range_m = 0.0;
};

/// Pure; throws ConfigError on non-positive frequency or bandwidth.
/// An inconsistent slope/duration/bandwidth triple is tolerated here
/// (query slope_bandwidth_consistent() to warn about it).
DerivedConstants derive_constants(const RadarConfig& config);

/// Complex IF samples indexed [channel][chirp][sample], plus the acquisition
/// configuration. Channel id = tx_index * num_rx + rx_index (TDM enumeration).
struct RadarCube {
    RadarConfig config;
    int num_channels_dim = 0;
    int num_chirps = 0;
    int samples_per_chirp = 0;
    std::vector<std::complex<double>> data;

    RadarCube() = default;
    RadarCube(RadarConfig cfg, int channels, int chirps, int samples);

    std::complex<double>& at(int channel, int chirp, int sample) {
        return data[(static_cast<std::size_t>(channel) * num_chirps + chirp) * samples_per_chirp + sample];
    }
    const std::complex<double>& at(int channel, int chirp, int sample) const {
        return data[(static_cast<std::size_t>(channel) * num_chirps + chirp) * samples_per_chirp + sample];
    }

    /// Throws DataError on dimension mismatch or non-finite samples.
    void validate() const;
};

/// One channel after the range transform: rows are range bins, columns slow time.
struct RangeTimeMatrix {
    int channel_id = 0;
    int num_bins = 0;
    int num_cols = 0;
    double slow_time_rate_hz = 0.0;
    std::vector<std::complex<double>> bins;  // [bin][slow_time]

    RangeTimeMatrix() = default;
    RangeTimeMatrix(int channel, int bins_n, int cols_n, double rate);

    std::complex<double>& at(int bin, int col) {
        return bins[static_cast<std::size_t>(bin) * num_cols + col];
    }
    const std::complex<double>& at(int bin, int col) const {
        return bins[static_cast<std::size_t>(bin) * num_cols + col];
    }
};

enum class SignalUnit { radians, meters, normalized };

const char* to_string(SignalUnit unit) noexcept;

/// Real-valued slow-time waveform. The currency of every fusion stage.
struct PhysioSignal {
    std::vector<double> samples;
    double rate_hz = 0.0;
    SignalUnit unit = SignalUnit::radians;

    std::size_t size() const noexcept { return samples.size(); }
    double duration_s() const noexcept {
        return rate_hz > 0 ? static_cast<double>(samples.size()) / rate_hz : 0.0;
    }

    /// Throws DataError unless finite, length >= 2, rate > 0.
    void validate() const;
};

/// d = lambda * phi / (4*pi). Length and rate preserved.
PhysioSignal phase_to_displacement(const PhysioSignal& sig, double wavelength_m);

/// Inverse of phase_to_displacement.
PhysioSignal displacement_to_phase(const PhysioSignal& sig, double wavelength_m);

struct RespTemplateParams {
    double rr_bpm = 15.0;
    double t1_fraction = 0.4;  // inspiration fraction of the period
    double tau_rs_s = 0.6;
};

struct HeartTemplateParams {
    double hr_bpm = 75.0;
    double vdp_alpha = 1.0;
};

struct VitalEstimate {
    double rr_bpm = 0.0;
    double hr_bpm = 0.0;
    RespTemplateParams resp_template_params;
    HeartTemplateParams heart_template_params;
    double resp_match_score = 0.0;  // in [-1, 1]
    double heart_match_score = 0.0;
};

}  // namespace vitalwave
