#include "vitalwave/types.hpp"

#include <cmath>
#include <numbers>

namespace vitalwave {

namespace {

bool is_pow2_int(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

void RadarConfig::validate() const {
    if (!(carrier_freq_hz > 0.0)) throw ConfigError("invalid config: carrier_freq_hz must be > 0");
    if (!(bandwidth_hz > 0.0)) throw ConfigError("invalid config: bandwidth_hz must be > 0");
    if (num_tx * num_rx < 1) throw ConfigError("invalid config: num_tx*num_rx must be >= 1");
    if (!(chirp_duration_s > 0.0)) throw ConfigError("invalid config: chirp_duration_s must be > 0");
    if (!(chirp_slope_hz_per_s > 0.0)) throw ConfigError("invalid config: chirp_slope_hz_per_s must be > 0");
    if (!(fast_time_rate_hz > 0.0)) throw ConfigError("invalid config: fast_time_rate_hz must be > 0");
    // Nyquist for the 0.1-2 Hz physiological band, with margin.
    if (!(slow_time_rate_hz > 4.0)) {
        throw ConfigError("invalid config: slow_time_rate_hz must exceed 4 Hz");
    }
    if (!is_pow2_int(num_range_bins)) {
        throw ConfigError("invalid config: num_range_bins must be a power of two");
    }
}

bool slope_bandwidth_consistent(const RadarConfig& config) noexcept {
    const double implied = config.chirp_slope_hz_per_s * config.chirp_duration_s;
    if (!(config.bandwidth_hz > 0.0)) return false;
    return std::abs(implied - config.bandwidth_hz) <= 0.1 * config.bandwidth_hz;
}

DerivedConstants derive_constants(const RadarConfig& config) {
    config.validate();
    DerivedConstants out;
    out.wavelength_m = kSpeedOfLight / config.carrier_freq_hz;
    out.range_resolution_m = kSpeedOfLight / (2.0 * config.bandwidth_hz);
    out.max_unambiguous_range_m = config.num_range_bins * out.range_resolution_m;
    return out;
}

RadarCube::RadarCube(RadarConfig cfg, int channels, int chirps, int samples)
    : config(cfg),
      num_channels_dim(channels),
      num_chirps(chirps),
      samples_per_chirp(samples),
      data(static_cast<std::size_t>(channels) * chirps * samples) {}

void RadarCube::validate() const {
    if (num_channels_dim < 1 || num_chirps < 1 || samples_per_chirp < 1) {
        throw DataError("cube dimensions must all be >= 1");
    }
    if (num_channels_dim != config.num_channels()) {
        throw DataError("cube channel count disagrees with config num_tx*num_rx");
    }
    const std::size_t want =
        static_cast<std::size_t>(num_channels_dim) * num_chirps * samples_per_chirp;
    if (data.size() != want) throw DataError("cube payload size disagrees with dimensions");
    for (const auto& v : data) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw DataError("cube contains non-finite samples");
        }
    }
}

RangeTimeMatrix::RangeTimeMatrix(int channel, int bins_n, int cols_n, double rate)
    : channel_id(channel),
      num_bins(bins_n),
      num_cols(cols_n),
      slow_time_rate_hz(rate),
      bins(static_cast<std::size_t>(bins_n) * cols_n) {}

const char* to_string(SignalUnit unit) noexcept {
    switch (unit) {
        case SignalUnit::radians: return "radians";
        case SignalUnit::meters: return "meters";
        case SignalUnit::normalized: return "normalized";
    }
    return "unknown";
}

void PhysioSignal::validate() const {
    if (samples.size() < 2) throw DataError("signal length must be >= 2");
    if (!(rate_hz > 0.0)) throw DataError("signal rate must be > 0");
    for (double v : samples) {
        if (!std::isfinite(v)) throw DataError("signal contains non-finite samples");
    }
}

PhysioSignal phase_to_displacement(const PhysioSignal& sig, double wavelength_m) {
    if (sig.unit != SignalUnit::radians) {
        throw UnitMismatchError("phase_to_displacement expects radians input");
    }
    if (!(wavelength_m > 0.0)) throw ConfigError("wavelength must be > 0");
    PhysioSignal out = sig;
    out.unit = SignalUnit::meters;
    const double scale = wavelength_m / (4.0 * std::numbers::pi);
    for (double& v : out.samples) v *= scale;
    return out;
}

PhysioSignal displacement_to_phase(const PhysioSignal& sig, double wavelength_m) {
    if (sig.unit != SignalUnit::meters) {
        throw UnitMismatchError("displacement_to_phase expects meters input");
    }
    if (!(wavelength_m > 0.0)) throw ConfigError("wavelength must be > 0");
    PhysioSignal out = sig;
    out.unit = SignalUnit::radians;
    const double scale = 4.0 * std::numbers::pi / wavelength_m;
    for (double& v : out.samples) v *= scale;
    return out;
}

}  // namespace vitalwave
