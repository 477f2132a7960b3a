#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vitalwave/types.hpp"

namespace vitalwave {

/// Binary .rcube header, little-endian, fields in this exact order.
/// Payload follows immediately: num_channels*num_chirps*samples_per_chirp
/// interleaved (I, Q) float32 pairs, channel-major, chirp-major, sample-minor.
struct CubeFileHeader {
    static constexpr char kMagic[4] = {'R', 'C', 'U', 'B'};
    static constexpr std::uint32_t kVersion = 1;
    static constexpr std::size_t kByteSize = 4 + 4 * 4 + 6 * 8;

    std::uint32_t version = kVersion;
    std::uint32_t num_channels = 0;
    std::uint32_t num_chirps = 0;
    std::uint32_t samples_per_chirp = 0;
    double slow_time_rate_hz = 0.0;
    double fast_time_rate_hz = 0.0;
    double carrier_freq_hz = 0.0;
    double chirp_slope_hz_per_s = 0.0;
    double bandwidth_hz = 0.0;
    double chirp_duration_s = 0.0;

    std::size_t payload_bytes() const noexcept {
        return static_cast<std::size_t>(num_channels) * num_chirps * samples_per_chirp * 8;
    }
};

/// Throws FormatError on bad magic/version/dims, DataError on NaN samples.
RadarCube parse_cube(const std::vector<std::uint8_t>& bytes);

/// Inverse of parse_cube; samples are stored as float32 pairs, so writing a
/// freshly parsed cube reproduces the input byte-exactly.
std::vector<std::uint8_t> write_cube(const RadarCube& cube);

RadarCube read_cube_file(const std::string& path);
void write_cube_file(const RadarCube& cube, const std::string& path);

}  // namespace vitalwave
