#include "vitalwave/cube_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace vitalwave {

static_assert(std::endian::native == std::endian::little,
              "cube i/o assumes a little-endian host");

namespace {

template <typename T>
void put(std::vector<std::uint8_t>& out, T v) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
    out.insert(out.end(), p, p + sizeof(T));
}

template <typename T>
T get(const std::vector<std::uint8_t>& in, std::size_t& off) {
    T v;
    std::memcpy(&v, in.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

int pow2_at_least(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

RadarCube parse_cube(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < CubeFileHeader::kByteSize) {
        throw FormatError("cube file shorter than header");
    }
    if (std::memcmp(bytes.data(), CubeFileHeader::kMagic, 4) != 0) {
        throw FormatError("bad magic, not an .rcube file");
    }
    std::size_t off = 4;
    CubeFileHeader h;
    h.version = get<std::uint32_t>(bytes, off);
    if (h.version != CubeFileHeader::kVersion) {
        throw FormatError("unsupported .rcube version " + std::to_string(h.version));
    }
    h.num_channels = get<std::uint32_t>(bytes, off);
    h.num_chirps = get<std::uint32_t>(bytes, off);
    h.samples_per_chirp = get<std::uint32_t>(bytes, off);
    h.slow_time_rate_hz = get<double>(bytes, off);
    h.fast_time_rate_hz = get<double>(bytes, off);
    h.carrier_freq_hz = get<double>(bytes, off);
    h.chirp_slope_hz_per_s = get<double>(bytes, off);
    h.bandwidth_hz = get<double>(bytes, off);
    h.chirp_duration_s = get<double>(bytes, off);

    if (h.num_channels == 0 || h.num_chirps == 0 || h.samples_per_chirp == 0) {
        throw FormatError("cube dimensions must all be positive");
    }
    if (bytes.size() != CubeFileHeader::kByteSize + h.payload_bytes()) {
        throw FormatError("cube payload length disagrees with header dimensions");
    }

    RadarConfig cfg;
    cfg.carrier_freq_hz = h.carrier_freq_hz;
    cfg.bandwidth_hz = h.bandwidth_hz;
    cfg.chirp_slope_hz_per_s = h.chirp_slope_hz_per_s;
    cfg.chirp_duration_s = h.chirp_duration_s;
    // the file stores the flat channel count; tx/rx split is not needed
    // downstream, only the product
    cfg.num_tx = 1;
    cfg.num_rx = static_cast<int>(h.num_channels);
    cfg.num_range_bins = pow2_at_least(static_cast<int>(h.samples_per_chirp));
    cfg.slow_time_rate_hz = h.slow_time_rate_hz;
    cfg.fast_time_rate_hz = h.fast_time_rate_hz;

    RadarCube cube(cfg, static_cast<int>(h.num_channels), static_cast<int>(h.num_chirps),
                   static_cast<int>(h.samples_per_chirp));
    const std::size_t n = cube.data.size();
    for (std::size_t i = 0; i < n; ++i) {
        const float re = get<float>(bytes, off);
        const float im = get<float>(bytes, off);
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw DataError("cube payload contains non-finite samples");
        }
        cube.data[i] = std::complex<double>(re, im);
    }
    return cube;
}

std::vector<std::uint8_t> write_cube(const RadarCube& cube) {
    std::vector<std::uint8_t> out;
    out.reserve(CubeFileHeader::kByteSize + static_cast<std::size_t>(cube.data.size()) * 8);
    out.insert(out.end(), CubeFileHeader::kMagic, CubeFileHeader::kMagic + 4);
    put<std::uint32_t>(out, CubeFileHeader::kVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(cube.num_channels_dim));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(cube.num_chirps));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(cube.samples_per_chirp));
    put<double>(out, cube.config.slow_time_rate_hz);
    put<double>(out, cube.config.fast_time_rate_hz);
    put<double>(out, cube.config.carrier_freq_hz);
    put<double>(out, cube.config.chirp_slope_hz_per_s);
    put<double>(out, cube.config.bandwidth_hz);
    put<double>(out, cube.config.chirp_duration_s);
    for (const auto& v : cube.data) {
        put<float>(out, static_cast<float>(v.real()));
        put<float>(out, static_cast<float>(v.imag()));
    }
    return out;
}

RadarCube read_cube_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return parse_cube(bytes);
}

void write_cube_file(const RadarCube& cube, const std::string& path) {
    const std::vector<std::uint8_t> bytes = write_cube(cube);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("short write to " + path);
}

}  // namespace vitalwave
