#include "vitalwave/preprocess.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "vitalwave/fft.hpp"
#include "vitalwave/spectrum.hpp"

namespace vitalwave {

void remove_dc(RadarCube& cube) {
    if (cube.samples_per_chirp < 2) throw DataError("need >= 2 fast-time samples");
    for (int ch = 0; ch < cube.num_channels_dim; ++ch) {
        for (int m = 0; m < cube.num_chirps; ++m) {
            std::complex<double>* row = &cube.at(ch, m, 0);
            cdouble mean(0.0, 0.0);
            for (int n = 0; n < cube.samples_per_chirp; ++n) mean += row[n];
            mean /= static_cast<double>(cube.samples_per_chirp);
            for (int n = 0; n < cube.samples_per_chirp; ++n) row[n] -= mean;
        }
    }
}

RangeTimeMatrix range_transform(const RadarCube& cube, int channel) {
    const int nbins = cube.config.num_range_bins;
    const int nfast = cube.samples_per_chirp;
    const int used = std::min(nfast, nbins);
    const std::vector<double> w = blackman_window(static_cast<std::size_t>(used));

    RangeTimeMatrix out(channel, nbins, cube.num_chirps, cube.config.slow_time_rate_hz);
    std::vector<cdouble> buf(static_cast<std::size_t>(nbins));
    for (int m = 0; m < cube.num_chirps; ++m) {
        std::fill(buf.begin(), buf.end(), cdouble(0.0, 0.0));
        const std::complex<double>* row = &cube.at(channel, m, 0);
        for (int n = 0; n < used; ++n) buf[n] = row[n] * w[n];
        fft_pow2(buf, false);
        for (int b = 0; b < nbins; ++b) out.at(b, m) = buf[b];
    }
    return out;
}

PhysioSignal extract_phase(const RangeTimeMatrix& matrix, int bin) {
    if (bin < 0 || bin >= matrix.num_bins) throw ConfigError("bin index out of range");
    const int m = matrix.num_cols;

    double row_max = 0.0;
    for (int c = 0; c < m; ++c) row_max = std::max(row_max, std::abs(matrix.at(bin, c)));
    const double thresh = row_max * 1e-12;
    int weak = 0;
    for (int c = 0; c < m; ++c) {
        if (std::abs(matrix.at(bin, c)) <= thresh) ++weak;
    }
    if (row_max == 0.0 || weak > m / 10) {
        throw DataError("weak-bin: bin " + std::to_string(bin) +
                        " has near-zero magnitude over >10% of slow time");
    }

    PhysioSignal sig;
    sig.rate_hz = matrix.slow_time_rate_hz;
    sig.unit = SignalUnit::radians;
    sig.samples.resize(static_cast<std::size_t>(m));
    double prev = std::arg(matrix.at(bin, 0));
    sig.samples[0] = prev;
    double offset = 0.0;
    for (int c = 1; c < m; ++c) {
        const double cur = std::arg(matrix.at(bin, c));
        double d = cur - prev;
        while (d > std::numbers::pi) {
            d -= 2.0 * std::numbers::pi;
            offset -= 2.0 * std::numbers::pi;
        }
        while (d < -std::numbers::pi) {
            d += 2.0 * std::numbers::pi;
            offset += 2.0 * std::numbers::pi;
        }
        sig.samples[c] = cur + offset;
        prev = cur;
    }
    return sig;
}

std::vector<RangeTimeMatrix> preprocess_cube(RadarCube cube) {
    if (cube.samples_per_chirp != cube.config.num_range_bins) {
        std::fprintf(stderr, "vitalwave: fast-time length %d != %d range bins, %s\n",
                     cube.samples_per_chirp, cube.config.num_range_bins,
                     cube.samples_per_chirp < cube.config.num_range_bins ? "zero-padding"
                                                                         : "truncating");
    }
    remove_dc(cube);
    std::vector<RangeTimeMatrix> out;
    out.reserve(static_cast<std::size_t>(cube.num_channels_dim));
    for (int ch = 0; ch < cube.num_channels_dim; ++ch) {
        out.push_back(range_transform(cube, ch));
    }
    return out;
}

}  // namespace vitalwave
