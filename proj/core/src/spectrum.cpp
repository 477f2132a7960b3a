#include "vitalwave/spectrum.hpp"

#include <cmath>
#include <numbers>

#include "vitalwave/fft.hpp"

namespace vitalwave {

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                    static_cast<double>(n - 1));
    }
    return w;
}

std::vector<double> blackman_window(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1);
        w[i] = 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x);
    }
    return w;
}

Periodogram periodogram(const std::vector<double>& x, double rate_hz, int pad_factor) {
    Periodogram out;
    const std::size_t n = x.size();
    if (n < 2 || !(rate_hz > 0.0)) return out;
    if (pad_factor < 1) pad_factor = 1;

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    const std::vector<double> w = hann_window(n);
    double wsum = 0.0;
    for (double v : w) wsum += v;

    std::vector<double> xw(n);
    for (std::size_t i = 0; i < n; ++i) xw[i] = (x[i] - mean) * w[i];

    const std::size_t nfft = next_pow2(n) * static_cast<std::size_t>(pad_factor);
    const std::vector<cdouble> spec = fft_real(xw, nfft);

    const std::size_t half = nfft / 2 + 1;
    out.freq_hz.resize(half);
    out.power.resize(half);
    out.df_hz = rate_hz / static_cast<double>(nfft);
    const double norm = 2.0 / wsum;  // unit-amplitude tone peak reads ~1
    for (std::size_t k = 0; k < half; ++k) {
        out.freq_hz[k] = out.df_hz * static_cast<double>(k);
        const double m = std::abs(spec[k]) * norm;
        out.power[k] = m * m;
    }
    return out;
}

std::size_t peak_in_range(const Periodogram& p, double lo_hz, double hi_hz) {
    std::size_t best = knpos;
    double best_pow = -1.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p.freq_hz[k] < lo_hz || p.freq_hz[k] >= hi_hz) continue;
        if (p.power[k] > best_pow) {
            best_pow = p.power[k];
            best = k;
        }
    }
    return best;
}

double band_power(const Periodogram& p, double lo_hz, double hi_hz) {
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p.freq_hz[k] >= lo_hz && p.freq_hz[k] < hi_hz) acc += p.power[k];
    }
    return acc;
}

double dominant_frequency(const PhysioSignal& sig, double lo_hz, double hi_hz) {
    const Periodogram p = periodogram(sig.samples, sig.rate_hz);
    const std::size_t k = peak_in_range(p, lo_hz, hi_hz);
    return k == knpos ? 0.0 : p.freq_hz[k];
}

}  // namespace vitalwave
