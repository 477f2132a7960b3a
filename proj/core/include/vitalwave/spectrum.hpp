#pragma once

#include <cstddef>
#include <vector>

#include "vitalwave/types.hpp"

namespace vitalwave {

std::vector<double> hann_window(std::size_t n);
std::vector<double> blackman_window(std::size_t n);

/// Single Hann-windowed periodogram of a real signal, mean removed first,
/// zero-padded to pad_factor * next_pow2(n). Only the one-sided half is kept.
/// power[k] is |X_k|^2 with coherent (tone) normalization; all consumers in
/// this library use ratios or medians of it, so the absolute scale cancels.
struct Periodogram {
    std::vector<double> freq_hz;
    std::vector<double> power;
    double df_hz = 0.0;

    std::size_t size() const noexcept { return power.size(); }
};

Periodogram periodogram(const std::vector<double>& x, double rate_hz, int pad_factor = 4);

/// Index of the largest power bin with lo_hz <= f < hi_hz; npos when the
/// range holds no bins.
std::size_t peak_in_range(const Periodogram& p, double lo_hz, double hi_hz);

/// Sum of power over lo_hz <= f < hi_hz.
double band_power(const Periodogram& p, double lo_hz, double hi_hz);

/// Frequency of the strongest spectral component of the signal within
/// [lo_hz, hi_hz); convenience wrapper used by tests and diagnostics.
double dominant_frequency(const PhysioSignal& sig, double lo_hz, double hi_hz);

inline constexpr std::size_t knpos = static_cast<std::size_t>(-1);

}  // namespace vitalwave
