#pragma once

#include <vector>

#include "vitalwave/types.hpp"

namespace vitalwave {

/// Direct-form-II-transposed second-order section.
struct Biquad {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;
};

/// 4th-order Butterworth band-pass (order-2 analog prototype, band
/// transform, bilinear), returned as two second-order sections with the
/// overall gain folded into the first section.
std::vector<Biquad> butter_bandpass(double lo_hz, double hi_hz, double rate_hz);

/// Single-pass cascade filter.
std::vector<double> sos_filter(const std::vector<Biquad>& sos, const std::vector<double>& x);

/// Forward-backward (zero-phase) filtering with odd-reflection edge padding.
std::vector<double> sos_filtfilt(const std::vector<Biquad>& sos, const std::vector<double>& x);

/// |H(f)|^2 of the cascade at one frequency (single pass).
double sos_power_response(const std::vector<Biquad>& sos, double freq_hz, double rate_hz);

/// Zero-phase band-pass of a slow-time signal; unit is preserved.
PhysioSignal bandpass_zero_phase(const PhysioSignal& sig, double lo_hz, double hi_hz);

}  // namespace vitalwave
