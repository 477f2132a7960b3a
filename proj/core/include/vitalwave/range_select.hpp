#pragma once

#include <vector>

#include "vitalwave/spectrum.hpp"
#include "vitalwave/types.hpp"

namespace vitalwave {

/// Physiological band limits and the in/out-of-band energy gate.
struct BandSpec {
    double resp_lo_hz = kRespBandLoHz;
    double resp_hi_hz = kRespBandHiHz;
    double heart_lo_hz = kHeartBandLoHz;
    double heart_hi_hz = kHeartBandHiHz;
    double energy_ratio_threshold = 5.0;
    double min_freq_hz = 0.05;  // spectra below this are ignored (drift/DC)

    void validate() const;
};

enum class DominantBand { respiration, heart, none };

const char* to_string(DominantBand b) noexcept;

struct EffectiveBin {
    int bin_index = 0;
    DominantBand dominant_band = DominantBand::none;
    double energy_ratio = 0.0;
};

struct CfarParams {
    int guard = 2;
    int train = 8;
    double pfa = 1e-3;
};

/// Slow-time mean power per range bin.
std::vector<double> mean_power_profile(const RangeTimeMatrix& matrix);

/// Cell-averaging CFAR over a power profile. Threshold per cell is
/// alpha * mean(training cells), alpha = N*(pfa^(-1/N)-1) with N the number
/// of training cells actually available (edge cells fall back to one-sided
/// windows). Throws DataError when the profile is shorter than one window.
std::vector<int> cfar_candidates(const std::vector<double>& power_profile,
                                 const CfarParams& params = CfarParams{});

/// Band containing the spectral peak of a slow-time phase spectrum
/// (searched over [min_freq, rate/2)), or none.
DominantBand classify_peak(const Periodogram& phase_spectrum, const BandSpec& bands = BandSpec{});

/// E_in / E_out with E_out spanning [min_freq, rate/2) minus the band.
double energy_ratio(const Periodogram& phase_spectrum, DominantBand band,
                    const BandSpec& bands = BandSpec{});

/// Full selection flow: CFAR candidates -> phase spectrum -> peak band
/// check -> energy-ratio gate. Result ordered by descending ratio; empty is
/// a valid outcome.
std::vector<EffectiveBin> select_effective_bins(const RangeTimeMatrix& matrix,
                                                const BandSpec& bands = BandSpec{},
                                                const CfarParams& cfar = CfarParams{});

/// select_effective_bins, falling back to the single best-ratio CFAR
/// candidate with an in-band peak when nothing clears the ratio gate.
std::vector<EffectiveBin> select_effective_bins_with_fallback(const RangeTimeMatrix& matrix,
                                                              const BandSpec& bands = BandSpec{},
                                                              const CfarParams& cfar = CfarParams{});

}  // namespace vitalwave
