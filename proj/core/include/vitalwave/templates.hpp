#pragma once

#include <vector>

#include "vitalwave/types.hpp"

namespace vitalwave {

/// Reduced two-branch breathing waveform; unit peak-to-peak, zero mean.
PhysioSignal resp_template(const RespTemplateParams& params, double duration_s, double rate_hz);

/// Steady Van der Pol limit cycle resampled to hr_bpm; unit peak-to-peak,
/// zero mean.
PhysioSignal heart_template(const HeartTemplateParams& params, double duration_s, double rate_hz);

struct BankParams {
    double rr_min_bpm = kRrMinBpm;
    double rr_max_bpm = kRrMaxBpm;
    double rr_step_bpm = 0.3;
    std::vector<double> t1_fractions = {0.3, 0.4, 0.5};
    std::vector<double> taus_s = {0.4, 0.8, 1.2};

    double hr_min_bpm = kHrMinBpm;
    double hr_max_bpm = kHrMaxBpm;
    double hr_step_bpm = 0.3;
    std::vector<double> vdp_alphas = {0.5, 1.5, 3.0};
};

/// Template bank entry: normalized (zero-mean, unit-norm) samples plus the
/// cached conjugate spectrum used for circular correlation.
struct BankEntry {
    double rate_bpm = 0.0;
    RespTemplateParams resp_params;
    HeartTemplateParams heart_params;
    bool is_resp = true;
    std::vector<double> samples;
};

struct TemplateBank {
    std::vector<BankEntry> entries;  // sorted by ascending rate
    double rate_hz = 0.0;
    std::size_t length = 0;
    std::vector<std::vector<std::complex<double>>> conj_spectra;  // per entry
};

TemplateBank build_resp_bank(double duration_s, double rate_hz, const BankParams& params = {});
TemplateBank build_heart_bank(double duration_s, double rate_hz, const BankParams& params = {});

struct MatchResult {
    std::size_t entry_index = 0;
    double rate_bpm = 0.0;
    double score = 0.0;  // max circular normalized cross-correlation
    RespTemplateParams resp_params;
    HeartTemplateParams heart_params;
};

/// Exhaustive bank search: score = max over circular lags of the
/// normalized cross-correlation (both signals mean-removed, unit-norm),
/// ties broken toward the lower rate. Throws DegenerateSignalError on an
/// all-zero signal.
MatchResult match(const PhysioSignal& sig, const TemplateBank& bank);

/// Template matching on both fused streams.
VitalEstimate extract_vitals(const PhysioSignal& resp_fused, const PhysioSignal& heart_fused,
                             const TemplateBank& resp_bank, const TemplateBank& heart_bank);

}  // namespace vitalwave
