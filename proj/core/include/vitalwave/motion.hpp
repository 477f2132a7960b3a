#pragma once

#include <cstddef>
#include <vector>

#include "vitalwave/types.hpp"

namespace vitalwave {

/// Lung-volume value at phase u in [0, 1) of one breathing cycle, range
/// [0, 1]: a saturating-exponential rise over the inspiration fraction
/// followed by an exponential decay back to zero. Both branch joints are
/// continuous by construction.
double resp_volume_at_phase(double u, double t1_fraction, double tau_s, double period_s);

/// Periodic respiration waveform sampled at rate_hz, zero mean and unit
/// peak-to-peak over the emitted samples.
std::vector<double> resp_waveform(double rr_bpm, double t1_fraction, double tau_s,
                                  std::size_t num_samples, double rate_hz);

/// One steady period of V'' - alpha*(1 - V^2) V' + V = 0 on a uniform grid.
struct VdpLimitCycle {
    double alpha = 0.0;
    double period = 0.0;               // steady period in oscillator time
    std::vector<double> samples;       // one period, starts at an upward zero crossing

    /// Periodic linear interpolation; t in oscillator time.
    double value(double t_osc) const;
    double peak_to_peak() const;
};

/// Fixed-step RK4 integration (step <= 1 ms): discards transient_periods of
/// the oscillator's own period, then extracts one cycle. Throws
/// DegenerateSignalError("heart-oscillator") when the peak-to-peak drift
/// across the last five periods exceeds settle_tol.
VdpLimitCycle vdp_limit_cycle(double alpha, double step_s = 1e-3, int transient_periods = 20,
                              double settle_tol = 0.01, double v0 = 2.0);

/// Heart waveform: the limit cycle with oscillator time rescaled so one
/// cycle lasts 60/hr_bpm seconds; zero mean, unit peak-to-peak.
std::vector<double> heart_waveform(const VdpLimitCycle& cycle, double hr_bpm,
                                   std::size_t num_samples, double rate_hz);

/// Chest displacement from breathing; peak-to-peak scaled to amplitude_m.
/// Throws ConfigError when rr_bpm lies outside [6, 48] bpm.
PhysioSignal respiration_motion(double rr_bpm, double amplitude_m, double t1_fraction,
                                std::size_t num_samples, double rate_hz, double tau_s = 0.6);

/// Chest displacement from the heartbeat; peak-to-peak scaled to amplitude_m.
/// Throws ConfigError when hr_bpm lies outside [48, 120] bpm.
PhysioSignal heartbeat_motion(double hr_bpm, double amplitude_m, double vdp_alpha,
                              std::size_t num_samples, double rate_hz);

}  // namespace vitalwave
