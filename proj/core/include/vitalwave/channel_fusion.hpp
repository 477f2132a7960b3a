#pragma once

#include <vector>

#include "vitalwave/range_select.hpp"
#include "vitalwave/types.hpp"

namespace vitalwave {

struct SnrPair {
    double snr_b_db = 0.0;  // respiration band
    double snr_h_db = 0.0;  // heart band
};

enum class ChannelClass { respiration_dominant, heartbeat_dominant, mixed };

const char* to_string(ChannelClass c) noexcept;

struct ChannelReport {
    int channel_id = 0;
    SnrPair snr;
    bool retained = true;
    ChannelClass cls = ChannelClass::mixed;
    double weight_resp = 0.0;
    double weight_heart = 0.0;
};

/// Band SNR of a slow-time signal: per band, signal power is the
/// periodogram power inside a +-0.06 Hz window around the in-band peak;
/// noise power is the median periodogram power outside both physiological
/// bands, scaled to the same window width. Requires >= 10 s at >= 20 Hz.
SnrPair band_snr(const PhysioSignal& sig, const BandSpec& bands = BandSpec{});

/// Screening by descending-sorted SNR: breakpoint at the most negative
/// first difference, mean of the values before it, channels below 0.8*mean
/// in BOTH bands eliminated. Never returns an empty set.
std::vector<bool> screen_channels(const std::vector<SnrPair>& snrs);

/// Dominance classes from the linear-power ratio r = linB/linH:
/// r > resp_threshold -> respiration-dominant, r < heart_threshold ->
/// heartbeat-dominant, otherwise mixed. literal_rule switches the heart
/// condition to the printed form linH/linB < heart_threshold.
ChannelClass classify_channel(const SnrPair& snr, double resp_threshold = 3.0,
                              double heart_threshold = 0.35, bool literal_rule = false);

/// Class-wise SNR-weighted fusion: the respiration stream sums the
/// 0.1-0.8 Hz filtered signals of respiration-dominant and mixed retained
/// channels with normalized linear SNR_B weights, delay-aligned to the
/// heaviest channel; the heart stream mirrors this at 0.8-2 Hz.
/// Throws DegenerateSignalError("channel-fusion", ...) when a stream has
/// no contributing channel. Populates the per-channel weights in reports.
struct FusedStreams {
    PhysioSignal resp;
    PhysioSignal heart;
};
FusedStreams fuse_by_class(const std::vector<PhysioSignal>& signals,
                           std::vector<ChannelReport>& reports,
                           const BandSpec& bands = BandSpec{});

/// Filter corners used for the class-wise band split. Slightly inset from
/// the band edges so the 4th-order zero-phase filter keeps cross-band
/// leakage below 5%.
inline constexpr double kRespFilterLoHz = 0.10;
inline constexpr double kRespFilterHiHz = 0.75;
inline constexpr double kHeartFilterLoHz = 0.85;
inline constexpr double kHeartFilterHiHz = 2.00;

}  // namespace vitalwave
