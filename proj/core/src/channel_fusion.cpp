#include "vitalwave/channel_fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vitalwave/filters.hpp"
#include "vitalwave/spectrum.hpp"

namespace vitalwave {

const char* to_string(ChannelClass c) noexcept {
    switch (c) {
        case ChannelClass::respiration_dominant: return "respiration_dominant";
        case ChannelClass::heartbeat_dominant: return "heartbeat_dominant";
        case ChannelClass::mixed: return "mixed";
    }
    return "mixed";
}

namespace {

constexpr double kPeakWindowHz = 0.06;

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
        m = 0.5 * (m + lo);
    }
    return m;
}

double one_band_snr(const Periodogram& p, double lo, double hi, const BandSpec& bands) {
    const std::size_t pk = peak_in_range(p, lo, hi);
    if (pk == knpos) return -100.0;
    const double f0 = p.freq_hz[pk];

    double signal = 0.0;
    std::size_t window_bins = 0;
    std::vector<double> noise_bins;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double f = p.freq_hz[k];
        if (std::abs(f - f0) <= kPeakWindowHz) {
            signal += p.power[k];
            ++window_bins;
        }
        const bool in_resp = f >= bands.resp_lo_hz && f < bands.resp_hi_hz;
        const bool in_heart = f >= bands.heart_lo_hz && f < bands.heart_hi_hz;
        if (f >= bands.min_freq_hz && !in_resp && !in_heart) noise_bins.push_back(p.power[k]);
    }
    const double noise = median(std::move(noise_bins)) * static_cast<double>(window_bins);
    if (!(noise > 0.0)) return 100.0;
    return 10.0 * std::log10(signal / noise);
}

}  // namespace

SnrPair band_snr(const PhysioSignal& sig, const BandSpec& bands) {
    if (sig.duration_s() < 10.0 - 1e-9 || sig.rate_hz < 20.0 - 1e-9) {
        throw DataError("band_snr needs >= 10 s of samples at >= 20 Hz");
    }
    const Periodogram p = periodogram(sig.samples, sig.rate_hz);
    SnrPair out;
    out.snr_b_db = one_band_snr(p, bands.resp_lo_hz, bands.resp_hi_hz, bands);
    out.snr_h_db = one_band_snr(p, bands.heart_lo_hz, bands.heart_hi_hz, bands);
    return out;
}

namespace {

// mean of the descending-sorted values before the sharpest drop
double breakpoint_mean(std::vector<double> values) {
    std::sort(values.begin(), values.end(), std::greater<double>());
    const std::size_t n = values.size();
    std::size_t brk = 1;  // n == 2 convention: mean of the first element
    if (n > 2) {
        double worst = 0.0;
        std::size_t worst_i = n - 2;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double d = values[i + 1] - values[i];
            if (d < worst) {
                worst = d;
                worst_i = i;
            }
        }
        brk = worst_i + 1;
    }
    double mu = 0.0;
    for (std::size_t i = 0; i < brk; ++i) mu += values[i];
    return mu / static_cast<double>(brk);
}

}  // namespace

std::vector<bool> screen_channels(const std::vector<SnrPair>& snrs) {
    const std::size_t n = snrs.size();
    if (n < 2) return std::vector<bool>(n, true);

    std::vector<double> b(n), h(n);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = snrs[i].snr_b_db;
        h[i] = snrs[i].snr_h_db;
    }
    const double mu_b = breakpoint_mean(b);
    const double mu_h = breakpoint_mean(h);

    std::vector<bool> retained(n, true);
    std::size_t kept = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (snrs[i].snr_b_db < 0.8 * mu_b && snrs[i].snr_h_db < 0.8 * mu_h) {
            retained[i] = false;
            --kept;
        }
    }
    if (kept == 0) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (snrs[i].snr_b_db > snrs[best].snr_b_db) best = i;
        }
        retained[best] = true;
    }
    return retained;
}

ChannelClass classify_channel(const SnrPair& snr, double resp_threshold, double heart_threshold,
                              bool literal_rule) {
    const double ratio = std::pow(10.0, (snr.snr_b_db - snr.snr_h_db) / 10.0);  // linB/linH
    if (ratio > resp_threshold) return ChannelClass::respiration_dominant;
    if (literal_rule) {
        if (1.0 / ratio < heart_threshold) return ChannelClass::heartbeat_dominant;
    } else {
        if (ratio < heart_threshold) return ChannelClass::heartbeat_dominant;
    }
    return ChannelClass::mixed;
}

namespace {

struct Contributor {
    int index;       // into signals/reports
    double weight;   // linear SNR, pre-normalization
};

PhysioSignal fuse_stream(const std::vector<PhysioSignal>& signals,
                         std::vector<Contributor> contributors, double lo_hz, double hi_hz,
                         const char* stream_name) {
    if (contributors.empty()) {
        throw DegenerateSignalError("channel-fusion",
                                    std::string(stream_name) + " stream has no contributing channels");
    }
    double total = 0.0;
    for (const Contributor& c : contributors) total += c.weight;
    if (!(total > 0.0)) {
        throw DegenerateSignalError("channel-fusion",
                                    std::string(stream_name) + " stream weights vanished");
    }
    for (Contributor& c : contributors) c.weight /= total;

    // heaviest channel anchors the alignment
    std::size_t anchor = 0;
    for (std::size_t i = 1; i < contributors.size(); ++i) {
        if (contributors[i].weight > contributors[anchor].weight) anchor = i;
    }

    std::vector<PhysioSignal> filtered(contributors.size());
    for (std::size_t i = 0; i < contributors.size(); ++i) {
        filtered[i] = bandpass_zero_phase(signals[contributors[i].index], lo_hz, hi_hz);
    }

    const PhysioSignal& ref = filtered[anchor];
    const int n = static_cast<int>(ref.samples.size());
    const int max_lag = std::max(1, static_cast<int>(std::lround(0.5 * ref.rate_hz)));

    PhysioSignal out;
    out.rate_hz = ref.rate_hz;
    out.unit = ref.unit;
    out.samples.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < contributors.size(); ++i) {
        int lag = 0;
        if (i != anchor) {
            double best = -1e300;
            for (int l = -max_lag; l <= max_lag; ++l) {
                double acc = 0.0;
                const int lo = std::max(0, l);
                const int hi = std::min(n, n + l);
                for (int t = lo; t < hi; ++t) acc += filtered[i].samples[t] * ref.samples[t - l];
                if (acc > best) {
                    best = acc;
                    lag = l;
                }
            }
        }
        const double w = contributors[i].weight;
        for (int t = 0; t < n; ++t) {
            const int idx = t + lag;
            if (idx >= 0 && idx < n) out.samples[t] += w * filtered[i].samples[idx];
        }
    }
    return out;
}

}  // namespace

FusedStreams fuse_by_class(const std::vector<PhysioSignal>& signals,
                           std::vector<ChannelReport>& reports, const BandSpec& bands) {
    (void)bands;
    if (signals.size() != reports.size()) {
        throw ConfigError("fuse_by_class: signals and reports disagree in length");
    }

    std::vector<Contributor> resp_side, heart_side;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        ChannelReport& r = reports[i];
        r.weight_resp = 0.0;
        r.weight_heart = 0.0;
        if (!r.retained) continue;
        const double lin_b = std::pow(10.0, r.snr.snr_b_db / 10.0);
        const double lin_h = std::pow(10.0, r.snr.snr_h_db / 10.0);
        if (r.cls != ChannelClass::heartbeat_dominant) {
            resp_side.push_back({static_cast<int>(i), lin_b});
        }
        if (r.cls != ChannelClass::respiration_dominant) {
            heart_side.push_back({static_cast<int>(i), lin_h});
        }
    }

    FusedStreams out;
    out.resp = fuse_stream(signals, resp_side, kRespFilterLoHz, kRespFilterHiHz, "respiration");
    out.heart = fuse_stream(signals, heart_side, kHeartFilterLoHz, kHeartFilterHiHz, "heart");

    double resp_total = 0.0, heart_total = 0.0;
    for (const Contributor& c : resp_side) resp_total += c.weight;
    for (const Contributor& c : heart_side) heart_total += c.weight;
    for (const Contributor& c : resp_side) {
        reports[static_cast<std::size_t>(c.index)].weight_resp = c.weight / resp_total;
    }
    for (const Contributor& c : heart_side) {
        reports[static_cast<std::size_t>(c.index)].weight_heart = c.weight / heart_total;
    }
    return out;
}

}  // namespace vitalwave
