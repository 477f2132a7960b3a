#include "vitalwave/pipelines.hpp"

#include <algorithm>
#include <cmath>

#include "vitalwave/filters.hpp"
#include "vitalwave/preprocess.hpp"

namespace vitalwave {

const char* to_string(PipelineId id) noexcept {
    switch (id) {
        case PipelineId::ref1: return "ref1";
        case PipelineId::ref2: return "ref2";
        case PipelineId::proposed: return "proposed";
    }
    return "proposed";
}

PipelineId pipeline_id_from_string(const std::string& s) {
    if (s == "ref1") return PipelineId::ref1;
    if (s == "ref2") return PipelineId::ref2;
    if (s == "proposed") return PipelineId::proposed;
    throw ConfigError("unknown method: " + s + " (expected ref1, ref2 or proposed)");
}

namespace {

struct ChannelSignals {
    std::vector<int> channels;                  // usable channel ids
    std::vector<PhysioSignal> signals;          // per usable channel
    std::vector<FusionDiagnostics> diagnostics; // per usable channel
};

// Shared front end: preprocess, select bins, produce one slow-time signal
// per channel. single_bin restricts each channel to its best-ratio bin.
ChannelSignals per_channel_signals(const RadarCube& cube, const PipelineOptions& opt,
                                   bool single_bin) {
    const std::vector<RangeTimeMatrix> matrices = preprocess_cube(cube);
    ChannelSignals out;
    for (int ch = 0; ch < static_cast<int>(matrices.size()); ++ch) {
        std::vector<EffectiveBin> bins =
            select_effective_bins_with_fallback(matrices[ch], opt.bands, opt.cfar);
        if (bins.empty()) continue;
        if (single_bin) bins.resize(1);  // bins are ordered by descending ratio
        try {
            FusionDiagnostics diag;
            PhysioSignal fused = fuse_bins(matrices[ch], bins, &diag);
            out.channels.push_back(ch);
            out.signals.push_back(std::move(fused));
            out.diagnostics.push_back(std::move(diag));
        } catch (const DegenerateSignalError&) {
            continue;  // channel unusable, drop it
        }
    }
    if (out.channels.empty()) {
        throw DegenerateSignalError("range-select", "no usable channels in the cube");
    }
    return out;
}

// Correlation-based channel weighting: w_i = max(0, mean_j max-lag xcorr),
// normalized.
std::vector<double> correlation_weights(const std::vector<PhysioSignal>& signals) {
    const int n = static_cast<int>(signals.size());
    if (n == 1) return {1.0};
    const int len = static_cast<int>(signals[0].samples.size());
    const int max_lag = std::max(1, static_cast<int>(std::lround(0.5 * signals[0].rate_hz)));

    std::vector<double> norms(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (double v : signals[i].samples) acc += v * v;
        norms[i] = std::sqrt(acc);
    }

    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double best = -1e300;
            for (int lag = -max_lag; lag <= max_lag; ++lag) {
                double acc = 0.0;
                const int lo = std::max(0, lag);
                const int hi = std::min(len, len + lag);
                for (int t = lo; t < hi; ++t) acc += signals[i].samples[t] * signals[j].samples[t - lag];
                best = std::max(best, acc);
            }
            const double denom = norms[i] * norms[j];
            sum += denom > 0.0 ? best / denom : 0.0;
        }
        w[i] = std::max(0.0, sum / static_cast<double>(n - 1));
    }
    double total = 0.0;
    for (double v : w) total += v;
    if (!(total > 0.0)) {
        // uncorrelated channels: fall back to equal weighting
        std::fill(w.begin(), w.end(), 1.0 / n);
        return w;
    }
    for (double& v : w) v /= total;
    return w;
}

PhysioSignal weighted_aligned_sum(const std::vector<PhysioSignal>& signals,
                                  const std::vector<double>& weights) {
    std::size_t anchor = 0;
    for (std::size_t i = 1; i < weights.size(); ++i) {
        if (weights[i] > weights[anchor]) anchor = i;
    }
    const PhysioSignal& ref = signals[anchor];
    const int n = static_cast<int>(ref.samples.size());
    const int max_lag = std::max(1, static_cast<int>(std::lround(0.5 * ref.rate_hz)));

    PhysioSignal out;
    out.rate_hz = ref.rate_hz;
    out.unit = ref.unit;
    out.samples.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < signals.size(); ++i) {
        int lag = 0;
        if (i != anchor) {
            double best = -1e300;
            for (int l = -max_lag; l <= max_lag; ++l) {
                double acc = 0.0;
                const int lo = std::max(0, l);
                const int hi = std::min(n, n + l);
                for (int t = lo; t < hi; ++t) acc += signals[i].samples[t] * ref.samples[t - l];
                if (acc > best) {
                    best = acc;
                    lag = l;
                }
            }
        }
        for (int t = 0; t < n; ++t) {
            const int idx = t + lag;
            if (idx >= 0 && idx < n) out.samples[t] += weights[i] * signals[i].samples[idx];
        }
    }
    return out;
}

// Banks from the options when provided, else freshly built for this record.
struct Banks {
    std::shared_ptr<const TemplateBank> resp;
    std::shared_ptr<const TemplateBank> heart;
};

Banks resolve_banks(const PipelineOptions& opt, double duration_s, double rate_hz) {
    Banks b{opt.resp_bank, opt.heart_bank};
    if (!b.resp) b.resp = std::make_shared<TemplateBank>(build_resp_bank(duration_s, rate_hz, opt.banks));
    if (!b.heart) b.heart = std::make_shared<TemplateBank>(build_heart_bank(duration_s, rate_hz, opt.banks));
    return b;
}

PipelineResult reference_pipeline(const RadarCube& cube, const PipelineOptions& opt,
                                  bool single_bin) {
    ChannelSignals chans = per_channel_signals(cube, opt, single_bin);
    const std::vector<double> weights = correlation_weights(chans.signals);
    PhysioSignal fused = weighted_aligned_sum(chans.signals, weights);

    const Banks banks = resolve_banks(opt, fused.duration_s(), fused.rate_hz);

    PipelineResult out;
    out.usable_channels = chans.channels;
    out.fusion_diagnostics = std::move(chans.diagnostics);
    out.resp_stream = fused;
    out.heart_stream = fused;
    out.estimate = extract_vitals(fused, fused, *banks.resp, *banks.heart);
    return out;
}

PipelineResult proposed_pipeline(const RadarCube& cube, const PipelineOptions& opt) {
    ChannelSignals chans = per_channel_signals(cube, opt, /*single_bin=*/false);

    std::vector<ChannelReport> reports;
    for (std::size_t i = 0; i < chans.channels.size(); ++i) {
        ChannelReport r;
        r.channel_id = chans.channels[i];
        r.snr = band_snr(chans.signals[i], opt.bands);
        reports.push_back(r);
    }

    std::vector<SnrPair> snrs;
    for (const ChannelReport& r : reports) snrs.push_back(r.snr);
    const std::vector<bool> retained = screen_channels(snrs);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        reports[i].retained = retained[i];
        reports[i].cls = classify_channel(reports[i].snr, 3.0, 0.35, opt.literal_heart_rule);
    }

    FusedStreams streams;
    auto best_retained_by = [&](bool resp_band) {
        int best = -1;
        double best_snr = -1e300;
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (!reports[i].retained) continue;
            const double s = resp_band ? reports[i].snr.snr_b_db : reports[i].snr.snr_h_db;
            if (s > best_snr) {
                best_snr = s;
                best = static_cast<int>(i);
            }
        }
        return best;
    };
    try {
        streams = fuse_by_class(chans.signals, reports, opt.bands);
    } catch (const DegenerateSignalError&) {
        // a stream had no contributing class: fall back to the best
        // retained channel per band
        const int rb = best_retained_by(true);
        const int hb = best_retained_by(false);
        if (rb < 0 || hb < 0) throw;
        streams.resp = bandpass_zero_phase(chans.signals[static_cast<std::size_t>(rb)],
                                           kRespFilterLoHz, kRespFilterHiHz);
        streams.heart = bandpass_zero_phase(chans.signals[static_cast<std::size_t>(hb)],
                                            kHeartFilterLoHz, kHeartFilterHiHz);
    }

    const Banks banks = resolve_banks(opt, streams.resp.duration_s(), streams.resp.rate_hz);

    PipelineResult out;
    out.usable_channels = chans.channels;
    out.fusion_diagnostics = std::move(chans.diagnostics);
    out.channel_reports = std::move(reports);
    out.resp_stream = streams.resp;
    out.heart_stream = streams.heart;
    out.estimate = extract_vitals(streams.resp, streams.heart, *banks.resp, *banks.heart);
    return out;
}

}  // namespace

std::pair<std::shared_ptr<const TemplateBank>, std::shared_ptr<const TemplateBank>>
build_shared_banks(double duration_s, double rate_hz, const BankParams& params) {
    return {std::make_shared<TemplateBank>(build_resp_bank(duration_s, rate_hz, params)),
            std::make_shared<TemplateBank>(build_heart_bank(duration_s, rate_hz, params))};
}

PipelineResult run_pipeline(const RadarCube& cube, PipelineId id, const PipelineOptions& options) {
    cube.validate();
    switch (id) {
        case PipelineId::ref1: return reference_pipeline(cube, options, /*single_bin=*/true);
        case PipelineId::ref2: return reference_pipeline(cube, options, /*single_bin=*/false);
        case PipelineId::proposed: return proposed_pipeline(cube, options);
    }
    throw ConfigError("unknown pipeline id");
}

}  // namespace vitalwave
