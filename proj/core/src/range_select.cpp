#include "vitalwave/range_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vitalwave/preprocess.hpp"

namespace vitalwave {

void BandSpec::validate() const {
    if (!(resp_lo_hz > 0.0) || !(resp_hi_hz > resp_lo_hz) || !(heart_hi_hz > heart_lo_hz)) {
        throw ConfigError("band edges must be positive and ordered");
    }
    if (resp_hi_hz > heart_lo_hz) throw ConfigError("bands must be disjoint and ordered");
    if (!(energy_ratio_threshold > 1.0)) throw ConfigError("energy ratio threshold must be > 1");
}

const char* to_string(DominantBand b) noexcept {
    switch (b) {
        case DominantBand::respiration: return "respiration";
        case DominantBand::heart: return "heart";
        case DominantBand::none: return "none";
    }
    return "none";
}

std::vector<double> mean_power_profile(const RangeTimeMatrix& matrix) {
    std::vector<double> profile(static_cast<std::size_t>(matrix.num_bins), 0.0);
    for (int b = 0; b < matrix.num_bins; ++b) {
        double acc = 0.0;
        for (int c = 0; c < matrix.num_cols; ++c) acc += std::norm(matrix.at(b, c));
        profile[b] = acc / static_cast<double>(matrix.num_cols);
    }
    return profile;
}

std::vector<int> cfar_candidates(const std::vector<double>& power_profile,
                                 const CfarParams& params) {
    if (params.train < 1) throw ConfigError("cfar: train must be >= 1");
    if (params.guard < 0) throw ConfigError("cfar: guard must be >= 0");
    if (!(params.pfa > 0.0) || !(params.pfa < 1.0)) throw ConfigError("cfar: pfa must be in (0,1)");
    const int n = static_cast<int>(power_profile.size());
    if (n < params.guard + params.train + 1) {
        throw DataError("cfar: profile shorter than one training window");
    }

    std::vector<int> hits;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        int cnt = 0;
        for (int off = params.guard + 1; off <= params.guard + params.train; ++off) {
            if (i - off >= 0) {
                acc += power_profile[i - off];
                ++cnt;
            }
            if (i + off < n) {
                acc += power_profile[i + off];
                ++cnt;
            }
        }
        if (cnt == 0) continue;
        const double mean = acc / static_cast<double>(cnt);
        const double alpha =
            static_cast<double>(cnt) * (std::pow(params.pfa, -1.0 / static_cast<double>(cnt)) - 1.0);
        if (power_profile[i] > alpha * mean) hits.push_back(i);
    }
    return hits;
}

DominantBand classify_peak(const Periodogram& spectrum, const BandSpec& bands) {
    const std::size_t k = peak_in_range(spectrum, bands.min_freq_hz,
                                        spectrum.freq_hz.empty() ? 0.0
                                                                 : spectrum.freq_hz.back() + spectrum.df_hz);
    if (k == knpos) return DominantBand::none;
    const double f = spectrum.freq_hz[k];
    if (f >= bands.resp_lo_hz && f < bands.resp_hi_hz) return DominantBand::respiration;
    if (f >= bands.heart_lo_hz && f < bands.heart_hi_hz) return DominantBand::heart;
    return DominantBand::none;
}

double energy_ratio(const Periodogram& spectrum, DominantBand band, const BandSpec& bands) {
    if (band == DominantBand::none) throw ConfigError("energy_ratio: band must be resp or heart");
    const double lo = band == DominantBand::respiration ? bands.resp_lo_hz : bands.heart_lo_hz;
    const double hi = band == DominantBand::respiration ? bands.resp_hi_hz : bands.heart_hi_hz;

    double e_in = 0.0, e_total = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double f = spectrum.freq_hz[k];
        if (f < bands.min_freq_hz) continue;
        e_total += spectrum.power[k];
        if (f >= lo && f < hi) e_in += spectrum.power[k];
    }
    const double floor = std::numeric_limits<double>::epsilon() * std::max(e_total, 1.0);
    return e_in / std::max(e_total - e_in, floor);
}

namespace {

std::vector<EffectiveBin> candidate_bins(const RangeTimeMatrix& matrix, const BandSpec& bands,
                                         const CfarParams& cfar) {
    bands.validate();
    const std::vector<int> hits = cfar_candidates(mean_power_profile(matrix), cfar);
    std::vector<EffectiveBin> out;
    for (int bin : hits) {
        PhysioSignal phase;
        try {
            phase = extract_phase(matrix, bin);
        } catch (const DataError&) {
            continue;  // degenerate bin among the candidates, skip it
        }
        const Periodogram spec = periodogram(phase.samples, phase.rate_hz);
        const DominantBand band = classify_peak(spec, bands);
        if (band == DominantBand::none) continue;
        out.push_back({bin, band, energy_ratio(spec, band, bands)});
    }
    std::sort(out.begin(), out.end(), [](const EffectiveBin& a, const EffectiveBin& b) {
        if (a.energy_ratio != b.energy_ratio) return a.energy_ratio > b.energy_ratio;
        return a.bin_index < b.bin_index;
    });
    return out;
}

}  // namespace

std::vector<EffectiveBin> select_effective_bins(const RangeTimeMatrix& matrix,
                                                const BandSpec& bands, const CfarParams& cfar) {
    std::vector<EffectiveBin> all = candidate_bins(matrix, bands, cfar);
    std::vector<EffectiveBin> out;
    for (const EffectiveBin& b : all) {
        if (b.energy_ratio > bands.energy_ratio_threshold) out.push_back(b);
    }
    return out;
}

std::vector<EffectiveBin> select_effective_bins_with_fallback(const RangeTimeMatrix& matrix,
                                                              const BandSpec& bands,
                                                              const CfarParams& cfar) {
    std::vector<EffectiveBin> all = candidate_bins(matrix, bands, cfar);
    std::vector<EffectiveBin> out;
    for (const EffectiveBin& b : all) {
        if (b.energy_ratio > bands.energy_ratio_threshold) out.push_back(b);
    }
    if (out.empty() && !all.empty()) out.push_back(all.front());
    return out;
}

}  // namespace vitalwave
