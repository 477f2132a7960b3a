#include "vitalwave/templates.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "vitalwave/fft.hpp"
#include "vitalwave/motion.hpp"

namespace vitalwave {

PhysioSignal resp_template(const RespTemplateParams& params, double duration_s, double rate_hz) {
    if (params.rr_bpm < kRrMinBpm || params.rr_bpm > kRrMaxBpm) {
        throw ConfigError("resp template rate outside 6-48 bpm");
    }
    if (params.t1_fraction < 0.25 || params.t1_fraction > 0.6) {
        throw ConfigError("t1_fraction outside [0.25, 0.6]");
    }
    if (params.tau_rs_s < 0.2 || params.tau_rs_s > 1.5) {
        throw ConfigError("tau_rs_s outside [0.2, 1.5]");
    }
    PhysioSignal sig;
    sig.rate_hz = rate_hz;
    sig.unit = SignalUnit::normalized;
    const std::size_t n = static_cast<std::size_t>(std::lround(duration_s * rate_hz));
    sig.samples = resp_waveform(params.rr_bpm, params.t1_fraction, params.tau_rs_s, n, rate_hz);
    return sig;
}

PhysioSignal heart_template(const HeartTemplateParams& params, double duration_s, double rate_hz) {
    if (params.hr_bpm < kHrMinBpm || params.hr_bpm > kHrMaxBpm) {
        throw ConfigError("heart template rate outside 48-120 bpm");
    }
    if (params.vdp_alpha < 0.0 || params.vdp_alpha > 5.0) {
        throw ConfigError("vdp_alpha outside [0, 5]");
    }
    const VdpLimitCycle cyc = vdp_limit_cycle(params.vdp_alpha);
    PhysioSignal sig;
    sig.rate_hz = rate_hz;
    sig.unit = SignalUnit::normalized;
    const std::size_t n = static_cast<std::size_t>(std::lround(duration_s * rate_hz));
    sig.samples = heart_waveform(cyc, params.hr_bpm, n, rate_hz);
    return sig;
}

namespace {

void normalize_entry(std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double nrm = 0.0;
    for (double& x : v) {
        x -= mean;
        nrm += x * x;
    }
    nrm = std::sqrt(nrm);
    if (nrm > 0.0) {
        for (double& x : v) x /= nrm;
    }
}

void cache_spectra(TemplateBank& bank) {
    bank.conj_spectra.resize(bank.entries.size());
    for (std::size_t i = 0; i < bank.entries.size(); ++i) {
        std::vector<cdouble> buf(bank.length, cdouble(0.0, 0.0));
        for (std::size_t t = 0; t < bank.length; ++t) {
            buf[t] = cdouble(bank.entries[i].samples[t], 0.0);
        }
        buf = fft(std::move(buf), false);
        for (auto& v : buf) v = std::conj(v);
        bank.conj_spectra[i] = std::move(buf);
    }
}

}  // namespace

TemplateBank build_resp_bank(double duration_s, double rate_hz, const BankParams& params) {
    TemplateBank bank;
    bank.rate_hz = rate_hz;
    bank.length = static_cast<std::size_t>(std::lround(duration_s * rate_hz));
    const int steps =
        static_cast<int>(std::floor((params.rr_max_bpm - params.rr_min_bpm) / params.rr_step_bpm + 1e-9));
    for (int i = 0; i <= steps; ++i) {
        const double rr = params.rr_min_bpm + params.rr_step_bpm * i;
        for (double t1 : params.t1_fractions) {
            for (double tau : params.taus_s) {
                BankEntry e;
                e.rate_bpm = rr;
                e.is_resp = true;
                e.resp_params = {rr, t1, tau};
                e.samples = resp_waveform(rr, t1, tau, bank.length, rate_hz);
                normalize_entry(e.samples);
                bank.entries.push_back(std::move(e));
            }
        }
    }
    cache_spectra(bank);
    return bank;
}

TemplateBank build_heart_bank(double duration_s, double rate_hz, const BankParams& params) {
    TemplateBank bank;
    bank.rate_hz = rate_hz;
    bank.length = static_cast<std::size_t>(std::lround(duration_s * rate_hz));

    // the limit cycle depends only on alpha; integrate once per value
    std::map<double, VdpLimitCycle> cycles;
    for (double a : params.vdp_alphas) cycles.emplace(a, vdp_limit_cycle(a));

    const int steps =
        static_cast<int>(std::floor((params.hr_max_bpm - params.hr_min_bpm) / params.hr_step_bpm + 1e-9));
    for (int i = 0; i <= steps; ++i) {
        const double hr = params.hr_min_bpm + params.hr_step_bpm * i;
        for (double a : params.vdp_alphas) {
            BankEntry e;
            e.rate_bpm = hr;
            e.is_resp = false;
            e.heart_params = {hr, a};
            e.samples = heart_waveform(cycles.at(a), hr, bank.length, rate_hz);
            normalize_entry(e.samples);
            bank.entries.push_back(std::move(e));
        }
    }
    cache_spectra(bank);
    return bank;
}

MatchResult match(const PhysioSignal& sig, const TemplateBank& bank) {
    if (bank.entries.empty()) throw ConfigError("match: empty template bank");
    if (sig.samples.size() != bank.length) {
        throw ConfigError("match: signal length disagrees with the bank");
    }

    std::vector<double> x = sig.samples;
    normalize_entry(x);
    double energy = 0.0;
    for (double v : x) energy += v * v;
    if (!(energy > 0.0)) {
        throw DegenerateSignalError("template-match", "all-zero signal");
    }

    std::vector<cdouble> xs(bank.length);
    for (std::size_t t = 0; t < bank.length; ++t) xs[t] = cdouble(x[t], 0.0);
    xs = fft(std::move(xs), false);

    MatchResult best;
    bool first = true;
    std::vector<cdouble> prod(bank.length);
    for (std::size_t i = 0; i < bank.entries.size(); ++i) {
        for (std::size_t k = 0; k < bank.length; ++k) prod[k] = xs[k] * bank.conj_spectra[i][k];
        const std::vector<cdouble> corr = fft(prod, true);
        double score = -2.0;
        for (const auto& c : corr) score = std::max(score, c.real());
        score = std::clamp(score, -1.0, 1.0);
        // strict '>' keeps the earlier (lower-rate) entry on ties
        if (first || score > best.score) {
            first = false;
            best.entry_index = i;
            best.score = score;
            best.rate_bpm = bank.entries[i].rate_bpm;
            best.resp_params = bank.entries[i].resp_params;
            best.heart_params = bank.entries[i].heart_params;
        }
    }
    return best;
}

VitalEstimate extract_vitals(const PhysioSignal& resp_fused, const PhysioSignal& heart_fused,
                             const TemplateBank& resp_bank, const TemplateBank& heart_bank) {
    const MatchResult r = match(resp_fused, resp_bank);
    const MatchResult h = match(heart_fused, heart_bank);
    VitalEstimate est;
    est.rr_bpm = r.rate_bpm;
    est.hr_bpm = h.rate_bpm;
    est.resp_template_params = r.resp_params;
    est.heart_template_params = h.heart_params;
    est.resp_match_score = r.score;
    est.heart_match_score = h.score;
    return est;
}

}  // namespace vitalwave
