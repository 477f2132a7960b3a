#include "vitalwave/scenario_json.hpp"

#include <limits>

namespace vitalwave {

using nlohmann::json;

namespace {

double noise_snr_from_json(const json& v) {
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "infinity") {
            return std::numeric_limits<double>::infinity();
        }
        throw ConfigError("noise_snr_db: unrecognized string value '" + s + "'");
    }
    return v.get<double>();
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

Scenario scenario_from_json(const json& j) {
    Scenario s;
    try {
        if (j.contains("config")) {
            const json& c = j.at("config");
            maybe(c, "carrier_freq_hz", s.config.carrier_freq_hz);
            maybe(c, "bandwidth_hz", s.config.bandwidth_hz);
            maybe(c, "chirp_slope_hz_per_s", s.config.chirp_slope_hz_per_s);
            maybe(c, "chirp_duration_s", s.config.chirp_duration_s);
            maybe(c, "num_tx", s.config.num_tx);
            maybe(c, "num_rx", s.config.num_rx);
            maybe(c, "num_range_bins", s.config.num_range_bins);
            maybe(c, "slow_time_rate_hz", s.config.slow_time_rate_hz);
            maybe(c, "fast_time_rate_hz", s.config.fast_time_rate_hz);
        }
        maybe(j, "rr_bpm_truth", s.rr_bpm_truth);
        maybe(j, "hr_bpm_truth", s.hr_bpm_truth);
        maybe(j, "resp_amplitude_m", s.resp_amplitude_m);
        maybe(j, "heart_amplitude_m", s.heart_amplitude_m);
        if (j.contains("noise_snr_db")) s.noise_snr_db = noise_snr_from_json(j.at("noise_snr_db"));
        maybe(j, "phase_noise_std_rad", s.phase_noise_std_rad);
        maybe(j, "duration_s", s.duration_s);
        maybe(j, "rng_seed", s.rng_seed);
        maybe(j, "resp_t1_fraction", s.resp_t1_fraction);
        maybe(j, "tau_rs_s", s.tau_rs_s);
        maybe(j, "vdp_alpha", s.vdp_alpha);

        if (j.contains("rbm")) {
            const json& r = j.at("rbm");
            if (r.is_string()) {
                s.rbm = RbmModel::make(rbm_type_from_string(r.get<std::string>()));
            } else {
                s.rbm = RbmModel::make(rbm_type_from_string(r.at("type").get<std::string>()));
                maybe(r, "amplitude_m", s.rbm.amplitude_m);
                maybe(r, "band_lo_hz", s.rbm.band_lo_hz);
                maybe(r, "band_hi_hz", s.rbm.band_hi_hz);
            }
        }

        if (j.contains("scatterers")) {
            s.scatterers.clear();
            for (const json& e : j.at("scatterers")) {
                Scatterer sc;
                sc.rest_range_m = e.at("rest_range_m").get<double>();
                sc.alpha = e.at("alpha").get<double>();
                sc.beta = e.at("beta").get<double>();
                maybe(e, "rcs_gain", sc.rcs_gain);
                if (e.contains("body_region")) {
                    sc.body_region = body_region_from_string(e.at("body_region").get<std::string>());
                }
                s.scatterers.push_back(sc);
            }
            const json& c = j.at("coupling");
            ChannelCoupling cp(c.at("num_channels").get<int>(), c.at("num_scatterers").get<int>());
            const json& gains = c.at("gain");
            const json& phases = c.at("fixed_phase_rad");
            for (std::size_t i = 0; i < cp.gain.size(); ++i) {
                const json& g = gains.at(i);
                cp.gain[i] = std::complex<double>(g.at(0).get<double>(), g.at(1).get<double>());
                cp.fixed_phase_rad[i] = phases.at(i).get<double>();
            }
            s.coupling = cp;
        } else {
            Coverage cov = Coverage::all;
            if (j.contains("coverage")) cov = coverage_from_string(j.at("coverage").get<std::string>());
            double distance = 0.5;
            maybe(j, "distance_m", distance);
            Layout layout = default_layout(cov, s.config, distance);
            s.scatterers = std::move(layout.scatterers);
            s.coupling = std::move(layout.coupling);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario json: ") + e.what());
    }
    return s;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["config"] = {{"carrier_freq_hz", s.config.carrier_freq_hz},
                   {"bandwidth_hz", s.config.bandwidth_hz},
                   {"chirp_slope_hz_per_s", s.config.chirp_slope_hz_per_s},
                   {"chirp_duration_s", s.config.chirp_duration_s},
                   {"num_tx", s.config.num_tx},
                   {"num_rx", s.config.num_rx},
                   {"num_range_bins", s.config.num_range_bins},
                   {"slow_time_rate_hz", s.config.slow_time_rate_hz},
                   {"fast_time_rate_hz", s.config.fast_time_rate_hz}};
    j["rr_bpm_truth"] = s.rr_bpm_truth;
    j["hr_bpm_truth"] = s.hr_bpm_truth;
    j["resp_amplitude_m"] = s.resp_amplitude_m;
    j["heart_amplitude_m"] = s.heart_amplitude_m;
    if (std::isfinite(s.noise_snr_db)) {
        j["noise_snr_db"] = s.noise_snr_db;
    } else {
        j["noise_snr_db"] = nullptr;
    }
    j["phase_noise_std_rad"] = s.phase_noise_std_rad;
    j["rbm"] = {{"type", to_string(s.rbm.type)},
                {"amplitude_m", s.rbm.amplitude_m},
                {"band_lo_hz", s.rbm.band_lo_hz},
                {"band_hi_hz", s.rbm.band_hi_hz}};
    j["duration_s"] = s.duration_s;
    j["rng_seed"] = s.rng_seed;
    j["resp_t1_fraction"] = s.resp_t1_fraction;
    j["tau_rs_s"] = s.tau_rs_s;
    j["vdp_alpha"] = s.vdp_alpha;

    json scat = json::array();
    for (const Scatterer& sc : s.scatterers) {
        scat.push_back({{"rest_range_m", sc.rest_range_m},
                        {"alpha", sc.alpha},
                        {"beta", sc.beta},
                        {"rcs_gain", sc.rcs_gain},
                        {"body_region", to_string(sc.body_region)}});
    }
    j["scatterers"] = scat;

    json gains = json::array();
    json phases = json::array();
    for (std::size_t i = 0; i < s.coupling.gain.size(); ++i) {
        gains.push_back({s.coupling.gain[i].real(), s.coupling.gain[i].imag()});
        phases.push_back(s.coupling.fixed_phase_rad[i]);
    }
    j["coupling"] = {{"num_channels", s.coupling.num_channels},
                     {"num_scatterers", s.coupling.num_scatterers},
                     {"gain", gains},
                     {"fixed_phase_rad", phases}};
    return j;
}

json vital_estimate_to_json(const VitalEstimate& est) {
    return {{"rr_bpm", est.rr_bpm},
            {"hr_bpm", est.hr_bpm},
            {"resp_template_params",
             {{"rr_bpm", est.resp_template_params.rr_bpm},
              {"t1_fraction", est.resp_template_params.t1_fraction},
              {"tau_rs_s", est.resp_template_params.tau_rs_s}}},
            {"heart_template_params",
             {{"hr_bpm", est.heart_template_params.hr_bpm},
              {"vdp_alpha", est.heart_template_params.vdp_alpha}}},
            {"resp_match_score", est.resp_match_score},
            {"heart_match_score", est.heart_match_score}};
}

}  // namespace vitalwave
