#include "vitalwave/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "vitalwave/preprocess.hpp"
#include "vitalwave/rng.hpp"

namespace vitalwave {

double error_rate(double estimate_bpm, double truth_bpm) {
    if (!(truth_bpm > 0.0)) throw ConfigError("invalid-truth: truth must be > 0");
    return std::abs(estimate_bpm - truth_bpm) / truth_bpm * 100.0;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace

std::vector<FixtureRow> load_fixture(const std::string& csv_path) {
    std::ifstream f(csv_path);
    if (!f) throw IoError("cannot open fixture " + csv_path);
    std::vector<FixtureRow> rows;
    std::string line;
    bool header = true;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("table_id,", 0) != 0) {
                throw FormatError("fixture: unexpected header: " + line);
            }
            continue;
        }
        const std::vector<std::string> c = split_csv_line(line);
        if (c.size() != 10) {
            throw FormatError("fixture line " + std::to_string(lineno) + ": expected 10 fields");
        }
        try {
            FixtureRow r;
            r.table_id = c[0];
            r.subject = std::stoi(c[1]);
            r.scenario = c[2];
            r.rr_true = std::stod(c[3]);
            r.hr_true = std::stod(c[4]);
            r.method = c[5];
            r.rr_est = std::stod(c[6]);
            r.hr_est = std::stod(c[7]);
            r.rr_err_paper = std::stod(c[8]);
            r.hr_err_paper = std::stod(c[9]);
            rows.push_back(r);
        } catch (const std::exception&) {
            throw FormatError("fixture line " + std::to_string(lineno) + ": parse failure");
        }
    }
    if (rows.empty()) throw FormatError("fixture: no data rows");
    return rows;
}

FixtureReport verify_appendix_fixture(const std::vector<FixtureRow>& rows, double tolerance_pp) {
    if (rows.empty()) throw FormatError("fixture: no data rows");
    FixtureReport rep;
    char buf[160];
    for (const FixtureRow& r : rows) {
        const double rr_err = error_rate(r.rr_est, r.rr_true);
        const double hr_err = error_rate(r.hr_est, r.hr_true);
        auto& tab = rep.per_table[r.table_id];
        for (const auto& [got, printed, kind] :
             {std::tuple{rr_err, r.rr_err_paper, "rr"}, std::tuple{hr_err, r.hr_err_paper, "hr"}}) {
            ++rep.total_cells;
            ++tab.second;
            if (std::abs(got - printed) <= tolerance_pp + 1e-12) {
                ++rep.within_tolerance;
                ++tab.first;
            } else {
                std::snprintf(buf, sizeof(buf), "%s subject %d %s %s: recomputed %.4f vs printed %.2f",
                              r.table_id.c_str(), r.subject, r.method.c_str(), kind, got, printed);
                rep.flagged.emplace_back(buf);
            }
        }
    }
    return rep;
}

FixtureReport verify_appendix_fixture(const std::string& csv_path, double tolerance_pp) {
    return verify_appendix_fixture(load_fixture(csv_path), tolerance_pp);
}

std::vector<SnrPair> snr_spatial_map(const RadarCube& cube, const PipelineOptions& options) {
    if (cube.num_channels_dim != 8) {
        throw DataError("snr_spatial_map expects an 8-channel cube");
    }
    const std::vector<RangeTimeMatrix> matrices = preprocess_cube(cube);
    std::vector<SnrPair> out;
    for (const RangeTimeMatrix& m : matrices) {
        const std::vector<EffectiveBin> bins =
            select_effective_bins_with_fallback(m, options.bands, options.cfar);
        if (bins.empty()) {
            out.push_back({-100.0, -100.0});
            continue;
        }
        const PhysioSignal fused = fuse_bins(m, bins);
        out.push_back(band_snr(fused, options.bands));
    }
    return out;
}

void ScenarioGrid::validate() const {
    if (distances_m.empty() || states.empty()) throw ConfigError("grid axes must be non-empty");
    if (repeats < 1) throw ConfigError("grid repeats must be >= 1");
    for (double d : distances_m) {
        if (!(d > 0.0)) throw ConfigError("grid distances must be > 0");
    }
}

RbmModel rbm_for_state(const std::string& state) {
    if (state == "SI") return RbmModel::make(RbmType::none);
    if (state == "ST") return RbmModel::make(RbmType::stand_sway);
    if (state == "LS") return RbmModel::make(RbmType::leg_shake);
    if (state == "HT") return RbmModel::make(RbmType::head_turn);
    throw ConfigError("unknown state " + state + " (expected SI, ST, LS or HT)");
}

namespace {

std::string cell_key(const std::string& method, double distance, const std::string& state) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s|%g|%s", method.c_str(), distance, state.c_str());
    return buf;
}

std::string format_distance(double d) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", d);
    return buf;
}

}  // namespace

CellStats quantiles(std::vector<double> values) {
    CellStats s;
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    s.count = static_cast<int>(values.size());
    s.min = values.front();
    s.max = values.back();
    auto q = [&](double p) {
        const double pos = p * (values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    s.q1 = q(0.25);
    s.median = q(0.5);
    s.q3 = q(0.75);
    return s;
}

SweepResult run_sweep(const ScenarioGrid& grid, const std::vector<PipelineId>& methods, int jobs) {
    grid.validate();
    if (methods.empty()) throw ConfigError("run_sweep needs at least one method");

    struct Trial {
        std::size_t d_idx, s_idx;
        int rep;
        std::uint64_t seed;
    };
    std::vector<Trial> trials;
    for (std::size_t di = 0; di < grid.distances_m.size(); ++di) {
        for (std::size_t si = 0; si < grid.states.size(); ++si) {
            for (int rep = 0; rep < grid.repeats; ++rep) {
                Rng seeder(grid.base_seed);
                const std::uint64_t seed =
                    seeder.fork(di * 1000003 + si * 1009 + static_cast<std::uint64_t>(rep) + 7)
                        .next_u64();
                trials.push_back({di, si, rep, seed});
            }
        }
    }

    // one shared bank pair; every trial uses the default duration/rate
    const Scenario probe = default_scenario();
    const double duration = probe.duration_s;
    const double rate = probe.config.slow_time_rate_hz;
    auto [resp_bank, heart_bank] = build_shared_banks(duration, rate);

    SweepResult out;
    out.grid = grid;
    for (PipelineId m : methods) out.methods.push_back(to_string(m));
    out.records.resize(trials.size() * methods.size());

    int nthreads = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    nthreads = std::min<int>(nthreads, static_cast<int>(trials.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t ti = next.fetch_add(1);
            if (ti >= trials.size()) return;
            const Trial& tr = trials[ti];
            const double distance = grid.distances_m[tr.d_idx];
            const std::string& state = grid.states[tr.s_idx];

            Scenario sc = default_scenario(Coverage::all, distance, tr.seed);
            sc.rbm = rbm_for_state(state);
            sc.noise_snr_db =
                grid.base_snr_db - 20.0 * std::log10(distance / grid.reference_distance_m);
            Rng truth_rng = Rng(tr.seed).fork(11);
            sc.rr_bpm_truth = truth_rng.uniform(10.0, 25.0);
            sc.hr_bpm_truth = truth_rng.uniform(60.0, 100.0);

            std::string scenario_id = format_distance(distance) + "m_" + state + "_rep" +
                                      std::to_string(tr.rep);

            RadarCube cube;
            std::string synth_error;
            try {
                cube = synthesize_cube(sc);
            } catch (const std::exception& e) {
                synth_error = e.what();
            }

            for (std::size_t mi = 0; mi < methods.size(); ++mi) {
                TrialRecord& rec = out.records[ti * methods.size() + mi];
                rec.scenario_id = scenario_id;
                rec.method = to_string(methods[mi]);
                rec.rr_true = sc.rr_bpm_truth;
                rec.hr_true = sc.hr_bpm_truth;
                if (!synth_error.empty()) {
                    rec.ok = false;
                    rec.fail_reason = "synthesis: " + synth_error;
                    continue;
                }
                try {
                    PipelineOptions opt;
                    opt.resp_bank = resp_bank;
                    opt.heart_bank = heart_bank;
                    const PipelineResult res = run_pipeline(cube, methods[mi], opt);
                    rec.rr_est = res.estimate.rr_bpm;
                    rec.hr_est = res.estimate.hr_bpm;
                    rec.rr_error_pct = error_rate(rec.rr_est, rec.rr_true);
                    rec.hr_error_pct = error_rate(rec.hr_est, rec.hr_true);
                    rec.ok = true;
                } catch (const std::exception& e) {
                    rec.ok = false;
                    rec.fail_reason = e.what();
                }
            }
        }
    };

    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    // summary
    SweepSummary& sum = out.summary;
    sum.trials_total = static_cast<int>(out.records.size());
    std::map<std::string, std::vector<double>> rr_by_cell, hr_by_cell;
    std::map<std::string, std::vector<double>> rr_by_method, hr_by_method;
    for (std::size_t ti = 0; ti < trials.size(); ++ti) {
        const Trial& tr = trials[ti];
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const TrialRecord& rec = out.records[ti * methods.size() + mi];
            if (!rec.ok) continue;
            ++sum.trials_ok;
            const std::string key =
                cell_key(rec.method, grid.distances_m[tr.d_idx], grid.states[tr.s_idx]);
            rr_by_cell[key].push_back(rec.rr_error_pct);
            hr_by_cell[key].push_back(rec.hr_error_pct);
            rr_by_method[rec.method].push_back(rec.rr_error_pct);
            hr_by_method[rec.method].push_back(rec.hr_error_pct);
        }
    }
    for (auto& [k, v] : rr_by_cell) sum.rr_cells[k] = quantiles(std::move(v));
    for (auto& [k, v] : hr_by_cell) sum.hr_cells[k] = quantiles(std::move(v));
    for (auto& [k, v] : rr_by_method) sum.rr_grand_median[k] = quantiles(std::move(v)).median;
    for (auto& [k, v] : hr_by_method) sum.hr_grand_median[k] = quantiles(std::move(v)).median;
    return out;
}

namespace {

std::string fmt2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void emit_reports(const SweepResult& result, const std::string& out_dir) {
    if (result.records.empty()) throw ConfigError("emit_reports: no records");
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir);

    auto open_out = [&](const std::string& name) {
        std::ofstream f(out_dir + "/" + name, std::ios::trunc);
        if (!f) throw IoError("cannot write " + out_dir + "/" + name);
        return f;
    };

    {
        std::ofstream f = open_out("trials.csv");
        f << "scenario,method,rr_true,hr_true,rr_est,hr_est,rr_error_pct,hr_error_pct\n";
        for (const TrialRecord& r : result.records) {
            f << r.scenario_id << ',' << r.method << ',' << fmt2(r.rr_true) << ','
              << fmt2(r.hr_true) << ',';
            if (r.ok) {
                f << fmt2(r.rr_est) << ',' << fmt2(r.hr_est) << ',' << fmt2(r.rr_error_pct) << ','
                  << fmt2(r.hr_error_pct) << '\n';
            } else {
                f << ",,,\n";
            }
        }
    }

    {
        std::ofstream f = open_out("heatmap.csv");
        f << "method,distance_m,state,rr_median_error_pct,hr_median_error_pct\n";
        for (const std::string& m : result.methods) {
            for (double d : result.grid.distances_m) {
                for (const std::string& s : result.grid.states) {
                    const std::string key = cell_key(m, d, s);
                    const auto rr = result.summary.rr_cells.find(key);
                    const auto hr = result.summary.hr_cells.find(key);
                    f << m << ',' << format_distance(d) << ',' << s << ','
                      << (rr != result.summary.rr_cells.end() ? fmt2(rr->second.median) : "") << ','
                      << (hr != result.summary.hr_cells.end() ? fmt2(hr->second.median) : "")
                      << '\n';
                }
            }
        }
    }

    {
        std::ofstream f = open_out("boxplot.csv");
        f << "method,distance_m,state,metric,min,q1,median,q3,max,count\n";
        for (const std::string& m : result.methods) {
            for (double d : result.grid.distances_m) {
                for (const std::string& s : result.grid.states) {
                    const std::string key = cell_key(m, d, s);
                    for (const auto& [metric, cells] :
                         {std::pair{"rr", &result.summary.rr_cells},
                          std::pair{"hr", &result.summary.hr_cells}}) {
                        const auto it = cells->find(key);
                        if (it == cells->end()) continue;
                        const CellStats& c = it->second;
                        f << m << ',' << format_distance(d) << ',' << s << ',' << metric << ','
                          << fmt2(c.min) << ',' << fmt2(c.q1) << ',' << fmt2(c.median) << ','
                          << fmt2(c.q3) << ',' << fmt2(c.max) << ',' << c.count << '\n';
                    }
                }
            }
        }
    }

    {
        nlohmann::json j;
        j["trials_total"] = result.summary.trials_total;
        j["trials_ok"] = result.summary.trials_ok;
        j["methods"] = result.methods;
        j["distances_m"] = result.grid.distances_m;
        j["states"] = result.grid.states;
        j["repeats"] = result.grid.repeats;
        j["base_seed"] = result.grid.base_seed;
        nlohmann::json grand;
        for (const std::string& m : result.methods) {
            const auto rr = result.summary.rr_grand_median.find(m);
            const auto hr = result.summary.hr_grand_median.find(m);
            grand[m] = {{"rr_median_error_pct",
                         rr != result.summary.rr_grand_median.end() ? rr->second : -1.0},
                        {"hr_median_error_pct",
                         hr != result.summary.hr_grand_median.end() ? hr->second : -1.0}};
        }
        j["grand_medians"] = grand;
        nlohmann::json failures = nlohmann::json::array();
        for (const TrialRecord& r : result.records) {
            if (!r.ok) {
                failures.push_back({{"scenario", r.scenario_id},
                                    {"method", r.method},
                                    {"reason", r.fail_reason}});
            }
        }
        j["failures"] = failures;
        std::ofstream f = open_out("summary.json");
        f << j.dump(2) << '\n';
    }
}

}  // namespace vitalwave
