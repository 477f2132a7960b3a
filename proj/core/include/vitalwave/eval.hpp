#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vitalwave/channel_fusion.hpp"
#include "vitalwave/pipelines.hpp"
#include "vitalwave/simulator.hpp"
#include "vitalwave/types.hpp"

namespace vitalwave {

/// |estimate - truth| / truth * 100. Throws ConfigError for truth <= 0.
double error_rate(double estimate_bpm, double truth_bpm);

/// One transcribed row of the published per-subject result tables.
/// CSV schema: table_id,subject,scenario,rr_true,hr_true,method,rr_est,
/// hr_est,rr_err_paper,hr_err_paper
struct FixtureRow {
    std::string table_id;
    int subject = 0;
    std::string scenario;
    double rr_true = 0.0, hr_true = 0.0;
    std::string method;
    double rr_est = 0.0, hr_est = 0.0;
    double rr_err_paper = 0.0, hr_err_paper = 0.0;
};

struct FixtureReport {
    int total_cells = 0;
    int within_tolerance = 0;
    std::map<std::string, std::pair<int, int>> per_table;  // table -> (ok, total)
    std::vector<std::string> flagged;                      // human-readable deviations

    double pass_fraction() const {
        return total_cells > 0 ? static_cast<double>(within_tolerance) / total_cells : 0.0;
    }
};

std::vector<FixtureRow> load_fixture(const std::string& csv_path);

/// Recomputes every error cell and flags deviations beyond tolerance_pp
/// percentage points (default covers the tables' 2-decimal rounding).
FixtureReport verify_appendix_fixture(const std::vector<FixtureRow>& rows,
                                      double tolerance_pp = 0.01);
FixtureReport verify_appendix_fixture(const std::string& csv_path, double tolerance_pp = 0.01);

/// Per-channel band SNRs after the stage-1 chain (preprocess, bin
/// selection, in-channel fusion). Requires an 8-channel cube.
std::vector<SnrPair> snr_spatial_map(const RadarCube& cube,
                                     const PipelineOptions& options = PipelineOptions{});

struct ScenarioGrid {
    std::vector<double> distances_m = {0.3, 1.0, 2.0};
    std::vector<std::string> states = {"SI", "ST", "LS", "HT"};
    int repeats = 3;
    std::uint64_t base_seed = 1;
    double base_snr_db = 20.0;        // cube SNR at reference_distance_m
    double reference_distance_m = 0.3;

    void validate() const;
};

/// Body-motion model matching a state label (SI none, ST sway, LS leg
/// shake, HT head turn).
RbmModel rbm_for_state(const std::string& state);

struct TrialRecord {
    std::string scenario_id;  // e.g. "0.3m_SI_rep0"
    std::string method;
    double rr_true = 0.0, hr_true = 0.0;
    double rr_est = 0.0, hr_est = 0.0;
    double rr_error_pct = 0.0, hr_error_pct = 0.0;
    bool ok = false;
    std::string fail_reason;
};

struct CellStats {
    double median = 0.0;
    double q1 = 0.0, q3 = 0.0;
    double min = 0.0, max = 0.0;
    int count = 0;
};

struct SweepSummary {
    // key: method|distance|state
    std::map<std::string, CellStats> rr_cells;
    std::map<std::string, CellStats> hr_cells;
    std::map<std::string, double> rr_grand_median;  // per method
    std::map<std::string, double> hr_grand_median;
    int trials_total = 0;
    int trials_ok = 0;
};

struct SweepResult {
    std::vector<TrialRecord> records;
    SweepSummary summary;
    std::vector<std::string> methods;
    ScenarioGrid grid;
};

/// Full grid sweep: one synthesized cube per (distance, state, repeat),
/// fed identically to every method. jobs <= 0 uses the hardware thread
/// count. Per-trial failures are recorded, not fatal.
SweepResult run_sweep(const ScenarioGrid& grid, const std::vector<PipelineId>& methods,
                      int jobs = 0);

/// Writes trials.csv, summary.json, heatmap.csv, boxplot.csv. Re-emission
/// for identical records is byte-identical.
void emit_reports(const SweepResult& result, const std::string& out_dir);

CellStats quantiles(std::vector<double> values);

}  // namespace vitalwave
