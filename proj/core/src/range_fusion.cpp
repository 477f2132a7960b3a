#include "vitalwave/range_fusion.hpp"

#include <algorithm>
#include <cmath>

#include "vitalwave/preprocess.hpp"

namespace vitalwave {

BinSignalMatrix BinSignalMatrix::from_matrix(const RangeTimeMatrix& matrix,
                                             const std::vector<EffectiveBin>& bins) {
    if (bins.empty()) throw DegenerateSignalError("range-fusion", "no effective bins");
    BinSignalMatrix out;
    out.num_rows = static_cast<int>(bins.size());
    out.num_cols = matrix.num_cols;
    out.rate_hz = matrix.slow_time_rate_hz;
    out.y.resize(static_cast<std::size_t>(out.num_rows) * out.num_cols);
    for (int r = 0; r < out.num_rows; ++r) {
        out.bin_indices.push_back(bins[r].bin_index);
        const PhysioSignal phase = extract_phase(matrix, bins[r].bin_index);
        double mean = 0.0;
        for (double v : phase.samples) mean += v;
        mean /= static_cast<double>(phase.samples.size());
        double* row = out.row(r);
        for (int c = 0; c < out.num_cols; ++c) row[c] = phase.samples[c] - mean;
    }
    return out;
}

namespace {

double norm2(const double* x, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += x[i] * x[i];
    return std::sqrt(acc);
}

// max over lags in [-max_lag, max_lag] of sum_t a(t)*b(t-lag), normalized by
// the full-vector norms; also reports the argmax lag.
void max_xcorr(const double* a, const double* b, int n, int max_lag, double& best_val,
               int& best_lag) {
    const double na = norm2(a, n);
    const double nb = norm2(b, n);
    const double denom = na * nb;
    best_val = 0.0;
    best_lag = 0;
    bool first = true;
    for (int lag = -max_lag; lag <= max_lag; ++lag) {
        double acc = 0.0;
        const int lo = std::max(0, lag);
        const int hi = std::min(n, n + lag);
        for (int t = lo; t < hi; ++t) acc += a[t] * b[t - lag];
        const double v = denom > 0.0 ? acc / denom : 0.0;
        if (first || v > best_val) {
            best_val = v;
            best_lag = lag;
            first = false;
        }
    }
}

}  // namespace

int pick_reference_bin(const BinSignalMatrix& y, double max_lag_s) {
    if (y.num_rows < 1) throw DegenerateSignalError("range-fusion", "empty signal matrix");
    if (y.num_rows == 1) return 0;
    const int max_lag = std::max(1, static_cast<int>(std::lround(max_lag_s * y.rate_hz)));

    int best = 0;
    double best_sum = -1e300;
    for (int i = 0; i < y.num_rows; ++i) {
        double sum = 0.0;
        for (int j = 0; j < y.num_rows; ++j) {
            if (j == i) continue;
            double v;
            int lag;
            max_xcorr(y.row(i), y.row(j), y.num_cols, max_lag, v, lag);
            sum += v;
        }
        if (sum > best_sum) {  // strict: ties keep the lower index
            best_sum = sum;
            best = i;
        }
    }
    return best;
}

std::vector<int> estimate_delays(const BinSignalMatrix& y, int reference_row, double max_lag_s) {
    if (reference_row < 0 || reference_row >= y.num_rows) {
        throw ConfigError("reference row out of range");
    }
    const int max_lag = std::max(1, static_cast<int>(std::lround(max_lag_s * y.rate_hz)));
    std::vector<int> delays(static_cast<std::size_t>(y.num_rows), 0);
    for (int i = 0; i < y.num_rows; ++i) {
        if (i == reference_row) continue;
        double v;
        int lag;
        max_xcorr(y.row(i), y.row(reference_row), y.num_cols, max_lag, v, lag);
        delays[i] = lag;
    }
    return delays;
}

namespace {

// row value at t + delay, zero outside the record (rows are mean-removed,
// so zero is the neutral fill)
inline double aligned_at(const double* row, int n, int t, int delay) {
    const int idx = t + delay;
    return (idx >= 0 && idx < n) ? row[idx] : 0.0;
}

}  // namespace

CoherentEstimate coherent_estimate(const BinSignalMatrix& y, const std::vector<int>& delays) {
    if (static_cast<int>(delays.size()) != y.num_rows) {
        throw ConfigError("delay count disagrees with row count");
    }
    CoherentEstimate out;
    out.s_hat.assign(static_cast<std::size_t>(y.num_cols), 0.0);
    for (int r = 0; r < y.num_rows; ++r) {
        const double* row = y.row(r);
        for (int t = 0; t < y.num_cols; ++t) {
            out.s_hat[t] += aligned_at(row, y.num_cols, t, delays[r]);
        }
    }
    const double inv = 1.0 / static_cast<double>(y.num_rows);
    double ss = 0.0;
    for (double& v : out.s_hat) {
        v *= inv;
        ss += v * v;
    }
    if (!(ss > 0.0)) throw DegenerateSignalError("range-fusion", "aligned average vanished");

    out.h.resize(static_cast<std::size_t>(y.num_rows));
    for (int r = 0; r < y.num_rows; ++r) {
        const double* row = y.row(r);
        double dot = 0.0;
        for (int t = 0; t < y.num_cols; ++t) {
            dot += aligned_at(row, y.num_cols, t, delays[r]) * out.s_hat[t];
        }
        out.h[r] = dot / ss;
    }
    return out;
}

PhysioSignal mrc_fuse(const BinSignalMatrix& y, const std::vector<int>& delays,
                      const std::vector<double>& h) {
    if (static_cast<int>(delays.size()) != y.num_rows ||
        static_cast<int>(h.size()) != y.num_rows) {
        throw ConfigError("shape mismatch in mrc_fuse");
    }
    double habs = 0.0;
    for (double v : h) habs += std::abs(v);
    if (!(habs > 0.0)) throw DegenerateSignalError("range-fusion", "all transfer coefficients zero");

    PhysioSignal out;
    out.rate_hz = y.rate_hz;
    out.unit = SignalUnit::radians;
    out.samples.assign(static_cast<std::size_t>(y.num_cols), 0.0);
    for (int r = 0; r < y.num_rows; ++r) {
        const double w = std::abs(h[r]) / habs;
        const double sign = h[r] < 0.0 ? -1.0 : 1.0;
        const double* row = y.row(r);
        for (int t = 0; t < y.num_cols; ++t) {
            out.samples[t] += w * sign * aligned_at(row, y.num_cols, t, delays[r]);
        }
    }
    double mean = 0.0;
    for (double v : out.samples) mean += v;
    mean /= static_cast<double>(out.samples.size());
    for (double& v : out.samples) v -= mean;
    return out;
}

PhysioSignal fuse_bins(const RangeTimeMatrix& matrix, const std::vector<EffectiveBin>& bins,
                       FusionDiagnostics* diagnostics) {
    const BinSignalMatrix y = BinSignalMatrix::from_matrix(matrix, bins);
    const int ref = pick_reference_bin(y);
    const std::vector<int> delays = estimate_delays(y, ref);
    const CoherentEstimate est = coherent_estimate(y, delays);
    PhysioSignal fused = mrc_fuse(y, delays, est.h);
    if (diagnostics != nullptr) {
        diagnostics->reference_bin_index = ref;
        diagnostics->delays_samples = delays;
        diagnostics->transfer_coefficients = est.h;
        double habs = 0.0;
        for (double v : est.h) habs += std::abs(v);
        diagnostics->weights.clear();
        for (double v : est.h) diagnostics->weights.push_back(std::abs(v) / habs);
    }
    return fused;
}

}  // namespace vitalwave
