#pragma once

#include <vector>

#include "vitalwave/range_select.hpp"
#include "vitalwave/types.hpp"

namespace vitalwave {

/// Unwrapped phase signals of the effective bins of one channel, one row
/// per bin, rows mean-removed.
struct BinSignalMatrix {
    std::vector<int> bin_indices;
    int num_rows = 0;
    int num_cols = 0;
    double rate_hz = 0.0;
    std::vector<double> y;  // [row][col]

    double* row(int r) { return y.data() + static_cast<std::size_t>(r) * num_cols; }
    const double* row(int r) const { return y.data() + static_cast<std::size_t>(r) * num_cols; }

    static BinSignalMatrix from_matrix(const RangeTimeMatrix& matrix,
                                       const std::vector<EffectiveBin>& bins);
};

struct FusionDiagnostics {
    int reference_bin_index = 0;          // index into bin_indices
    std::vector<int> delays_samples;      // signed, reference row = 0
    std::vector<double> transfer_coefficients;
    std::vector<double> weights;          // |h| normalized to sum 1
};

/// Row with the highest sum of max-lag normalized cross-correlation against
/// the other rows; ties break toward the lower row index.
int pick_reference_bin(const BinSignalMatrix& y, double max_lag_s = 0.5);

/// Integer-sample delay of each row against the reference row, argmax of
/// cross-correlation within +-max_lag_s. delay d > 0 means the row lags the
/// reference by d samples.
std::vector<int> estimate_delays(const BinSignalMatrix& y, int reference_row,
                                 double max_lag_s = 0.5);

/// Delay-and-sum estimate of the underlying motion plus per-row
/// least-squares transfer coefficients h_i = <row_i_aligned, s>/<s, s>.
/// Throws DegenerateSignalError when the aligned average vanishes.
struct CoherentEstimate {
    std::vector<double> s_hat;
    std::vector<double> h;
};
CoherentEstimate coherent_estimate(const BinSignalMatrix& y, const std::vector<int>& delays);

/// Weighted delay-and-sum with w_i = |h_i| / sum|h|; negative h flips the
/// row before weighting. Output is mean-removed.
PhysioSignal mrc_fuse(const BinSignalMatrix& y, const std::vector<int>& delays,
                      const std::vector<double>& h);

/// Full per-channel flow: build the matrix, pick reference, estimate
/// delays and coefficients, fuse.
PhysioSignal fuse_bins(const RangeTimeMatrix& matrix, const std::vector<EffectiveBin>& bins,
                       FusionDiagnostics* diagnostics = nullptr);

}  // namespace vitalwave
