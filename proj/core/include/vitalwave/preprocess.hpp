#pragma once

#include <vector>

#include "vitalwave/types.hpp"

namespace vitalwave {

/// Per-chirp fast-time mean subtraction, in place, all channels. Targets
/// TX-RX leakage sitting at zero beat frequency.
void remove_dc(RadarCube& cube);

/// Blackman window along fast time then FFT to num_range_bins rows
/// (zero-padding or truncating the fast-time record). Assumes DC removed.
RangeTimeMatrix range_transform(const RadarCube& cube, int channel);

/// Unwrapped arctangent phase of one range bin across slow time.
/// Throws DataError("weak-bin...") when the bin magnitude is ~zero over
/// more than 10% of the columns.
PhysioSignal extract_phase(const RangeTimeMatrix& matrix, int bin);

/// remove_dc + range_transform across all channels (cube taken by value;
/// the raw cube is left untouched at the call site).
std::vector<RangeTimeMatrix> preprocess_cube(RadarCube cube);

}  // namespace vitalwave
