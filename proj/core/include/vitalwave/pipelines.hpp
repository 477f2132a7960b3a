#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vitalwave/channel_fusion.hpp"
#include "vitalwave/range_fusion.hpp"
#include "vitalwave/range_select.hpp"
#include "vitalwave/templates.hpp"
#include "vitalwave/types.hpp"

namespace vitalwave {

enum class PipelineId { ref1, ref2, proposed };

const char* to_string(PipelineId id) noexcept;
PipelineId pipeline_id_from_string(const std::string& s);

struct PipelineOptions {
    BandSpec bands;
    CfarParams cfar;
    BankParams banks;
    bool literal_heart_rule = false;  // printed-form heartbeat-dominant inequality

    // prebuilt banks (immutable, safe to share across threads); when null
    // the pipeline builds its own from `banks`
    std::shared_ptr<const TemplateBank> resp_bank;
    std::shared_ptr<const TemplateBank> heart_bank;
};

/// Banks matching a record of the given duration/rate, for reuse across
/// many pipeline runs.
std::pair<std::shared_ptr<const TemplateBank>, std::shared_ptr<const TemplateBank>>
build_shared_banks(double duration_s, double rate_hz, const BankParams& params = BankParams{});

struct PipelineResult {
    VitalEstimate estimate;
    std::vector<ChannelReport> channel_reports;        // proposed only
    std::vector<FusionDiagnostics> fusion_diagnostics; // per usable channel
    std::vector<int> usable_channels;
    PhysioSignal resp_stream;
    PhysioSignal heart_stream;
};

/// One cube through the selected method. All three share the
/// preprocessing, bin-selection and template-matching code paths; they
/// differ only in the fusion stages.
PipelineResult run_pipeline(const RadarCube& cube, PipelineId id,
                            const PipelineOptions& options = PipelineOptions{});

}  // namespace vitalwave
