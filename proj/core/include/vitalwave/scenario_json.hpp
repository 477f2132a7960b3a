#pragma once

#include <json.hpp>

#include "vitalwave/simulator.hpp"

namespace vitalwave {

/// Scenario <-> JSON. Field names match the Scenario members; "coverage"
/// (defaults to "all") generates the layout when "scatterers"/"coupling"
/// are absent; noise_snr_db accepts null or "inf" for the noiseless case.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

nlohmann::json vital_estimate_to_json(const VitalEstimate& est);

}  // namespace vitalwave
