#pragma once

// JSON serialization for cluster models and triage reports. Field names and
// numeric formatting are stable across runs so serialized models are
// byte-comparable golden artifacts.

#include <string>
#include <string_view>

#include "cardio/kmeans.hpp"
#include "cardio/triage.hpp"

namespace cardio {

inline constexpr int kModelFormatVersion = 1;

std::string model_to_json(const ClusterModel& m);

// Throws std::runtime_error on malformed JSON, wrong format version, or a
// structurally inconsistent model.
ClusterModel model_from_json(std::string_view text);

std::string report_to_json(const TriageReport& r);

}  // namespace cardio
