#pragma once

#include <json.hpp>

#include "mixar/montecarlo.hpp"
#include "mixar/pipeline.hpp"
#include "mixar/strategy.hpp"

namespace mixar::cli {

using Json = nlohmann::ordered_json;

Json to_json_value(const ModelSpec& spec);
Json to_json_value(const EstimationResult& result);
Json to_json_value(const IdentificationReport& report);
Json to_json_value(const SeriesAnalysis& analysis);
Json to_json_value(const ReplicationRecord& record);

}  // namespace mixar::cli
