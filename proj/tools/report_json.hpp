#pragma once

#include <json.hpp>

#include "pathfree/balls_bins.hpp"
#include "pathfree/extractor.hpp"
#include "pathfree/inequalities.hpp"
#include "pathfree/pipeline.hpp"
#include "pathfree/verifier.hpp"

namespace pathfree::cli {

using Json = nlohmann::ordered_json;

Json to_json(const bins::BinsStats& stats);
Json to_json(const bins::CheckResult& check);
Json to_json(const bins::CheckSummary& summary);
Json to_json(const VerificationReport& report);
Json to_json(const RoundTrace& trace);
Json to_json(const StageReport& stage);
Json to_json(const PipelineRun& run);
Json to_json(const KeyLemmaResult& result);

}  // namespace pathfree::cli
