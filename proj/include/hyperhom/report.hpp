#pragma once

#include <string>

#include <json.hpp>

#include "hyperhom/dichotomy.hpp"
#include "hyperhom/evaluator.hpp"
#include "hyperhom/gadgets.hpp"

namespace hyperhom {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "hyperhom";
inline constexpr const char* kToolVersion = "1.0.0";

Json to_json(const HardnessWitness& w);
Json to_json(const Classification& cls);
Json to_json(const EvalReport& report);
Json to_json(const GadgetResult& result);

/// {tool, version, command, status, payload, timing_ms}. Rationals are strings throughout.
Json make_report(const Json& command, const std::string& status, Json payload, double timing_ms);

}  // namespace hyperhom
