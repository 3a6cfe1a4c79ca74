#pragma once

#include <string>

#include <json.hpp>

#include "rgs/game_model.hpp"
#include "rgs/measures.hpp"

namespace rgs {

RepeatedGameSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const RepeatedGameSpec& spec);

// Reads and validates; errors name the file and the offending key.
RepeatedGameSpec load_spec(const std::string& path);
void save_spec(const RepeatedGameSpec& spec, const std::string& path);

nlohmann::json measure_to_json(const BeliefMeasure& u);
BeliefMeasure measure_from_json(const nlohmann::json& j);

std::string read_file(const std::string& path);

}  // namespace rgs
