#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "rgs/game_model.hpp"
#include "rgs/measures.hpp"
#include "rgs/strategies.hpp"

namespace rgs {

// Player 1: stage rules on the beliefs reachable from u over one period. When
// some stage has more than max_table beliefs every stage is written on the
// lattice of the given resolution instead.
nlohmann::json strategy1_to_json(const AuxiliaryGame& game, const MarkovStrategy1& sigma, const BeliefMeasure& u,
                                 std::size_t lattice_resolution, std::size_t max_table = 4096);
nlohmann::json strategy2_to_json(const RepeatedGameSpec& spec, const BlockStrategy2& tau);

// Throws ValidationError on shape mismatches with the spec.
std::shared_ptr<MarkovStrategy1> strategy1_from_json(const RepeatedGameSpec& spec, const nlohmann::json& j);
std::shared_ptr<BlockStrategy2> strategy2_from_json(const RepeatedGameSpec& spec, const nlohmann::json& j);

}  // namespace rgs
