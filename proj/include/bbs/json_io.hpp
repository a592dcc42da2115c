#pragma once

#include <string>

#include <json.hpp>

#include "bbs/seat.hpp"
#include "bbs/stat_lab.hpp"
#include "bbs/ten_elim.hpp"
#include "bbs/ts.hpp"

namespace bbs {

// All emitted documents carry "schema": 1 for golden-test stability.
nlohmann::json seat_profile_json(const BallConfig& cfg);
nlohmann::json zeta_json(const ZetaMatrix& z);
nlohmann::json rigging_json(const Rigging& r);
nlohmann::json solitons_json(const SolitonSet& s);
nlohmann::json estimate_json(const EstimateReport& rep);
std::string estimate_csv(const std::vector<EstimateReport>& reps);

// Measure parameter files: {"alpha":[...]}, {"alpha_geometric":{"a":..,"b":..}},
// {"q":[...]}, {"ab":{"a":..,"b":..}}.
AlphaParams load_alpha(const nlohmann::json& doc);
AB load_ab(const nlohmann::json& doc);

}  // namespace bbs
