#pragma once

#include <nlohmann/json.hpp>

#include "spherebounds/lp_bound.hpp"
#include "spherebounds/packing_bounds.hpp"
#include "spherebounds/tetra_geometry.hpp"

namespace spherebounds::cli {

using Json = nlohmann::ordered_json;

Json to_json(const LPConfig& config);
Json to_json(const LPBoundResult& result);
Json to_json(const BoundReport& report);
Json to_json(const DensityBoundResult& result);
Json to_json(const TetraReport& report);

LPConfig lp_config_from_json(const Json& j);
LPBoundResult lp_result_from_json(const Json& j);
BoundReport bound_report_from_json(const Json& j);

}  // namespace spherebounds::cli
