#pragma once

#include <string>

#include "leonet/sim_config.hpp"

namespace leonet {

// Sectioned key = value configuration text with units spelled out in the
// key names ([sim] dt_days, [grid] shell_km, ...). Unknown keys are a hard
// error so typos cannot silently fall back to defaults.
SimConfig load_sim_config(const std::string& path);
void save_sim_config(const std::string& path, const SimConfig& config);

}  // namespace leonet
