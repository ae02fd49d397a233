#pragma once

#include <string>

#include <json.hpp>

#include "lfscan/core/lenslet_grid.hpp"
#include "lfscan/core/shift_schedule.hpp"

namespace lfscan {

// JSON sidecar schema, version 1. Field names match the domain types; all
// physical quantities carry a _um suffix.

inline constexpr int kSidecarSchemaVersion = 1;

nlohmann::json grid_to_json(const LensletGrid& grid);
LensletGrid grid_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const ShiftSchedule& schedule);
ShiftSchedule schedule_from_json(const nlohmann::json& j);

void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

} // namespace lfscan
