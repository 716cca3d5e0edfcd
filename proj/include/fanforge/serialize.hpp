#pragma once

// JSON persistence: fanforge-state-v1 and the Debski set.

#include <string>

#include "json.hpp"

#include "fanforge/tiling.hpp"

namespace fanforge {

inline constexpr const char* kStateSchema = "fanforge-state-v1";

nlohmann::json debski_json(const DebskiSet& d);

/// Parameters, stages and rects, and the affine parameters of every copy.
nlohmann::json state_json(const ConstructionState& state);
std::string state_dump(const ConstructionState& state);

/// Rebuilds the state by placing copies in the stored rects; the stored copy
/// parameters must agree. Throws kSchema with a JSON-pointer-like location.
ConstructionState state_from_json(const nlohmann::json& doc);
ConstructionState state_parse(const std::string& text);

/// Throws kIo.
ConstructionState load_state(const std::string& path);
void save_state(const ConstructionState& state, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace fanforge
