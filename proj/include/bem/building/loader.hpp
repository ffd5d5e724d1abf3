#pragma once
// JSON building-description loader. See docs/building_format.md for the
// schema. Parse errors carry byte offsets; semantic errors carry the JSON
// path of the offending entity.

#include <string>

#include "bem/building/model.hpp"

namespace bem::building {

// Parses and validates. Throws ValidationError (semantic) or
// std::runtime_error (I/O, malformed JSON).
BuildingModel load_building(const std::string& path);

BuildingModel parse_building(const std::string& json_text,
                             const std::string& origin = "<string>");

}  // namespace bem::building
