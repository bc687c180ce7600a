#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "parkforge/vector_extract.hpp"

namespace parkforge {

// VectorScene persistence. Field names are fixed:
//   {"width","height","scale",
//    "buildings":[{"corners":[[x,y]x4],"rotated"}],
//    "regions":[{"category","polygon","smooth_samples","area_px"}],
//    "centerlines":[{"category","paths":[[[x,y],...],...]}],
//    "plantings":{"singles":[{"center","radius"}],
//                 "clusters":[{"outline","points"}]}}
// schemas/vector_scene.schema.json is the matching JSON Schema.

nlohmann::json to_json(const VectorScene& scene);

/// Structural validation; throws ValidationError whose message starts with
/// the JSON pointer of the offending value.
void validate_scene_json(const nlohmann::json& doc);

/// Validates then converts.
VectorScene scene_from_json(const nlohmann::json& doc);

void write_scene(const std::filesystem::path& path, const VectorScene& scene);
VectorScene read_scene(const std::filesystem::path& path);

}  // namespace parkforge
