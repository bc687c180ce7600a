#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "parkforge/config.hpp"

namespace parkforge {

namespace fs = std::filesystem;

/// --out, then io.out_dir from the config, then $PARKFORGE_OUT, then "parkforge_out".
fs::path resolve_out_dir(const std::string& cli_out, const PipelineConfig& cfg);

/// Plan -> preprocessed.png + mask_<category>.png (8 files).
std::vector<fs::path> cmd_segment(const fs::path& plan_path, const PipelineConfig& cfg, const fs::path& out_dir);

/// mask_<category>.png files -> scene.json.
fs::path cmd_vectorize(const fs::path& masks_dir, const PipelineConfig& cfg, const fs::path& out_dir);

/// scene.json -> scene.gltf, scene.bin, scene.obj, scene.mtl.
std::vector<fs::path> cmd_build(const fs::path& scene_json, const PipelineConfig& cfg, const fs::path& out_dir);

/// Rebuilds the terrain from <scene_dir>/scene.json with the config seed and
/// writes analysis_{elevation,slope,drainage}.{png,json}.
std::vector<fs::path> cmd_analyze(const fs::path& scene_dir, const PipelineConfig& cfg, const fs::path& out_dir);

/// All stages into one directory plus manifest.json. A failing stage is
/// reported as "<stage>: <error>" with the original error kind.
fs::path cmd_pipeline(const fs::path& plan_path, const PipelineConfig& cfg, const fs::path& out_dir);

std::string sha256_file(const fs::path& path);

/// Writes <dir>/manifest.json: {"seed", "files":[{"path","bytes","sha256"}]},
/// files sorted by name.
fs::path write_manifest(const fs::path& dir, std::vector<fs::path> files, const PipelineConfig& cfg);

}  // namespace parkforge
