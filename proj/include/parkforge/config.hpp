#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "parkforge/scene_build.hpp"
#include "parkforge/segmentation.hpp"
#include "parkforge/vector_extract.hpp"

namespace parkforge {

struct PreprocessConfig {
  double lambda = 0.02;
  double sharpen_amount = 0.2;
  double contrast_gain = 1.0;
};

struct AnalysisConfig {
  double px_per_meter = 2.0;
};

/// Every tunable of the pipeline. Missing keys keep these defaults.
struct PipelineConfig {
  std::uint64_t seed = 0;
  double scale = 1.0;  // meters per pixel of the input plan
  Palette palette = Palette::defaults();
  PreprocessConfig preprocessing;
  ExtractionParams extraction;
  BuildConfig build;  // build.seed mirrors `seed`
  AnalysisConfig analysis;
  std::string out_dir;  // empty: not set in the file

  /// Throws ConfigError / ValidationError on the first violated invariant.
  void validate() const;
};

/// Parses YAML text. Unknown keys, wrong types and bad values raise
/// ConfigError with "<source>:<line>:<col>: <key path>: <problem>".
PipelineConfig parse_config(const std::string& text, const std::string& source = "<config>");
PipelineConfig load_config(const std::filesystem::path& path);

/// Default configuration as commented YAML (what `config-init` prints).
std::string default_config_yaml();

}  // namespace parkforge
