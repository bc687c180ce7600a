#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "parkforge/config.hpp"
#include "parkforge/errors.hpp"
#include "parkforge/pipeline.hpp"

namespace {

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "YAML configuration file (defaults when omitted)")->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--seed", c.seed, "Override the configured seed");
}

parkforge::PipelineConfig resolve(const Common& c) {
  auto cfg = c.config.empty() ? parkforge::parse_config("") : parkforge::load_config(c.config);
  if (c.seed) {
    cfg.seed = *c.seed;
    cfg.build.seed = *c.seed;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parkforge: park layout plan to 3D scene and terrain analysis"};
  app.require_subcommand(1);
  Common common;
  std::string input;

  auto* seg = app.add_subcommand("segment", "Smooth, enhance and split a plan PNG into category masks");
  seg->add_option("plan", input, "Layout plan PNG")->required();
  add_common(seg, common);

  auto* vec = app.add_subcommand("vectorize", "Turn mask_<category>.png files into scene.json");
  vec->add_option("masks_dir", input, "Directory holding the eight masks")->required();
  add_common(vec, common);

  auto* bld = app.add_subcommand("build", "Generate glTF and OBJ meshes from scene.json");
  bld->add_option("scene_json", input, "Vector scene file")->required();
  add_common(bld, common);

  auto* ana = app.add_subcommand("analyze", "Elevation, slope and drainage overlays");
  ana->add_option("scene_dir", input, "Directory holding scene.json and the built meshes")->required();
  add_common(ana, common);

  auto* pipe = app.add_subcommand("pipeline", "Run every stage and write manifest.json");
  pipe->add_option("plan", input, "Layout plan PNG")->required();
  add_common(pipe, common);

  auto* init = app.add_subcommand("config-init", "Print the default configuration");
  std::string init_path;
  init->add_option("path", init_path, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (init->parsed()) {
      const auto text = parkforge::default_config_yaml();
      if (init_path.empty()) {
        std::cout << text;
      } else {
        std::FILE* f = std::fopen(init_path.c_str(), "wb");
        if (!f || std::fwrite(text.data(), 1, text.size(), f) != text.size()) {
          if (f) std::fclose(f);
          throw parkforge::IoError("cannot write '" + init_path + "'");
        }
        std::fclose(f);
      }
      return 0;
    }

    const auto cfg = resolve(common);
    const auto out = parkforge::resolve_out_dir(common.out, cfg);
    if (seg->parsed()) {
      parkforge::cmd_segment(input, cfg, out);
    } else if (vec->parsed()) {
      parkforge::cmd_vectorize(input, cfg, out);
    } else if (bld->parsed()) {
      parkforge::cmd_build(input, cfg, out);
    } else if (ana->parsed()) {
      parkforge::cmd_analyze(input, cfg, out);
    } else if (pipe->parsed()) {
      const auto manifest = parkforge::cmd_pipeline(input, cfg, out);
      std::cout << manifest.string() << '\n';
    }
    return 0;
  } catch (const parkforge::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
