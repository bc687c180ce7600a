#include "parkforge/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>

#include "parkforge/errors.hpp"
#include "parkforge/mesh_export.hpp"
#include "parkforge/png_io.hpp"
#include "parkforge/raster_prep.hpp"
#include "parkforge/scene_json.hpp"
#include "parkforge/terrain_analysis.hpp"

namespace parkforge {

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

fs::path mask_name(Category c) { return "mask_" + std::string(to_string(c)) + ".png"; }

template <typename F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

}  // namespace

fs::path resolve_out_dir(const std::string& cli_out, const PipelineConfig& cfg) {
  if (!cli_out.empty()) return cli_out;
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("PARKFORGE_OUT"); env && *env) return env;
  return "parkforge_out";
}

std::vector<fs::path> cmd_segment(const fs::path& plan_path, const PipelineConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  ensure_dir(out_dir);
  const auto plan = load_plan(plan_path, cfg.scale);
  const auto smoothed = smooth(plan, cfg.preprocessing.lambda);
  const auto pre = enhance(smoothed, cfg.preprocessing.sharpen_amount, cfg.preprocessing.contrast_gain);
  std::vector<fs::path> written{out_dir / "preprocessed.png"};
  png::write_plan(written[0], pre);
  for (const auto& mask : segment(pre, cfg.palette)) {
    written.push_back(out_dir / mask_name(mask.category));
    png::write_mask(written.back(), mask);
  }
  return written;
}

fs::path cmd_vectorize(const fs::path& masks_dir, const PipelineConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  std::vector<CategoryMask> masks;
  for (auto c : kAllCategories) {
    const auto path = masks_dir / mask_name(c);
    if (!fs::is_regular_file(path)) {
      throw IoError("missing mask for category '" + std::string(to_string(c)) + "': " + path.string());
    }
    masks.push_back(png::read_mask(path, c));
    if (masks.back().width != masks.front().width || masks.back().height != masks.front().height) {
      throw ValidationError("mask for category '" + std::string(to_string(c)) + "' has different dimensions");
    }
  }
  const auto scene = assemble_scene(masks, cfg.extraction, cfg.scale);
  ensure_dir(out_dir);
  const auto path = out_dir / "scene.json";
  write_scene(path, scene);
  return path;
}

std::vector<fs::path> cmd_build(const fs::path& scene_json, const PipelineConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  const auto scene = read_scene(scene_json);
  const auto scene3d = assemble_scene3d(scene, cfg.build);
  ensure_dir(out_dir);
  export_scene(scene3d, out_dir);
  return {out_dir / "scene.gltf", out_dir / "scene.bin", out_dir / "scene.obj", out_dir / "scene.mtl"};
}

std::vector<fs::path> cmd_analyze(const fs::path& scene_dir, const PipelineConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  const std::vector<std::string> expected{"scene.json", "scene.gltf", "scene.bin"};
  std::string missing;
  for (const auto& f : expected) {
    if (!fs::is_regular_file(scene_dir / f)) missing += (missing.empty() ? "" : ", ") + f;
  }
  if (!missing.empty()) {
    throw IoError("missing scene artifacts in '" + scene_dir.string() + "': " + missing +
                  " (expected scene.json, scene.gltf, scene.bin)");
  }
  const auto scene = read_scene(scene_dir / "scene.json");
  const auto scene3d = assemble_scene3d(scene, cfg.build);
  std::vector<Mesh3D> terrain_meshes;
  for (const auto& f : scene3d.terrains) terrain_meshes.push_back(f.mesh);

  // Overlays cover the whole plan so they line up with the input image.
  const std::array<double, 4> extent{0.0, -scene.height * scene.scale, scene.width * scene.scale, 0.0};
  ensure_dir(out_dir);
  std::vector<fs::path> written;
  for (auto overlay : {elevation_overlay(scene3d.terrains), slope_overlay(terrain_meshes),
                       drainage_overlay(scene3d.terrains)}) {
    overlay.bounds = extent;
    const auto png_path = out_dir / ("analysis_" + std::string(to_string(overlay.kind)) + ".png");
    render_overlay(overlay, png_path, cfg.analysis.px_per_meter);
    written.push_back(png_path);
    written.push_back(fs::path(png_path).replace_extension(".json"));
  }
  return written;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw InvariantError("SHA-256 initialisation failed");
  }
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char byte[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

fs::path write_manifest(const fs::path& dir, std::vector<fs::path> files, const PipelineConfig& cfg) {
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  nlohmann::json list = nlohmann::json::array();
  for (const auto& f : files) {
    list.push_back({{"path", f.filename().string()}, {"bytes", fs::file_size(f)}, {"sha256", sha256_file(f)}});
  }
  const nlohmann::json doc = {{"seed", cfg.seed}, {"files", list}};
  const auto path = dir / "manifest.json";
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << doc.dump(1) << '\n';
  if (!out) throw IoError("write failure on '" + path.string() + "'");
  return path;
}

fs::path cmd_pipeline(const fs::path& plan_path, const PipelineConfig& cfg, const fs::path& out_dir) {
  stage("config", [&] {
    cfg.validate();
    ensure_dir(out_dir);
    return 0;
  });
  auto files = stage("segment", [&] { return cmd_segment(plan_path, cfg, out_dir); });
  const auto scene = stage("vectorize", [&] { return cmd_vectorize(out_dir, cfg, out_dir); });
  files.push_back(scene);
  for (auto& f : stage("build", [&] { return cmd_build(scene, cfg, out_dir); })) files.push_back(f);
  for (auto& f : stage("analyze", [&] { return cmd_analyze(out_dir, cfg, out_dir); })) files.push_back(f);
  return stage("manifest", [&] { return write_manifest(out_dir, files, cfg); });
}

}  // namespace parkforge
