#include "parkforge/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "parkforge/errors.hpp"

namespace parkforge {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& path, const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    const auto mark = node.Mark();
    if (!mark.is_null()) msg << ':' << mark.line + 1 << ':' << mark.column + 1;
    msg << ": " << (path.empty() ? "<root>" : path) << ": " << what;
    throw ConfigError(msg.str());
  }

  void expect_map(const YAML::Node& node, const std::string& path, const std::set<std::string>& keys) const {
    if (node.IsNull()) return;  // a section holding only comments
    if (!node.IsMap()) fail(node, path, "expected a mapping");
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!keys.count(key)) fail(kv.first, join(path, key), "unknown key");
    }
  }

  double number(const YAML::Node& node, const std::string& path) const {
    if (!node.IsScalar()) fail(node, path, "expected a number");
    try {
      const double v = node.as<double>();
      if (!std::isfinite(v)) fail(node, path, "expected a finite number");
      return v;
    } catch (const YAML::BadConversion&) {
      fail(node, path, "expected a number, got '" + node.Scalar() + "'");
    }
  }

  int integer(const YAML::Node& node, const std::string& path) const {
    const double v = number(node, path);
    if (v != std::floor(v) || std::abs(v) > std::numeric_limits<int>::max()) fail(node, path, "expected an integer");
    return static_cast<int>(v);
  }

  std::uint64_t u64(const YAML::Node& node, const std::string& path) const {
    if (!node.IsScalar()) fail(node, path, "expected an unsigned integer");
    try {
      const auto& s = node.Scalar();
      if (s.empty() || s[0] == '-') throw YAML::BadConversion(node.Mark());
      return node.as<std::uint64_t>();
    } catch (const YAML::BadConversion&) {
      fail(node, path, "expected an unsigned integer, got '" + node.Scalar() + "'");
    }
  }

  bool boolean(const YAML::Node& node, const std::string& path) const {
    try {
      if (!node.IsScalar()) throw YAML::BadConversion(node.Mark());
      return node.as<bool>();
    } catch (const YAML::BadConversion&) {
      fail(node, path, "expected true or false");
    }
  }

  std::string text(const YAML::Node& node, const std::string& path) const {
    if (!node.IsScalar()) fail(node, path, "expected a string");
    return node.Scalar();
  }

  std::array<double, 2> range(const YAML::Node& node, const std::string& path) const {
    if (!node.IsSequence() || node.size() != 2) fail(node, path, "expected [min, max]");
    std::array<double, 2> r{number(node[0], path + "[0]"), number(node[1], path + "[1]")};
    if (r[0] > r[1]) fail(node, path, "min must not exceed max");
    return r;
  }

  static std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

 private:
  std::string source_;
};

template <typename T, typename F>
void maybe(const YAML::Node& map, const char* key, T& dst, F&& read) {
  if (const auto n = map[key]) dst = read(n);
}

}  // namespace

void PipelineConfig::validate() const {
  palette.validate();
  if (!(scale > 0)) throw ConfigError("plan.scale must be > 0");
  if (!(preprocessing.lambda >= 0)) throw ConfigError("preprocessing.lambda must be >= 0");
  if (!(preprocessing.sharpen_amount >= 0)) throw ConfigError("preprocessing.sharpen_amount must be >= 0");
  if (!(preprocessing.contrast_gain > 0)) throw ConfigError("preprocessing.contrast_gain must be > 0");
  const auto& e = extraction;
  if (!(e.min_area >= 0)) throw ConfigError("extraction.min_area must be >= 0");
  if (!(e.epsilon > 0)) throw ConfigError("extraction.epsilon must be > 0");
  if (!(e.sample_step > 0)) throw ConfigError("extraction.sample_step must be > 0");
  if (!(e.blur_sigma >= 0)) throw ConfigError("extraction.blur_sigma must be >= 0");
  if (!(e.prune_len >= 0)) throw ConfigError("extraction.prune_len must be >= 0");
  if (e.stride < 1) throw ConfigError("extraction.stride must be >= 1");
  if (!(e.planting_interval > 0)) throw ConfigError("extraction.planting_interval must be > 0");
  if (e.morph_kernel < 1 || e.morph_kernel % 2 == 0) throw ConfigError("extraction.morph_kernel must be odd and >= 1");
  if (!(e.building_min_area >= 0)) throw ConfigError("extraction.building_min_area must be >= 0");
  try {
    build.validate();
  } catch (const ValidationError& err) {
    throw ConfigError(std::string("build.") + err.what());
  }
  if (!(analysis.px_per_meter > 0)) throw ConfigError("analysis.px_per_meter must be > 0");
}

PipelineConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                      ": " + e.msg);
  }
  PipelineConfig cfg;
  if (root.IsNull()) {
    cfg.validate();
    return cfg;
  }
  const Reader r(source);
  r.expect_map(root, "", {"seed", "plan", "palette", "preprocessing", "extraction", "build", "analysis", "io"});
  auto num = [&](const std::string& p) { return [&r, p](const YAML::Node& n) { return r.number(n, p); }; };
  auto integer = [&](const std::string& p) { return [&r, p](const YAML::Node& n) { return r.integer(n, p); }; };

  maybe(root, "seed", cfg.seed, [&](const YAML::Node& n) { return r.u64(n, "seed"); });

  if (const auto plan = root["plan"]) {
    r.expect_map(plan, "plan", {"scale"});
    maybe(plan, "scale", cfg.scale, num("plan.scale"));
  }

  if (const auto pal = root["palette"]) {
    std::set<std::string> names;
    for (auto c : kAllCategories) names.insert(std::string(to_string(c)));
    r.expect_map(pal, "palette", names);
    for (const auto& kv : pal) {
      const auto name = kv.first.as<std::string>();
      const auto path = "palette." + name;
      const auto& entry = kv.second;
      r.expect_map(entry, path, {"color", "tolerance"});
      auto* e = const_cast<PaletteEntry*>(cfg.palette.find(*parse_category(name)));
      if (const auto col = entry["color"]) {
        if (!col.IsSequence() || col.size() != 3) r.fail(col, path + ".color", "expected [r, g, b]");
        std::uint8_t ch[3];
        for (int k = 0; k < 3; ++k) {
          const int v = r.integer(col[k], path + ".color[" + std::to_string(k) + "]");
          if (v < 0 || v > 255) r.fail(col[k], path + ".color[" + std::to_string(k) + "]", "must be in [0, 255]");
          ch[k] = static_cast<std::uint8_t>(v);
        }
        e->reference = {ch[0], ch[1], ch[2]};
      }
      maybe(entry, "tolerance", e->tolerance, integer(path + ".tolerance"));
    }
  }

  if (const auto pre = root["preprocessing"]) {
    r.expect_map(pre, "preprocessing", {"lambda", "sharpen_amount", "contrast_gain"});
    maybe(pre, "lambda", cfg.preprocessing.lambda, num("preprocessing.lambda"));
    maybe(pre, "sharpen_amount", cfg.preprocessing.sharpen_amount, num("preprocessing.sharpen_amount"));
    maybe(pre, "contrast_gain", cfg.preprocessing.contrast_gain, num("preprocessing.contrast_gain"));
  }

  if (const auto ex = root["extraction"]) {
    r.expect_map(ex, "extraction", {"min_area", "epsilon", "sample_step", "blur_sigma", "prune_len", "stride",
                                    "planting_interval", "morph_kernel", "building_min_area"});
    auto& e = cfg.extraction;
    maybe(ex, "min_area", e.min_area, num("extraction.min_area"));
    maybe(ex, "epsilon", e.epsilon, num("extraction.epsilon"));
    maybe(ex, "sample_step", e.sample_step, num("extraction.sample_step"));
    maybe(ex, "blur_sigma", e.blur_sigma, num("extraction.blur_sigma"));
    maybe(ex, "prune_len", e.prune_len, num("extraction.prune_len"));
    maybe(ex, "stride", e.stride, integer("extraction.stride"));
    maybe(ex, "planting_interval", e.planting_interval, num("extraction.planting_interval"));
    maybe(ex, "morph_kernel", e.morph_kernel, integer("extraction.morph_kernel"));
    maybe(ex, "building_min_area", e.building_min_area, num("extraction.building_min_area"));
  }

  if (const auto b = root["build"]) {
    r.expect_map(b, "build", {"building_height_range", "road_width", "city_road_width", "terrain_amplitude",
                              "water_depth", "terrain_exponent", "terrain_jitter", "grid_spacing", "tree_density",
                              "canopy_height_range", "drape"});
    auto& c = cfg.build;
    auto rng = [&](const std::string& p) { return [&r, p](const YAML::Node& n) { return r.range(n, p); }; };
    maybe(b, "building_height_range", c.building_height_range, rng("build.building_height_range"));
    maybe(b, "road_width", c.road_width, num("build.road_width"));
    maybe(b, "city_road_width", c.city_road_width, num("build.city_road_width"));
    maybe(b, "terrain_amplitude", c.terrain_amplitude, num("build.terrain_amplitude"));
    maybe(b, "water_depth", c.water_depth, num("build.water_depth"));
    maybe(b, "terrain_exponent", c.terrain_exponent, num("build.terrain_exponent"));
    maybe(b, "terrain_jitter", c.terrain_jitter, num("build.terrain_jitter"));
    maybe(b, "grid_spacing", c.grid_spacing, num("build.grid_spacing"));
    maybe(b, "tree_density", c.tree_density, num("build.tree_density"));
    maybe(b, "canopy_height_range", c.canopy_height_range, rng("build.canopy_height_range"));
    maybe(b, "drape", c.drape, [&](const YAML::Node& n) { return r.boolean(n, "build.drape"); });
  }

  if (const auto a = root["analysis"]) {
    r.expect_map(a, "analysis", {"px_per_meter"});
    maybe(a, "px_per_meter", cfg.analysis.px_per_meter, num("analysis.px_per_meter"));
  }

  if (const auto io = root["io"]) {
    r.expect_map(io, "io", {"out_dir"});
    maybe(io, "out_dir", cfg.out_dir, [&](const YAML::Node& n) { return r.text(n, "io.out_dir"); });
  }

  cfg.build.seed = cfg.seed;
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string default_config_yaml() {
  const PipelineConfig d;
  std::ostringstream o;
  o << "# parkforge configuration. Every key is optional; the values below are the defaults.\n"
       "\n"
       "# Single source of randomness (building heights, terrain jitter, tree placement).\n"
       "seed: "
    << d.seed
    << "\n"
       "\n"
       "plan:\n"
       "  scale: "
    << d.scale
    << "  # meters per pixel of the input plan\n"
       "\n"
       "# Reference colour and per-channel tolerance of each category. Ranges must not overlap.\n"
       "palette:\n";
  for (const auto& e : d.palette.entries) {
    o << "  " << to_string(e.category) << ": {color: [" << int(e.reference.r) << ", " << int(e.reference.g) << ", "
      << int(e.reference.b) << "], tolerance: " << e.tolerance << "}\n";
  }
  const auto& p = d.preprocessing;
  const auto& x = d.extraction;
  const auto& b = d.build;
  o << "\n"
       "preprocessing:\n"
       "  lambda: "
    << p.lambda << "          # L0 smoothing strength; 0 disables smoothing\n"
    << "  sharpen_amount: " << p.sharpen_amount << "    # unsharp-mask gain (blur sigma 1 px)\n"
    << "  contrast_gain: " << p.contrast_gain << "       # contrast stretch about mid-gray\n"
    << "\n"
       "extraction:\n"
    << "  min_area: " << x.min_area << "          # px^2; smaller regions are dropped\n"
    << "  epsilon: " << x.epsilon << "            # px; polygon simplification tolerance\n"
    << "  sample_step: " << x.sample_step << "        # px; spacing of smoothed outline samples\n"
    << "  blur_sigma: " << x.blur_sigma << "         # px; blur before thinning linear elements\n"
    << "  prune_len: " << x.prune_len << "         # px; shorter centerline branches are dropped\n"
    << "  stride: " << x.stride << "             # keep every stride-th centerline point\n"
    << "  planting_interval: " << x.planting_interval << " # px; spacing of planting points along cluster outlines\n"
    << "  morph_kernel: " << x.morph_kernel << "       # px; opening/closing window for region masks\n"
    << "  building_min_area: " << x.building_min_area << "   # px^2; smaller building blobs are noise\n"
    << "\n"
       "build:\n"
    << "  building_height_range: [" << b.building_height_range[0] << ", " << b.building_height_range[1]
    << "]  # m\n"
    << "  road_width: " << b.road_width << "            # m, garden paths\n"
    << "  city_road_width: " << b.city_road_width << "      # m\n"
    << "  terrain_amplitude: " << b.terrain_amplitude << "     # m, green space peak height\n"
    << "  water_depth: " << b.water_depth << "         # m, water peak depth\n"
    << "  terrain_exponent: " << b.terrain_exponent << "    # height ~ (d / d_max)^exponent\n"
    << "  terrain_jitter: " << b.terrain_jitter << "      # relative random height variation, [0, 1)\n"
    << "  grid_spacing: " << b.grid_spacing << "          # m, terrain sample grid\n"
    << "  tree_density: " << b.tree_density << "       # trees per m^2 inside plant clusters\n"
    << "  canopy_height_range: [" << b.canopy_height_range[0] << ", " << b.canopy_height_range[1]
    << "]  # m, canopy diameter of cluster trees\n"
    << "  drape: " << (b.drape ? "true" : "false") << "             # lift roads onto the terrain surface\n"
    << "\n"
       "analysis:\n"
    << "  px_per_meter: " << d.analysis.px_per_meter << "  # overlay raster resolution\n"
    << "\n"
       "io:\n"
       "  # out_dir: out  # overridden by --out; PARKFORGE_OUT is used when neither is set\n";
  return o.str();
}

}  // namespace parkforge
