#include "parkforge/scene_json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <string>

#include "parkforge/errors.hpp"

namespace parkforge {

using nlohmann::json;

namespace {

json point(Vec2 p) { return json::array({p.x, p.y}); }

json points(const std::vector<Vec2>& pts) {
  json a = json::array();
  for (auto p : pts) a.push_back(point(p));
  return a;
}

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw ValidationError((pointer.empty() ? "/" : pointer) + ": " + what);
}

void require_object(const json& j, const std::string& ptr, const std::set<std::string>& keys) {
  if (!j.is_object()) fail(ptr, "expected an object");
  for (const auto& k : keys) {
    if (!j.contains(k)) fail(ptr + "/" + k, "missing required field");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!keys.count(it.key())) fail(ptr + "/" + it.key(), "unknown field");
  }
}

void require_number(const json& j, const std::string& ptr) {
  if (!j.is_number()) fail(ptr, "expected a number");
}

void require_point(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.size() != 2) fail(ptr, "expected an [x, y] pair");
  require_number(j[0], ptr + "/0");
  require_number(j[1], ptr + "/1");
}

void require_points(const json& j, const std::string& ptr, std::size_t min_items) {
  if (!j.is_array()) fail(ptr, "expected an array of points");
  if (j.size() < min_items) fail(ptr, "expected at least " + std::to_string(min_items) + " points");
  for (std::size_t i = 0; i < j.size(); ++i) require_point(j[i], ptr + "/" + std::to_string(i));
}

void require_category(const json& j, const std::string& ptr, std::initializer_list<Category> allowed) {
  if (!j.is_string()) fail(ptr, "expected a category name");
  const auto c = parse_category(j.get<std::string>());
  if (!c || std::find(allowed.begin(), allowed.end(), *c) == allowed.end()) {
    fail(ptr, "category '" + j.get<std::string>() + "' not allowed here");
  }
}

Vec2 as_point(const json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

std::vector<Vec2> as_points(const json& j) {
  std::vector<Vec2> out;
  for (const auto& p : j) out.push_back(as_point(p));
  return out;
}

}  // namespace

json to_json(const VectorScene& scene) {
  json j;
  j["width"] = scene.width;
  j["height"] = scene.height;
  j["scale"] = scene.scale;
  j["buildings"] = json::array();
  for (const auto& b : scene.buildings) {
    j["buildings"].push_back({{"corners", points({b.corners.begin(), b.corners.end()})}, {"rotated", b.rotated}});
  }
  j["regions"] = json::array();
  for (const auto& r : scene.regions) {
    j["regions"].push_back({{"category", std::string(to_string(r.category))},
                            {"polygon", points(r.polygon)},
                            {"smooth_samples", points(r.smooth_samples)},
                            {"area_px", r.area_px}});
  }
  j["centerlines"] = json::array();
  for (const auto& c : scene.centerlines) {
    json paths = json::array();
    for (const auto& p : c.paths) paths.push_back(points(p));
    j["centerlines"].push_back({{"category", std::string(to_string(c.category))}, {"paths", paths}});
  }
  json singles = json::array(), clusters = json::array();
  for (const auto& s : scene.plantings.singles) singles.push_back({{"center", point(s.center)}, {"radius", s.radius}});
  for (const auto& c : scene.plantings.clusters) {
    clusters.push_back({{"outline", points(c.outline)}, {"points", points(c.points)}});
  }
  j["plantings"] = {{"singles", singles}, {"clusters", clusters}};
  return j;
}

void validate_scene_json(const json& doc) {
  require_object(doc, "", {"width", "height", "scale", "buildings", "regions", "centerlines", "plantings"});
  for (const char* k : {"width", "height"}) {
    if (!doc[k].is_number_integer() || doc[k].get<long long>() < 1) fail(std::string("/") + k, "expected a positive integer");
  }
  require_number(doc["scale"], "/scale");
  if (!(doc["scale"].get<double>() > 0)) fail("/scale", "must be positive");

  if (!doc["buildings"].is_array()) fail("/buildings", "expected an array");
  for (std::size_t i = 0; i < doc["buildings"].size(); ++i) {
    const auto ptr = "/buildings/" + std::to_string(i);
    const auto& b = doc["buildings"][i];
    require_object(b, ptr, {"corners", "rotated"});
    require_points(b["corners"], ptr + "/corners", 4);
    if (b["corners"].size() != 4) fail(ptr + "/corners", "expected exactly 4 corners");
    if (!b["rotated"].is_boolean()) fail(ptr + "/rotated", "expected a boolean");
  }

  if (!doc["regions"].is_array()) fail("/regions", "expected an array");
  for (std::size_t i = 0; i < doc["regions"].size(); ++i) {
    const auto ptr = "/regions/" + std::to_string(i);
    const auto& r = doc["regions"][i];
    require_object(r, ptr, {"category", "polygon", "smooth_samples", "area_px"});
    require_category(r["category"], ptr + "/category",
                     {Category::green_space, Category::water, Category::pavement, Category::red_line});
    require_points(r["polygon"], ptr + "/polygon", 3);
    require_points(r["smooth_samples"], ptr + "/smooth_samples", 1);
    require_number(r["area_px"], ptr + "/area_px");
    if (r["area_px"].get<double>() < 0) fail(ptr + "/area_px", "must be >= 0");
  }

  if (!doc["centerlines"].is_array()) fail("/centerlines", "expected an array");
  for (std::size_t i = 0; i < doc["centerlines"].size(); ++i) {
    const auto ptr = "/centerlines/" + std::to_string(i);
    const auto& c = doc["centerlines"][i];
    require_object(c, ptr, {"category", "paths"});
    require_category(c["category"], ptr + "/category", {Category::road, Category::city_road});
    if (!c["paths"].is_array()) fail(ptr + "/paths", "expected an array");
    for (std::size_t k = 0; k < c["paths"].size(); ++k) {
      require_points(c["paths"][k], ptr + "/paths/" + std::to_string(k), 2);
    }
  }

  const auto& pl = doc["plantings"];
  require_object(pl, "/plantings", {"singles", "clusters"});
  if (!pl["singles"].is_array()) fail("/plantings/singles", "expected an array");
  for (std::size_t i = 0; i < pl["singles"].size(); ++i) {
    const auto ptr = "/plantings/singles/" + std::to_string(i);
    const auto& s = pl["singles"][i];
    require_object(s, ptr, {"center", "radius"});
    require_point(s["center"], ptr + "/center");
    require_number(s["radius"], ptr + "/radius");
    if (!(s["radius"].get<double>() > 0)) fail(ptr + "/radius", "must be positive");
  }
  if (!pl["clusters"].is_array()) fail("/plantings/clusters", "expected an array");
  for (std::size_t i = 0; i < pl["clusters"].size(); ++i) {
    const auto ptr = "/plantings/clusters/" + std::to_string(i);
    const auto& c = pl["clusters"][i];
    require_object(c, ptr, {"outline", "points"});
    require_points(c["outline"], ptr + "/outline", 1);
    require_points(c["points"], ptr + "/points", 1);
  }
}

VectorScene scene_from_json(const json& doc) {
  validate_scene_json(doc);
  VectorScene s;
  s.width = doc["width"].get<int>();
  s.height = doc["height"].get<int>();
  s.scale = doc["scale"].get<double>();
  for (const auto& b : doc["buildings"]) {
    BuildingFootprint fp;
    for (int k = 0; k < 4; ++k) fp.corners[k] = as_point(b["corners"][k]);
    fp.rotated = b["rotated"].get<bool>();
    s.buildings.push_back(fp);
  }
  for (const auto& r : doc["regions"]) {
    s.regions.push_back({*parse_category(r["category"].get<std::string>()), as_points(r["polygon"]),
                         as_points(r["smooth_samples"]), r["area_px"].get<double>()});
  }
  for (const auto& c : doc["centerlines"]) {
    Centerline cl;
    cl.category = *parse_category(c["category"].get<std::string>());
    for (const auto& p : c["paths"]) cl.paths.push_back(as_points(p));
    s.centerlines.push_back(std::move(cl));
  }
  for (const auto& p : doc["plantings"]["singles"]) {
    s.plantings.singles.push_back({as_point(p["center"]), p["radius"].get<double>()});
  }
  for (const auto& c : doc["plantings"]["clusters"]) {
    s.plantings.clusters.push_back({as_points(c["outline"]), as_points(c["points"])});
  }
  return s;
}

void write_scene(const std::filesystem::path& path, const VectorScene& scene) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << to_json(scene).dump(1) << '\n';
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

VectorScene read_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return scene_from_json(doc);
}

}  // namespace parkforge
