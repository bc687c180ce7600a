#include "parkforge/mesh_export.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>

#include "parkforge/errors.hpp"

namespace parkforge {

using nlohmann::json;

namespace {

static_assert(std::endian::native == std::endian::little, "binary buffers are written in host order");

constexpr int kArrayBuffer = 34962;
constexpr int kElementArrayBuffer = 34963;
constexpr int kFloat = 5126;
constexpr int kUnsignedInt = 5125;
constexpr int kTriangles = 4;

/// World to file frame; the + 0.0 turns -0 into 0 so output text is stable.
std::array<double, 3> file_frame(Vec3 v) { return {v.x + 0.0, v.z + 0.0, -v.y + 0.0}; }

template <typename T>
void append_bytes(std::vector<std::uint8_t>& bin, const T& value) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
  bin.insert(bin.end(), p, p + sizeof(T));
}

void write_file(const std::filesystem::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_file(path, text.data(), text.size());
}

std::vector<Category> categories_present(const std::vector<Mesh3D>& meshes) {
  std::vector<Category> cats;
  for (const auto& m : meshes) {
    if (std::find(cats.begin(), cats.end(), m.category) == cats.end()) cats.push_back(m.category);
  }
  return cats;
}

}  // namespace

json gltf_document(const std::vector<Mesh3D>& meshes, const std::string& bin_uri,
                   std::vector<std::uint8_t>& bin) {
  bin.clear();
  json doc;
  doc["asset"] = {{"version", "2.0"}, {"generator", "parkforge"}};
  doc["scene"] = 0;
  if (meshes.empty()) {
    doc["scenes"] = json::array({json::object()});
    return doc;
  }

  const auto cats = categories_present(meshes);
  json materials = json::array();
  for (auto c : cats) {
    const Rgb col = std::find_if(meshes.begin(), meshes.end(), [&](const Mesh3D& m) { return m.category == c; })->color;
    materials.push_back({{"name", std::string(to_string(c))},
                         {"pbrMetallicRoughness",
                          {{"baseColorFactor", {col.r / 255.0, col.g / 255.0, col.b / 255.0, 1.0}},
                           {"metallicFactor", 0.0},
                           {"roughnessFactor", 1.0}}}});
  }

  json nodes = json::array(), gmeshes = json::array(), views = json::array(), accessors = json::array();
  json scene_nodes = json::array();
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    const auto& m = meshes[i];
    if (m.triangles.empty() || m.vertices.empty()) throw InvariantError(m.name + ": empty mesh cannot be exported");

    std::array<float, 3> lo{}, hi{};
    lo.fill(std::numeric_limits<float>::infinity());
    hi.fill(-std::numeric_limits<float>::infinity());
    const std::size_t pos_offset = bin.size();
    for (const auto& v : m.vertices) {
      const auto f = file_frame(v);
      for (int k = 0; k < 3; ++k) {
        const float c = static_cast<float>(f[k]) + 0.0f;
        lo[k] = std::min(lo[k], c);
        hi[k] = std::max(hi[k], c);
        append_bytes(bin, c);
      }
    }
    const std::size_t idx_offset = bin.size();
    for (const auto& t : m.triangles) {
      for (auto idx : t) append_bytes(bin, idx);
    }

    const auto view = views.size();
    views.push_back({{"buffer", 0}, {"byteOffset", pos_offset}, {"byteLength", idx_offset - pos_offset},
                     {"target", kArrayBuffer}});
    views.push_back({{"buffer", 0}, {"byteOffset", idx_offset}, {"byteLength", bin.size() - idx_offset},
                     {"target", kElementArrayBuffer}});
    const auto acc = accessors.size();
    accessors.push_back({{"bufferView", view},
                         {"componentType", kFloat},
                         {"count", m.vertices.size()},
                         {"type", "VEC3"},
                         {"min", {lo[0], lo[1], lo[2]}},
                         {"max", {hi[0], hi[1], hi[2]}}});
    accessors.push_back(
        {{"bufferView", view + 1}, {"componentType", kUnsignedInt}, {"count", 3 * m.triangles.size()}, {"type", "SCALAR"}});
    const auto material = std::find(cats.begin(), cats.end(), m.category) - cats.begin();
    gmeshes.push_back({{"name", m.name},
                       {"primitives",
                        json::array({{{"attributes", {{"POSITION", acc}}},
                                      {"indices", acc + 1},
                                      {"material", material},
                                      {"mode", kTriangles}}})}});
    nodes.push_back({{"name", m.name}, {"mesh", i}});
    scene_nodes.push_back(i);
  }

  doc["scenes"] = json::array({{{"nodes", scene_nodes}}});
  doc["nodes"] = nodes;
  doc["meshes"] = gmeshes;
  doc["materials"] = materials;
  doc["accessors"] = accessors;
  doc["bufferViews"] = views;
  doc["buffers"] = json::array({{{"uri", bin_uri}, {"byteLength", bin.size()}}});
  return doc;
}

void write_gltf(const std::vector<Mesh3D>& meshes, const std::filesystem::path& dir, const std::string& stem) {
  std::vector<std::uint8_t> bin;
  const auto doc = gltf_document(meshes, stem + ".bin", bin);
  write_text(dir / (stem + ".gltf"), doc.dump(1) + "\n");
  write_file(dir / (stem + ".bin"), bin.data(), bin.size());
}

void write_obj(const std::vector<Mesh3D>& meshes, const std::filesystem::path& dir, const std::string& stem) {
  std::string obj = "mtllib " + stem + ".mtl\n";
  std::string mtl;
  char line[160];
  for (auto c : categories_present(meshes)) {
    const Rgb col = std::find_if(meshes.begin(), meshes.end(), [&](const Mesh3D& m) { return m.category == c; })->color;
    std::snprintf(line, sizeof line, "newmtl %s\nKd %.6f %.6f %.6f\n\n", std::string(to_string(c)).c_str(),
                  col.r / 255.0, col.g / 255.0, col.b / 255.0);
    mtl += line;
  }
  std::size_t base = 1;
  for (const auto& m : meshes) {
    obj += "o " + m.name + "\nusemtl " + std::string(to_string(m.category)) + "\n";
    for (const auto& v : m.vertices) {
      const auto f = file_frame(v);
      std::snprintf(line, sizeof line, "v %.6f %.6f %.6f\n", f[0], f[1], f[2]);
      obj += line;
    }
    for (const auto& t : m.triangles) {
      std::snprintf(line, sizeof line, "f %zu %zu %zu\n", base + t[0], base + t[1], base + t[2]);
      obj += line;
    }
    base += m.vertices.size();
  }
  write_text(dir / (stem + ".obj"), obj);
  write_text(dir / (stem + ".mtl"), mtl);
}

void export_scene(const Scene3D& scene, const std::filesystem::path& dir) {
  write_gltf(scene.meshes, dir);
  write_obj(scene.meshes, dir);
}

}  // namespace parkforge
