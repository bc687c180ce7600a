#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "parkforge/scene_build.hpp"

namespace parkforge {

// Both writers map world (x, y, z) to the y-up file frame as (x, z, -y).
// One node and one mesh per Mesh3D, named after Mesh3D::name; one material
// per category present.

/// glTF 2.0 JSON plus the bytes of its single binary buffer (float32
/// positions, uint32 indices, little-endian). An empty list yields a document
/// with one empty scene and no buffers.
nlohmann::json gltf_document(const std::vector<Mesh3D>& meshes, const std::string& bin_uri,
                             std::vector<std::uint8_t>& bin);

/// Writes <stem>.gltf and <stem>.bin into `dir`.
void write_gltf(const std::vector<Mesh3D>& meshes, const std::filesystem::path& dir,
                const std::string& stem = "scene");

/// Writes <stem>.obj and <stem>.mtl into `dir`.
void write_obj(const std::vector<Mesh3D>& meshes, const std::filesystem::path& dir,
               const std::string& stem = "scene");

/// write_gltf + write_obj.
void export_scene(const Scene3D& scene, const std::filesystem::path& dir);

}  // namespace parkforge
