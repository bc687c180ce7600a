#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parkforge/scene_build.hpp"

namespace parkforge {

enum class OverlayKind { elevation, slope, drainage };

std::string_view to_string(OverlayKind k);

struct LegendEntry {
  std::string label;
  Rgb color;
};

/// Face-based analysis of one or more meshes merged into a single soup.
/// Every per_* vector has one entry per triangle.
struct AnalysisOverlay {
  OverlayKind kind = OverlayKind::elevation;
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;

  std::vector<double> per_face;  // mean z (m), slope (deg) or accumulation
  std::vector<int> bin;          // legend entry of each face
  std::vector<Rgb> face_color;
  std::vector<Vec3> flow3d;      // drainage: unit downslope vector in the face plane
  std::vector<Vec2> flow;        // drainage: its horizontal direction, unit or zero
  std::vector<double> log_accumulation;
  std::vector<int> receiver;     // drainage: downslope neighbour or -1

  std::vector<LegendEntry> legend;
  std::vector<std::size_t> bin_counts;  // parallel to legend
  double min = 0, max = 0;
  std::array<double, 4> bounds{0, 0, 0, 0};  // min x, min y, max x, max y (m)
};

/// Slope bin edges in degrees; the last bin is closed at 90.
inline constexpr std::array<double, 6> kSlopeEdges{0, 5, 19, 45, 65, 90};

/// Lower-inclusive bin of a slope in degrees, after snapping to 1e-9 deg.
int slope_bin(double degrees);

/// Per-face mean z on a blue-to-red ramp over the global range.
AnalysisOverlay elevation_overlay(std::span<const TerrainField> fields);

/// Per-face inclination binned by kSlopeEdges.
AnalysisOverlay slope_overlay(std::span<const Mesh3D> meshes);

/// Steepest-descent routing between edge-adjacent faces. Each face hands its
/// accumulated count to the neighbour with the lowest centroid strictly below
/// its own (ties: lower index); faces with no such neighbour are minima.
AnalysisOverlay drainage_overlay(std::span<const TerrainField> fields);

/// Top-down PNG of the overlay plus a sidecar legend next to it
/// (same stem, .json): {kind, legend:[{label,color}], stats:{min,max,bin_counts}}.
void render_overlay(const AnalysisOverlay& overlay, const std::filesystem::path& png_path,
                    double px_per_meter);

}  // namespace parkforge
