#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "parkforge/rng.hpp"
#include "parkforge/types.hpp"
#include "parkforge/vector_extract.hpp"

namespace parkforge {

// World frame: x east, y north (image y negated), z up, meters. Image
// top-left is the origin.

using Triangle = std::array<std::uint32_t, 3>;

struct Mesh3D {
  Category category = Category::building;
  std::string name;  // "<category>_<index>" once assembled
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  Rgb color;

  /// Indices in range, finite coordinates, every triangle area > 1e-9 m^2.
  void validate() const;
  double surface_area() const;
  /// Signed volume by the divergence theorem (meaningful for closed meshes).
  double signed_volume() const;
  /// Appends another mesh's geometry.
  void append(const Mesh3D& other);
};

struct TerrainField {
  Mesh3D mesh;
  std::vector<std::uint32_t> boundary_vertices;  // z == 0 exactly
  std::vector<double> vertex_distance;           // meters to the outline
  int sign = 1;                                  // +1 green space, -1 water
};

struct BuildConfig {
  std::uint64_t seed = 0;
  std::array<double, 2> building_height_range{3, 15};
  double road_width = 3;        // garden paths
  double city_road_width = 12;
  double terrain_amplitude = 3;  // green space peak height
  double water_depth = 2.5;      // water peak depth
  double terrain_exponent = 1.5;
  double terrain_jitter = 0.2;
  double grid_spacing = 2;
  double tree_density = 0.02;  // trees per m^2 inside clusters
  std::array<double, 2> canopy_height_range{3, 6};
  bool drape = false;

  void validate() const;
};

struct Scene3D {
  std::vector<Mesh3D> meshes;
  std::vector<TerrainField> terrains;  // green space and water surfaces
};

inline Vec3 to_world(Vec2 px, double scale) { return {px.x * scale, -px.y * scale, 0.0}; }

inline constexpr double kPavementZ = 0.02;
inline constexpr double kRoadZ = 0.01;

/// Prism of the footprint extruded to a height drawn from the configured range.
Mesh3D build_building(const BuildingFootprint& fp, double scale, const BuildConfig& cfg, Rng& rng);

/// Flat slab at z = 0.02 m. Throws ValidationError naming `region_index`
/// when the outline self-intersects.
Mesh3D build_pavement(const RegionOutline& region, double scale, std::size_t region_index = 0);

/// Triangulated surface whose height grows with distance from the outline:
/// z = sign * A * (d / d_max)^p * (1 + jitter * u),  u ~ U[-1, 1].
TerrainField build_terrain(const RegionOutline& region, int sign, double scale, const BuildConfig& cfg,
                           Rng& rng);

/// Constant-width ribbon along each path with miter joins (limit 4, bevel
/// beyond). Lies at z = 0.01 m, plus the terrain height when cfg.drape.
Mesh3D build_road(const Centerline& cl, double scale, const BuildConfig& cfg,
                  std::span<const TerrainField> terrain = {});

/// Height of the terrain surface under (x, y), or 0 outside every field.
double terrain_height_at(std::span<const TerrainField> terrain, double x, double y);

/// Number of interior trees for a cluster: max(1, round(area * density)).
std::size_t cluster_tree_count(double area_m2, double density);

/// Rejection-samples `count` points inside the polygon, at least 2 m apart;
/// the spacing is halved after 100 consecutive failures.
std::vector<Vec2> sample_interior_points(std::span<const Vec2> polygon, std::size_t count, Rng& rng);

/// Trunk (8-sided cylinder, r 0.15 m, h 2 m) plus icosphere canopy whose
/// centre sits at trunk top + canopy radius.
Mesh3D make_tree(Vec3 base, double canopy_radius);

/// One mesh per tree. Singles use their recorded radius; each cluster uses
/// its own substream of `seed`.
std::vector<Mesh3D> build_plantings(const PlantingPlan& plan, double scale, const BuildConfig& cfg,
                                    std::uint64_t seed);

/// Runs every builder in fixed category order and names meshes.
Scene3D assemble_scene3d(const VectorScene& scene, const BuildConfig& cfg);

}  // namespace parkforge
