#include "parkforge/scene_build.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "parkforge/errors.hpp"
#include "parkforge/geometry.hpp"
#include "parkforge/kernels.hpp"
#include "parkforge/segmentation.hpp"

namespace parkforge {

namespace {

constexpr double kMinTriangleArea = 1e-9;
constexpr double kTrunkRadius = 0.15;
constexpr double kTrunkHeight = 2.0;
constexpr int kTrunkSides = 8;
constexpr double kMiterLimit = 4.0;
constexpr double kTreeSpacing = 2.0;
constexpr int kMaxPlacementFailures = 100;

double triangle_area(Vec3 a, Vec3 b, Vec3 c) { return 0.5 * norm(cross(b - a, c - a)); }

double cross2(Vec3 a, Vec3 b, Vec3 c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

std::vector<Vec2> to_world_ring(std::span<const Vec2> px, double scale) {
  std::vector<Vec2> out;
  out.reserve(px.size());
  for (auto p : px) out.push_back({p.x * scale, -p.y * scale});
  return out;
}

/// Cleaned, counter-clockwise (y-up) outline in meters.
geom::Ring world_outline(const RegionOutline& region, double scale) {
  const auto& src = region.smooth_samples.size() >= 3 ? region.smooth_samples : region.polygon;
  auto ring = geom::clean_ring(to_world_ring(src, scale));
  if (ring.size() >= 3 && geom::signed_area(ring) < 0) std::reverse(ring.begin(), ring.end());
  return ring;
}

/// Adds the triangle facing up (+z), skipping slivers.
void add_up_triangle(Mesh3D& m, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  const auto &pa = m.vertices[a], &pb = m.vertices[b], &pc = m.vertices[c];
  const double s = cross2(pa, pb, pc);
  if (std::abs(s) * 0.5 <= kMinTriangleArea) return;
  if (s > 0) {
    m.triangles.push_back({a, b, c});
  } else {
    m.triangles.push_back({a, c, b});
  }
}

std::uint32_t push(Mesh3D& m, Vec3 v) {
  m.vertices.push_back(v);
  return static_cast<std::uint32_t>(m.vertices.size() - 1);
}

/// Unit icosphere, one subdivision (42 vertices, 80 faces), outward winding.
const Mesh3D& unit_icosphere() {
  static const Mesh3D sphere = [] {
    Mesh3D m;
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    const double base[12][3] = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                                {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    const std::uint32_t faces[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    auto unit = [](Vec3 v) { return v * (1.0 / norm(v)); };
    for (const auto& b : base) m.vertices.push_back(unit({b[0], b[1], b[2]}));
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mid;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const auto idx = push(m, unit((m.vertices[a] + m.vertices[b]) * 0.5));
      mid.emplace(key, idx);
      return idx;
    };
    for (const auto& f : faces) {
      const auto ab = midpoint(f[0], f[1]), bc = midpoint(f[1], f[2]), ca = midpoint(f[2], f[0]);
      for (const Triangle& tri : {Triangle{f[0], ab, ca}, Triangle{f[1], bc, ab}, Triangle{f[2], ca, bc},
                                  Triangle{ab, bc, ca}}) {
        const auto &a = m.vertices[tri[0]], &b = m.vertices[tri[1]], &c = m.vertices[tri[2]];
        if (dot(cross(b - a, c - a), a + b + c) < 0) {
          m.triangles.push_back({tri[0], tri[2], tri[1]});
        } else {
          m.triangles.push_back(tri);
        }
      }
    }
    return m;
  }();
  return sphere;
}

bool barycentric_z(Vec3 a, Vec3 b, Vec3 c, double x, double y, double& z) {
  const double det = (b.y - c.y) * (a.x - c.x) + (c.x - b.x) * (a.y - c.y);
  if (std::abs(det) < 1e-15) return false;
  const double l1 = ((b.y - c.y) * (x - c.x) + (c.x - b.x) * (y - c.y)) / det;
  const double l2 = ((c.y - a.y) * (x - c.x) + (a.x - c.x) * (y - c.y)) / det;
  const double l3 = 1.0 - l1 - l2;
  constexpr double tol = -1e-9;
  if (l1 < tol || l2 < tol || l3 < tol) return false;
  z = l1 * a.z + l2 * b.z + l3 * c.z;
  return true;
}

}  // namespace

void Mesh3D::validate() const {
  const auto n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = vertices[i];
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
      throw InvariantError(name + ": vertex " + std::to_string(i) + " is not finite");
    }
  }
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    for (auto idx : tri) {
      if (idx >= n) throw InvariantError(name + ": triangle " + std::to_string(t) + " index out of range");
    }
    if (triangle_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]) <= kMinTriangleArea) {
      throw InvariantError(name + ": triangle " + std::to_string(t) + " is degenerate");
    }
  }
}

double Mesh3D::surface_area() const {
  double s = 0;
  for (const auto& t : triangles) s += triangle_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
  return s;
}

double Mesh3D::signed_volume() const {
  double v = 0;
  for (const auto& t : triangles) v += dot(vertices[t[0]], cross(vertices[t[1]], vertices[t[2]]));
  return v / 6.0;
}

void Mesh3D::append(const Mesh3D& other) {
  const auto offset = static_cast<std::uint32_t>(vertices.size());
  vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
  for (const auto& t : other.triangles) triangles.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
}

void BuildConfig::validate() const {
  auto range = [](const std::array<double, 2>& r, const char* what) {
    if (!(r[0] <= r[1]) || !std::isfinite(r[0]) || !std::isfinite(r[1])) {
      throw ValidationError(std::string(what) + ": expected min <= max");
    }
    if (r[0] <= 0) throw ValidationError(std::string(what) + ": values must be positive");
  };
  range(building_height_range, "building_height_range");
  range(canopy_height_range, "canopy_height_range");
  if (!(road_width > 0)) throw ValidationError("road_width must be > 0");
  if (!(city_road_width > 0)) throw ValidationError("city_road_width must be > 0");
  if (!(terrain_amplitude >= 0)) throw ValidationError("terrain_amplitude must be >= 0");
  if (!(water_depth >= 0)) throw ValidationError("water_depth must be >= 0");
  if (!(terrain_exponent > 0)) throw ValidationError("terrain_exponent must be > 0");
  if (!(terrain_jitter >= 0 && terrain_jitter < 1)) throw ValidationError("terrain_jitter must be in [0, 1)");
  if (!(grid_spacing > 0)) throw ValidationError("grid_spacing must be > 0");
  if (!(tree_density > 0)) throw ValidationError("tree_density must be > 0");
}

Mesh3D build_building(const BuildingFootprint& fp, double scale, const BuildConfig& cfg, Rng& rng) {
  Mesh3D m;
  m.category = Category::building;
  m.color = default_color(Category::building);
  std::vector<Vec2> base = to_world_ring(fp.corners, scale);
  if (geom::signed_area(base) < 0) std::reverse(base.begin(), base.end());
  const double h = cfg.building_height_range[0] == cfg.building_height_range[1]
                       ? cfg.building_height_range[0]
                       : rng.uniform(cfg.building_height_range[0], cfg.building_height_range[1]);
  for (auto p : base) m.vertices.push_back({p.x, p.y, 0.0});
  for (auto p : base) m.vertices.push_back({p.x, p.y, h});
  m.triangles = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}};
  for (std::uint32_t i = 0; i < 4; ++i) {
    const std::uint32_t j = (i + 1) % 4;
    m.triangles.push_back({i, j, 4 + j});
    m.triangles.push_back({i, 4 + j, 4 + i});
  }
  return m;
}

Mesh3D build_pavement(const RegionOutline& region, double scale, std::size_t region_index) {
  Mesh3D m;
  m.category = Category::pavement;
  m.color = default_color(Category::pavement);
  const auto ring = world_outline(region, scale);
  if (ring.size() < 3 || !geom::is_simple(ring)) {
    throw ValidationError("pavement region " + std::to_string(region_index) + ": outline self-intersects");
  }
  for (auto p : ring) m.vertices.push_back({p.x, p.y, kPavementZ});
  for (const auto& t : geom::ear_clip(ring)) add_up_triangle(m, t[0], t[1], t[2]);
  return m;
}

TerrainField build_terrain(const RegionOutline& region, int sign, double scale, const BuildConfig& cfg,
                           Rng& rng) {
  TerrainField f;
  f.sign = sign >= 0 ? 1 : -1;
  f.mesh.category = f.sign > 0 ? Category::green_space : Category::water;
  f.mesh.color = default_color(f.mesh.category);
  const auto outline = world_outline(region, scale);
  if (outline.size() < 3) return f;

  const double spacing = cfg.grid_spacing;
  // Boundary no coarser than the grid, so Delaunay edges follow the outline.
  std::vector<Vec2> points;
  for (std::size_t i = 0; i < outline.size(); ++i) {
    const Vec2 a = outline[i], b = outline[(i + 1) % outline.size()];
    const int pieces = std::max(1, static_cast<int>(std::ceil(distance(a, b) / spacing)));
    for (int k = 0; k < pieces; ++k) points.push_back(a + (b - a) * (static_cast<double>(k) / pieces));
  }
  const std::size_t boundary_count = points.size();

  double minx = outline[0].x, maxx = minx, miny = outline[0].y, maxy = miny;
  for (auto p : outline) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double dy = spacing * std::sqrt(3.0) / 2.0;
  for (int row = 0;; ++row) {
    const double y = miny + dy * row;
    if (y > maxy) break;
    for (double x = minx + (row % 2 ? spacing / 2 : 0.0); x <= maxx; x += spacing) {
      const Vec2 p{x, y};
      if (geom::point_in_polygon(p, outline) && geom::distance_to_ring(p, outline) >= 0.5 * spacing) {
        points.push_back(p);
      }
    }
  }

  std::vector<geom::Tri> tris;
  const bool flat = points.size() == boundary_count;
  if (flat) {
    // Nothing inside: flat fan over the outline itself.
    points.assign(outline.begin(), outline.end());
    tris = geom::ear_clip(points);
  } else {
    for (const auto& t : geom::delaunay(points)) {
      const Vec2 c = (points[t[0]] + points[t[1]] + points[t[2]]) * (1.0 / 3.0);
      if (geom::point_in_polygon(c, outline)) tris.push_back(t);
    }
  }

  // Compact to the vertices actually referenced, keeping input order.
  std::vector<std::int64_t> remap(points.size(), -1);
  for (const auto& t : tris) {
    for (auto i : t) remap[i] = 0;
  }
  std::vector<Vec2> used;
  std::vector<bool> on_boundary;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (remap[i] < 0) continue;
    remap[i] = static_cast<std::int64_t>(used.size());
    used.push_back(points[i]);
    on_boundary.push_back(flat || i < boundary_count);
  }

  f.vertex_distance.resize(used.size());
  kernels::omp::distance_to_ring(used, outline, f.vertex_distance);
  double dmax = 0;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (on_boundary[i]) f.vertex_distance[i] = 0.0;
    dmax = std::max(dmax, f.vertex_distance[i]);
  }
  const double amplitude = f.sign > 0 ? cfg.terrain_amplitude : cfg.water_depth;
  for (std::size_t i = 0; i < used.size(); ++i) {
    const double u = rng.uniform(-1.0, 1.0);
    double z = 0.0;
    if (!on_boundary[i] && dmax > 0) {
      z = f.sign * amplitude * std::pow(f.vertex_distance[i] / dmax, cfg.terrain_exponent) *
          (1.0 + cfg.terrain_jitter * u);
    }
    if (on_boundary[i]) f.boundary_vertices.push_back(static_cast<std::uint32_t>(i));
    f.mesh.vertices.push_back({used[i].x, used[i].y, z});
  }
  for (const auto& t : tris) {
    add_up_triangle(f.mesh, static_cast<std::uint32_t>(remap[t[0]]), static_cast<std::uint32_t>(remap[t[1]]),
                    static_cast<std::uint32_t>(remap[t[2]]));
  }
  return f;
}

double terrain_height_at(std::span<const TerrainField> terrain, double x, double y) {
  for (const auto& f : terrain) {
    const auto& m = f.mesh;
    for (const auto& t : m.triangles) {
      double z;
      if (barycentric_z(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]], x, y, z)) return z;
    }
  }
  return 0.0;
}

Mesh3D build_road(const Centerline& cl, double scale, const BuildConfig& cfg,
                  std::span<const TerrainField> terrain) {
  Mesh3D m;
  m.category = cl.category;
  m.color = default_color(cl.category);
  const double half = 0.5 * (cl.category == Category::city_road ? cfg.city_road_width : cfg.road_width);

  for (std::size_t pi = 0; pi < cl.paths.size(); ++pi) {
    std::vector<Vec2> pts;
    for (auto p : to_world_ring(cl.paths[pi], scale)) {
      if (pts.empty() || distance(pts.back(), p) > 1e-9) pts.push_back(p);
    }
    if (pts.size() < 2) {
      std::fprintf(stderr, "warning: %s path %zu has fewer than 2 distinct points, skipped\n",
                   std::string(to_string(cl.category)).c_str(), pi);
      continue;
    }
    auto z_at = [&](Vec2 p) { return kRoadZ + (cfg.drape ? terrain_height_at(terrain, p.x, p.y) : 0.0); };
    auto vertex = [&](Vec2 p) { return push(m, {p.x, p.y, z_at(p)}); };
    auto unit_normal = [](Vec2 a, Vec2 b) {
      const Vec2 d = (b - a) * (1.0 / distance(a, b));
      return Vec2{-d.y, d.x};
    };

    std::uint32_t prev_l = 0, prev_r = 0;
    bool have_prev = false;
    auto emit_pair = [&](Vec2 l, Vec2 r, bool connect) {
      const auto il = vertex(l), ir = vertex(r);
      if (have_prev && connect) {
        add_up_triangle(m, prev_r, ir, il);
        add_up_triangle(m, prev_r, il, prev_l);
      }
      prev_l = il;
      prev_r = ir;
      have_prev = true;
    };

    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 p = pts[i];
      if (i == 0 || i == n - 1) {
        const Vec2 nrm = i == 0 ? unit_normal(pts[0], pts[1]) : unit_normal(pts[n - 2], pts[n - 1]);
        emit_pair(p + nrm * half, p - nrm * half, true);
        continue;
      }
      const Vec2 n0 = unit_normal(pts[i - 1], p), n1 = unit_normal(p, pts[i + 1]);
      const Vec2 sum = n0 + n1;
      const double len = norm(sum);
      const double cos_half = len > 1e-12 ? dot(sum * (1.0 / len), n0) : 0.0;
      if (cos_half > 1.0 / kMiterLimit) {
        const Vec2 miter = sum * (1.0 / len) * (half / cos_half);
        emit_pair(p + miter, p - miter, true);
        continue;
      }
      // Bevel: end the incoming segment square, fill the outer wedge, restart.
      emit_pair(p + n0 * half, p - n0 * half, true);
      const auto a_l = prev_l, a_r = prev_r;
      const auto centre = vertex(p);
      emit_pair(p + n1 * half, p - n1 * half, false);
      if (cross(pts[i] - pts[i - 1], pts[i + 1] - pts[i]) > 0) {
        add_up_triangle(m, centre, a_r, prev_r);
      } else {
        add_up_triangle(m, centre, a_l, prev_l);
      }
    }
  }
  return m;
}

std::size_t cluster_tree_count(double area_m2, double density) {
  const double n = std::round(area_m2 * density);
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

std::vector<Vec2> sample_interior_points(std::span<const Vec2> polygon, std::size_t count, Rng& rng) {
  std::vector<Vec2> out;
  if (count == 0) return out;
  const Vec2 fallback = geom::centroid_of(polygon);
  if (polygon.size() < 3 || std::abs(geom::signed_area(polygon)) < 1e-12) {
    out.assign(count, fallback);
    return out;
  }
  double minx = polygon[0].x, maxx = minx, miny = polygon[0].y, maxy = miny;
  for (auto p : polygon) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  double spacing = kTreeSpacing;
  int failures = 0;
  std::size_t attempts = 0;
  const std::size_t max_attempts = 200000 + 1000 * count;
  while (out.size() < count && attempts++ < max_attempts) {
    const Vec2 p{rng.uniform(minx, maxx), rng.uniform(miny, maxy)};
    bool ok = geom::point_in_polygon(p, polygon);
    for (std::size_t i = 0; ok && i < out.size(); ++i) ok = distance(out[i], p) >= spacing;
    if (ok) {
      out.push_back(p);
      failures = 0;
    } else if (++failures >= kMaxPlacementFailures) {
      spacing *= 0.5;
      failures = 0;
    }
  }
  while (out.size() < count) out.push_back(fallback);
  return out;
}

Mesh3D make_tree(Vec3 base, double canopy_radius) {
  Mesh3D m;
  m.category = Category::plant;
  m.color = default_color(Category::plant);
  constexpr double pi = 3.14159265358979323846;
  for (int level = 0; level < 2; ++level) {
    for (int k = 0; k < kTrunkSides; ++k) {
      const double a = 2 * pi * k / kTrunkSides;
      m.vertices.push_back({base.x + kTrunkRadius * std::cos(a), base.y + kTrunkRadius * std::sin(a),
                            base.z + level * kTrunkHeight});
    }
  }
  const auto bottom = push(m, base);
  const auto top = push(m, {base.x, base.y, base.z + kTrunkHeight});
  for (std::uint32_t k = 0; k < kTrunkSides; ++k) {
    const std::uint32_t j = (k + 1) % kTrunkSides;
    m.triangles.push_back({k, j, kTrunkSides + j});
    m.triangles.push_back({k, kTrunkSides + j, kTrunkSides + k});
    m.triangles.push_back({bottom, j, k});
    m.triangles.push_back({top, kTrunkSides + k, kTrunkSides + j});
  }
  const Vec3 centre{base.x, base.y, base.z + kTrunkHeight + canopy_radius};
  Mesh3D canopy = unit_icosphere();
  for (auto& v : canopy.vertices) v = centre + v * canopy_radius;
  m.append(canopy);
  return m;
}

std::vector<Mesh3D> build_plantings(const PlantingPlan& plan, double scale, const BuildConfig& cfg,
                                    std::uint64_t seed) {
  std::vector<Mesh3D> trees;
  for (const auto& s : plan.singles) {
    trees.push_back(make_tree(to_world(s.center, scale), std::max(s.radius * scale, 1e-3)));
  }
  for (std::size_t ci = 0; ci < plan.clusters.size(); ++ci) {
    const auto& c = plan.clusters[ci];
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(Category::plant), ci);
    const auto outline = to_world_ring(c.outline, scale);
    const double area = outline.size() >= 3 ? std::abs(geom::signed_area(outline)) : 0.0;
    auto sites = sample_interior_points(outline, cluster_tree_count(area, cfg.tree_density), rng);
    for (auto p : to_world_ring(c.points, scale)) sites.push_back(p);
    for (auto p : sites) {
      const double h = rng.uniform(cfg.canopy_height_range[0], cfg.canopy_height_range[1]);
      trees.push_back(make_tree({p.x, p.y, 0.0}, 0.5 * h));
    }
  }
  return trees;
}

Scene3D assemble_scene3d(const VectorScene& scene, const BuildConfig& cfg) {
  cfg.validate();
  Scene3D out;
  const double s = scene.scale;
  auto stream = [&](Category c, std::size_t i) {
    return Rng::substream(cfg.seed, static_cast<std::uint64_t>(c), i);
  };

  for (std::size_t i = 0; i < scene.buildings.size(); ++i) {
    Rng rng = stream(Category::building, i);
    out.meshes.push_back(build_building(scene.buildings[i], s, cfg, rng));
  }
  for (std::size_t i = 0; i < scene.regions.size(); ++i) {
    if (scene.regions[i].category == Category::pavement) out.meshes.push_back(build_pavement(scene.regions[i], s, i));
  }
  for (Category c : {Category::green_space, Category::water}) {
    std::size_t k = 0;
    for (const auto& r : scene.regions) {
      if (r.category != c) continue;
      Rng rng = stream(c, k++);
      auto field = build_terrain(r, c == Category::water ? -1 : 1, s, cfg, rng);
      if (field.mesh.triangles.empty()) continue;
      out.meshes.push_back(field.mesh);
      out.terrains.push_back(std::move(field));
    }
  }
  for (Category c : {Category::road, Category::city_road}) {
    for (const auto& cl : scene.centerlines) {
      if (cl.category != c) continue;
      auto road = build_road(cl, s, cfg, out.terrains);
      if (!road.triangles.empty()) out.meshes.push_back(std::move(road));
    }
  }
  for (auto& tree : build_plantings(scene.plantings, s, cfg, cfg.seed)) out.meshes.push_back(std::move(tree));

  std::map<Category, std::size_t> counters;
  for (auto& m : out.meshes) {
    m.name = std::string(to_string(m.category)) + "_" + std::to_string(counters[m.category]++);
    m.validate();
  }
  std::map<Category, std::size_t> tcount;
  for (auto& f : out.terrains) {
    f.mesh.name = std::string(to_string(f.mesh.category)) + "_" + std::to_string(tcount[f.mesh.category]++);
  }
  return out;
}

}  // namespace parkforge
