#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numeric>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "parkforge/errors.hpp"
#include "parkforge/png_io.hpp"
#include "parkforge/terrain_analysis.hpp"

using namespace parkforge;
namespace fs = std::filesystem;

namespace {

TerrainField grid_field(int n, double step, double (*height)(double, double)) {
  TerrainField f;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) f.mesh.vertices.push_back({i * step, j * step, height(i * step, j * step)});
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::uint32_t a = j * (n + 1) + i, b = a + 1, d = a + n + 1, e = d + 1;
      f.mesh.triangles.push_back({a, b, e});
      f.mesh.triangles.push_back({a, e, d});
    }
  }
  return f;
}

RegionOutline disc_region(double r, Category c) {
  RegionOutline out;
  out.category = c;
  for (int i = 0; i < 96; ++i) out.polygon.push_back({60 + r * std::cos(2 * M_PI * i / 96), 60 + r * std::sin(2 * M_PI * i / 96)});
  out.smooth_samples = out.polygon;
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path tmp(const std::string& name) {
  const fs::path dir = fs::path(PARKFORGE_TMP) / "analysis";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(SlopeBin, LowerInclusiveEdges) {
  EXPECT_EQ(slope_bin(0), 0);
  EXPECT_EQ(slope_bin(4.999), 0);
  EXPECT_EQ(slope_bin(5), 1);
  EXPECT_EQ(slope_bin(5 - 1e-12), 1);  // snapped
  EXPECT_EQ(slope_bin(19), 2);
  EXPECT_EQ(slope_bin(45), 3);
  EXPECT_EQ(slope_bin(65), 4);
  EXPECT_EQ(slope_bin(90), 4);
}

TEST(Elevation, FlatTerrainPinnedToMid) {
  const std::vector<TerrainField> f{grid_field(4, 1, [](double, double) { return 0.0; })};
  const auto o = elevation_overlay(f);
  for (double v : o.per_face) EXPECT_EQ(v, 0.0);
  for (int b : o.bin) EXPECT_EQ(b, 1);
  ASSERT_EQ(o.legend.size(), 3u);
  for (const auto& c : o.face_color) EXPECT_EQ(c, o.face_color[0]);
}

TEST(Elevation, ConeMaxFaceHoldsPeakVertex) {
  BuildConfig cfg;
  Rng rng(3);
  const std::vector<TerrainField> f{build_terrain(disc_region(25, Category::green_space), 1, 1.0, cfg, rng)};
  const auto o = elevation_overlay(f);
  const auto top = std::max_element(o.per_face.begin(), o.per_face.end()) - o.per_face.begin();
  std::uint32_t peak = 0;
  for (std::uint32_t i = 0; i < f[0].mesh.vertices.size(); ++i)
    if (f[0].vertex_distance[i] > f[0].vertex_distance[peak]) peak = i;
  const auto& t = o.triangles[top];
  EXPECT_TRUE(t[0] == peak || t[1] == peak || t[2] == peak);
}

TEST(Elevation, GreenAndWaterStraddleZero) {
  BuildConfig cfg;
  Rng a(1), b(2);
  auto water = disc_region(20, Category::water);
  for (auto& p : water.polygon) p.x += 60;
  water.smooth_samples = water.polygon;
  const std::vector<TerrainField> f{build_terrain(disc_region(20, Category::green_space), 1, 1.0, cfg, a),
                                    build_terrain(water, -1, 1.0, cfg, b)};
  const auto o = elevation_overlay(f);
  EXPECT_LT(o.min, 0);
  EXPECT_GT(o.max, 0);
  double vmin = 0, vmax = 0;
  for (const auto& fld : f)
    for (auto v : fld.mesh.vertices) vmin = std::min(vmin, v.z), vmax = std::max(vmax, v.z);
  EXPECT_GE(o.min, vmin);
  EXPECT_LE(o.max, vmax);
}

TEST(Slope, HorizontalAndExactFiveDegrees) {
  Mesh3D m;
  const double t5 = std::tan(5 * M_PI / 180);
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {10, 0, 0}, {11, 0, t5}, {10, 1, 0}};
  m.triangles = {{0, 1, 2}, {3, 4, 5}};
  const auto o = slope_overlay(std::vector<Mesh3D>{m});
  EXPECT_NEAR(o.per_face[0], 0, 1e-12);
  EXPECT_EQ(o.bin[0], 0);
  EXPECT_EQ(o.bin[1], 1);
  EXPECT_EQ(std::accumulate(o.bin_counts.begin(), o.bin_counts.end(), std::size_t{0}), 2u);
}

TEST(Slope, ThirtyDegreeCone) {
  Mesh3D m;
  const double h = 20 * std::tan(30 * M_PI / 180);
  m.vertices.push_back({0, 0, h});
  for (int s = 0; s < 48; ++s) m.vertices.push_back({20 * std::cos(2 * M_PI * s / 48), 20 * std::sin(2 * M_PI * s / 48), 0});
  for (std::uint32_t s = 0; s < 48; ++s) m.triangles.push_back({0, 1 + s, 1 + (s + 1) % 48});
  const auto o = slope_overlay(std::vector<Mesh3D>{m});
  EXPECT_EQ(o.bin_counts[2], 48u);
}

TEST(Drainage, FlatTerrain) {
  const std::vector<TerrainField> f{grid_field(3, 1, [](double, double) { return 0.0; })};
  const auto o = drainage_overlay(f);
  for (auto v : o.flow) EXPECT_EQ(norm(v), 0.0);
  for (double a : o.per_face) EXPECT_EQ(a, 1.0);
}

TEST(Drainage, RampFlowsTowardMinusX) {
  const std::vector<TerrainField> f{grid_field(8, 1.5, [](double x, double y) { return 0.2 * x + 0 * y; })};
  const auto o = drainage_overlay(f);
  for (auto v : o.flow) {
    EXPECT_NEAR(v.x, -1, 1e-6);
    EXPECT_NEAR(v.y, 0, 1e-6);
  }
}

TEST(Drainage, FlowInPlaneAndDownhill) {
  const std::vector<TerrainField> f{grid_field(10, 1, [](double x, double y) { return std::sin(x * 0.6) + 0.3 * y * y / 10; })};
  const auto o = drainage_overlay(f);
  for (std::size_t i = 0; i < o.triangles.size(); ++i) {
    const auto& t = o.triangles[i];
    const Vec3 n = cross(o.vertices[t[1]] - o.vertices[t[0]], o.vertices[t[2]] - o.vertices[t[0]]);
    EXPECT_LE(std::abs(dot(o.flow3d[i], n * (1 / norm(n)))), 1e-6);
    EXPECT_LE(o.flow3d[i].z, 0);
  }
}

TEST(Drainage, BowlMatchesBruteForce) {
  BuildConfig cfg;
  cfg.terrain_jitter = 0;
  Rng rng(1);
  const std::vector<TerrainField> f{build_terrain(disc_region(15, Category::water), -1, 1.0, cfg, rng)};
  const auto o = drainage_overlay(f);
  const auto ref = oracle::route(o.vertices, {o.triangles.begin(), o.triangles.end()});
  EXPECT_EQ(o.receiver, ref.receiver);
  EXPECT_EQ(o.per_face, ref.accumulation);

  std::size_t lowest = 0;
  double lz = 1e300;
  for (std::size_t i = 0; i < o.triangles.size(); ++i) {
    const auto& t = o.triangles[i];
    const double cz = (o.vertices[t[0]].z + o.vertices[t[1]].z + o.vertices[t[2]].z) / 3;
    if (cz < lz) lz = cz, lowest = i;
  }
  EXPECT_EQ(o.per_face[lowest], *std::max_element(o.per_face.begin(), o.per_face.end()));
}

TEST(Render, DeterministicWithSidecar) {
  BuildConfig cfg;
  Rng rng(2);
  const std::vector<TerrainField> f{build_terrain(disc_region(20, Category::green_space), 1, 1.0, cfg, rng)};
  auto o = drainage_overlay(f);
  o.bounds = {30, -100, 100, -20};
  render_overlay(o, tmp("a.png"), 2);
  render_overlay(o, tmp("b.png"), 2);
  EXPECT_EQ(slurp(tmp("a.png")), slurp(tmp("b.png")));
  const auto png = png::read_rgb(tmp("a.png"));
  EXPECT_EQ(png.width, 140);
  EXPECT_EQ(png.height, 160);
  const auto side = nlohmann::json::parse(slurp(tmp("a.json")));
  EXPECT_EQ(side["kind"], "drainage");
  EXPECT_EQ(side["legend"].size(), side["stats"]["bin_counts"].size());
}

TEST(Render, EmptyOverlay) {
  AnalysisOverlay o = slope_overlay(std::vector<Mesh3D>{});
  o.bounds = {0, 0, 10, 5};
  render_overlay(o, tmp("empty.png"), 2);
  const auto png = png::read_rgb(tmp("empty.png"));
  EXPECT_EQ(png.width, 20);
  EXPECT_EQ(png.height, 10);
  for (auto v : png.pixels) EXPECT_EQ(v, 255);
  const auto side = nlohmann::json::parse(slurp(tmp("empty.json")));
  EXPECT_EQ(side["legend"].size(), 5u);
  for (const auto& c : side["stats"]["bin_counts"]) EXPECT_EQ(c, 0);
}

TEST(Render, RejectsBadScale) {
  AnalysisOverlay o;
  o.bounds = {0, 0, 1, 1};
  EXPECT_THROW(render_overlay(o, tmp("bad.png"), 0), ValidationError);
}
