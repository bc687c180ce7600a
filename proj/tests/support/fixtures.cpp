#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "oracles.hpp"

namespace fixtures {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool inside(const std::vector<Vec2>& poly, double x, double y) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y > y) != (b.y > y) && x < (b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

template <typename Pred, typename Paint>
void paint_where(int w, int h, Pred&& pred, Paint&& paint) {
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (pred(x + 0.5, y + 0.5)) paint(x, y);
    }
  }
}

}  // namespace

void fill_polygon(RasterPlan& plan, const std::vector<Vec2>& poly, Rgb c) {
  paint_where(plan.width, plan.height, [&](double x, double y) { return inside(poly, x, y); },
              [&](int x, int y) { plan.set(x, y, c); });
}

void fill_disc(RasterPlan& plan, Vec2 o, double r, Rgb c) {
  paint_where(plan.width, plan.height, [&](double x, double y) { return std::hypot(x - o.x, y - o.y) <= r; },
              [&](int x, int y) { plan.set(x, y, c); });
}

void fill_stroke(RasterPlan& plan, const std::vector<Vec2>& path, double width, Rgb c) {
  paint_where(plan.width, plan.height,
              [&](double x, double y) { return oracle::polyline_distance({x, y}, path, false) <= width / 2; },
              [&](int x, int y) { plan.set(x, y, c); });
}

void fill_polygon(CategoryMask& m, const std::vector<Vec2>& poly) {
  paint_where(m.width, m.height, [&](double x, double y) { return inside(poly, x, y); },
              [&](int x, int y) { m.set(x, y, true); });
}

void fill_disc(CategoryMask& m, Vec2 o, double r) {
  paint_where(m.width, m.height, [&](double x, double y) { return std::hypot(x - o.x, y - o.y) <= r; },
              [&](int x, int y) { m.set(x, y, true); });
}

void fill_stroke(CategoryMask& m, const std::vector<Vec2>& path, double width) {
  paint_where(m.width, m.height,
              [&](double x, double y) { return oracle::polyline_distance({x, y}, path, false) <= width / 2; },
              [&](int x, int y) { m.set(x, y, true); });
}

void fill_rect(CategoryMask& m, int x0, int y0, int x1, int y1) {
  for (int y = std::max(0, y0); y < std::min(m.height, y1); ++y) {
    for (int x = std::max(0, x0); x < std::min(m.width, x1); ++x) m.set(x, y, true);
  }
}

std::vector<Vec2> blob(Vec2 c, double rx, double ry, double wobble, int lobes, double phase, int n) {
  std::vector<Vec2> out;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * i / n;
    const double s = 1 + wobble * std::sin(lobes * t + phase);
    out.push_back({c.x + rx * s * std::cos(t), c.y + ry * s * std::sin(t)});
  }
  return out;
}

std::vector<Vec2> star_polygon(std::mt19937_64& gen, Vec2 c, double rmin, double rmax, int n) {
  std::uniform_real_distribution<double> rad(rmin, rmax), jit(-0.3, 0.3);
  std::vector<Vec2> out;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * (i + jit(gen)) / n;
    const double r = rad(gen);
    out.push_back({c.x + r * std::cos(t), c.y + r * std::sin(t)});
  }
  return out;
}

std::vector<Vec2> rotated_rect(Vec2 c, double w, double h, double degrees) {
  const double a = degrees * kPi / 180, ca = std::cos(a), sa = std::sin(a);
  std::vector<Vec2> out;
  for (auto [u, v] : {std::pair{-w / 2, -h / 2}, {w / 2, -h / 2}, {w / 2, h / 2}, {-w / 2, h / 2}}) {
    out.push_back({c.x + u * ca - v * sa, c.y + u * sa + v * ca});
  }
  return out;
}

RoundTripPlan round_trip_plan() {
  RoundTripPlan f;
  f.plan = RasterPlan::filled(256, 256, kWhite);
  f.building = {Vec2{30, 20}, Vec2{90, 20}, Vec2{90, 60}, Vec2{30, 60}};
  f.lake = blob({175, 55}, 50, 32, 0.08, 3, 0.4);
  f.pavement = blob({70, 185}, 38, 30, 0.1, 2, 1.1);
  f.road = {{8, 112}, {128, 112}, {248, 150}};
  f.trees = {{150.5, 180.5}, {175.5, 195.5}, {200.5, 178.5}, {226.5, 196.5}, {190.5, 226.5}};

  fill_polygon(f.plan, f.pavement, color(Category::pavement));
  fill_polygon(f.plan, f.lake, color(Category::water));
  fill_stroke(f.plan, f.road, f.road_width, color(Category::road));
  fill_polygon(f.plan, {f.building.begin(), f.building.end()}, color(Category::building));
  for (auto t : f.trees) fill_disc(f.plan, t, f.tree_radius, color(Category::plant));
  return f;
}

RasterPlan full_plan() {
  RasterPlan p = RasterPlan::filled(256, 256, kWhite);
  // Site boundary band.
  for (int y = 0; y < 256; ++y) {
    for (int x = 0; x < 256; ++x) {
      if (x < 3 || y < 3 || x >= 253 || y >= 253) p.set(x, y, color(Category::red_line));
    }
  }
  fill_stroke(p, {{3, 240}, {253, 240}}, 9, color(Category::city_road));
  fill_polygon(p, blob({70, 80}, 50, 40, 0.1, 3, 0.0), color(Category::green_space));
  fill_polygon(p, blob({185, 70}, 45, 35, 0.08, 2, 0.7), color(Category::water));
  fill_polygon(p, blob({185, 170}, 35, 25, 0.1, 3, 0.3), color(Category::pavement));
  fill_stroke(p, {{10, 140}, {120, 140}, {150, 110}, {245, 120}}, 3, color(Category::road));
  const Rgb bld = color(Category::building);
  fill_polygon(p, {{20, 160}, {45, 160}, {45, 180}, {20, 180}}, bld);
  fill_polygon(p, {{55, 160}, {75, 160}, {75, 185}, {55, 185}}, bld);
  fill_polygon(p, {{85, 160}, {110, 160}, {110, 178}, {85, 178}}, bld);
  fill_polygon(p, rotated_rect({35, 210}, 26, 14, 30), bld);
  fill_polygon(p, rotated_rect({80, 212}, 22, 16, -20), bld);
  fill_polygon(p, {{110, 195}, {135, 195}, {135, 222}, {110, 222}}, bld);
  // A cluster of overlapping crowns and three single trees.
  const Rgb plant = color(Category::plant);
  for (Vec2 c : {Vec2{140, 160}, Vec2{148, 166}, Vec2{136, 170}, Vec2{145, 175}}) fill_disc(p, c, 5, plant);
  for (Vec2 c : {Vec2{225.5, 200.5}, Vec2{235.5, 215.5}, Vec2{215.5, 222.5}}) fill_disc(p, c, 3, plant);
  return p;
}

CategoryMask grid_to_mask(const std::vector<std::vector<int>>& g) {
  auto m = CategoryMask::empty(Category::road, static_cast<int>(g[0].size()), static_cast<int>(g.size()));
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) m.set(x, y, g[y][x] != 0);
  }
  return m;
}

std::vector<std::vector<int>> mask_to_grid(const CategoryMask& m) {
  std::vector<std::vector<int>> g(m.height, std::vector<int>(m.width, 0));
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) g[y][x] = m.at(x, y) ? 1 : 0;
  }
  return g;
}

}  // namespace fixtures
