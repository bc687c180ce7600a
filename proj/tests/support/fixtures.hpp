#pragma once

// Synthetic plans and shapes with known ground truth.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "parkforge/segmentation.hpp"
#include "parkforge/types.hpp"
#include "parkforge/vector_extract.hpp"

namespace fixtures {

using parkforge::Category;
using parkforge::CategoryMask;
using parkforge::RasterPlan;
using parkforge::Rgb;
using parkforge::Vec2;

inline const Rgb kWhite{255, 255, 255};

inline Rgb color(Category c) { return parkforge::default_color(c); }

// All fills test pixel centres (x + 0.5, y + 0.5).
void fill_polygon(RasterPlan& plan, const std::vector<Vec2>& poly, Rgb c);
void fill_disc(RasterPlan& plan, Vec2 center, double radius, Rgb c);
void fill_stroke(RasterPlan& plan, const std::vector<Vec2>& path, double width, Rgb c);

void fill_polygon(CategoryMask& mask, const std::vector<Vec2>& poly);
void fill_disc(CategoryMask& mask, Vec2 center, double radius);
void fill_stroke(CategoryMask& mask, const std::vector<Vec2>& path, double width);
void fill_rect(CategoryMask& mask, int x0, int y0, int x1, int y1);  // [x0,x1) x [y0,y1)

/// Smooth closed curve r(t) = r0 * (1 + a sin(k t + phase)) scaled per axis.
std::vector<Vec2> blob(Vec2 center, double rx, double ry, double wobble, int lobes, double phase, int n = 180);

/// Random star-shaped (hence simple) polygon.
std::vector<Vec2> star_polygon(std::mt19937_64& gen, Vec2 center, double rmin, double rmax, int n);

std::vector<Vec2> rotated_rect(Vec2 center, double w, double h, double degrees);

struct RoundTripPlan {
  RasterPlan plan;
  std::array<Vec2, 4> building;  // exact footprint corners
  std::vector<Vec2> lake;
  std::vector<Vec2> pavement;
  std::vector<Vec2> road;  // centre polyline
  double road_width = 3;
  std::vector<Vec2> trees;  // disc centres
  double tree_radius = 3;
};

/// 256x256 plan: one building, one lake, a 3-px road, 5 trees, one pavement.
RoundTripPlan round_trip_plan();

/// 256x256 plan with every category, including 6 buildings (two rotated)
/// and a plant cluster.
RasterPlan full_plan();

CategoryMask grid_to_mask(const std::vector<std::vector<int>>& g);
std::vector<std::vector<int>> mask_to_grid(const CategoryMask& m);

}  // namespace fixtures
