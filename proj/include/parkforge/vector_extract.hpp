#pragma once

#include <array>
#include <vector>

#include "parkforge/geometry.hpp"
#include "parkforge/types.hpp"

namespace parkforge {

// Vector coordinates are in pixel units with y pointing down. Pixel (i, j)
// covers [i, i+1) x [j, j+1); traced points sit at pixel centres (i+0.5, j+0.5).

/// Outer boundary ring of one 8-connected foreground component.
/// Rings run counter-clockwise as displayed (negative shoelace area in raw
/// pixel coordinates). Components of one or two pixels yield rings of that
/// many points.
struct Contour {
  std::vector<Vec2> points;
  std::size_t pixel_area = 0;  // foreground pixels in the component
};

struct BuildingFootprint {
  std::array<Vec2, 4> corners;
  bool rotated = false;
};

struct RegionOutline {
  Category category = Category::green_space;
  std::vector<Vec2> polygon;
  std::vector<Vec2> smooth_samples;
  double area_px = 0;
};

struct Centerline {
  Category category = Category::road;
  std::vector<std::vector<Vec2>> paths;
};

struct SinglePlant {
  Vec2 center;
  double radius = 0;
};

struct PlantCluster {
  std::vector<Vec2> outline;
  std::vector<Vec2> points;
};

struct PlantingPlan {
  std::vector<SinglePlant> singles;
  std::vector<PlantCluster> clusters;
};

struct VectorScene {
  int width = 0;
  int height = 0;
  double scale = 1.0;
  std::vector<BuildingFootprint> buildings;
  std::vector<RegionOutline> regions;
  std::vector<Centerline> centerlines;
  PlantingPlan plantings;
};

struct ExtractionParams {
  double min_area = 50;           // px^2, regions below are dropped
  double epsilon = 2;             // px, polygon simplification tolerance
  double sample_step = 4;         // px, arc-length spacing of smooth samples
  double blur_sigma = 1.0;        // px, pre-thinning blur for linear elements
  double prune_len = 10;          // px, shorter skeleton paths are dropped
  int stride = 3;                 // keep every stride-th skeleton point
  double planting_interval = 10;  // px, spacing of cluster planting points
  int morph_kernel = 3;           // px, opening/closing window for regions
  double building_min_area = 9;   // px^2, smaller building blobs are noise
};

/// Pixel area below which a plant contour is a single tree.
inline constexpr std::size_t kSinglePlantMaxArea = 30;

std::vector<Contour> trace_contours(const CategoryMask& mask);

/// Square-window opening then closing (or closing then opening).
CategoryMask morphological_clean(const CategoryMask& mask, int kernel, bool open_then_close = true);

/// Rectangle fit for a building contour. If the minimum-area rectangle is
/// within 1 degree of the axes the axis-aligned bounding box is returned.
/// `pixel_pad` grows the rectangle outward on every side (0.5 turns pixel
/// centres into pixel footprints).
BuildingFootprint fit_building(const Contour& contour, double pixel_pad = 0.0);

/// Outlines follow pixel edges: traced centres are moved 0.5 px outward
/// before simplification.
std::vector<RegionOutline> extract_regions(const CategoryMask& mask, Category category,
                                           double min_area, double epsilon, double sample_step,
                                           int morph_kernel = 3);

/// Gaussian blur, threshold at 128, Zhang-Suen thinning, split into paths at
/// endpoints and junctions, prune short paths, keep every stride-th point.
/// Free path ends are extended to the end of the stroke, since thinning
/// shortens them.
Centerline extract_centerlines(const CategoryMask& mask, Category category, double blur_sigma,
                               double prune_len, int stride);

PlantingPlan extract_plantings(const CategoryMask& mask, double interval);

/// Skeleton of a mask: blur, binarize at 128 and thin. Exposed for tests.
CategoryMask skeletonize(const CategoryMask& mask, double blur_sigma);

/// Splits a 1-px skeleton into maximal paths between endpoints/junctions.
std::vector<std::vector<Vec2>> skeleton_paths(const CategoryMask& skeleton);

/// Runs the per-category extractors and merges them into one scene.
/// `masks` must contain each category at most once, all with equal sizes.
VectorScene assemble_scene(const std::vector<CategoryMask>& masks, const ExtractionParams& params,
                           double scale);

}  // namespace parkforge
