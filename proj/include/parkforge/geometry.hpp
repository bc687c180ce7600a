#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "parkforge/types.hpp"

namespace parkforge::geom {

using Ring = std::vector<Vec2>;
using Tri = std::array<std::uint32_t, 3>;

/// Shoelace area; positive when the vertices run counter-clockwise in a
/// y-up frame.
double signed_area(std::span<const Vec2> ring);
double perimeter(std::span<const Vec2> ring);
double polyline_length(std::span<const Vec2> path);
Vec2 centroid_of(std::span<const Vec2> points);

/// Even-odd point-in-polygon test.
bool point_in_polygon(Vec2 p, std::span<const Vec2> ring);
double distance_to_ring(Vec2 p, std::span<const Vec2> ring);

/// True when no two non-adjacent edges touch and no edge is zero-length.
bool is_simple(std::span<const Vec2> ring);

/// Drops consecutive duplicates (including the wrap-around pair) and
/// vertices collinear with their neighbours.
Ring clean_ring(std::span<const Vec2> ring, double tolerance = 1e-9);

/// Andrew's monotone chain; counter-clockwise (y-up sense), no collinear points.
Ring convex_hull(std::span<const Vec2> points);

struct RotatedRect {
  std::array<Vec2, 4> corners;  // consecutive corners
  double area = 0;
  double angle_deg = 0;         // direction of the first side, in [0, 90)
};

/// Minimum-area enclosing rectangle by rotating calipers over the convex hull.
/// Throws ValidationError when the points are collinear or fewer than 3.
RotatedRect min_area_rect(std::span<const Vec2> points);

struct Circle {
  Vec2 center;
  double radius = -1;
  bool contains(Vec2 p, double slack = 1e-9) const { return distance(center, p) <= radius + slack; }
};

/// Smallest enclosing circle, Welzl's incremental form (no shuffling, so the
/// result depends only on the input). Empty input gives radius -1.
Circle min_enclosing_circle(std::span<const Vec2> points);

/// Ramer-Douglas-Peucker on an open chain; returns kept indices (ascending,
/// always including both ends). Distances are point-to-segment.
std::vector<std::size_t> rdp_open(std::span<const Vec2> chain, double epsilon);

/// RDP on a closed ring split at vertex 0 and the vertex farthest from it.
std::vector<std::size_t> rdp_closed(std::span<const Vec2> ring, double epsilon);

/// Closed quadratic B-spline: on-curve points at edge midpoints, the ring
/// vertices act as control points. Returns a dense flattened polyline.
Ring quadratic_bspline_closed(std::span<const Vec2> control, int pieces_per_span = 16);

/// Samples a closed polyline every `step` of arc length starting at vertex 0.
Ring resample_closed(std::span<const Vec2> ring, double step);

/// Ear-clipping triangulation of a simple polygon (either orientation).
/// Returned triangles index into `ring` and are counter-clockwise (y-up).
std::vector<Tri> ear_clip(std::span<const Vec2> ring);

/// Bowyer-Watson Delaunay triangulation; counter-clockwise triangles.
std::vector<Tri> delaunay(std::span<const Vec2> points);

}  // namespace parkforge::geom
