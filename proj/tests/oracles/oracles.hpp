#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls into the library's geometry or kernels.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "parkforge/types.hpp"

namespace oracle {

using parkforge::Vec2;
using parkforge::Vec3;

/// grid[y][x] in {0,1}.
using Grid = std::vector<std::vector<int>>;

/// Zhang & Suen (1984), written directly from the two subiteration rules.
/// Pixels outside the grid are background.
Grid zhang_suen(Grid img);

int count_components8(const Grid& g);

/// Recursive Ramer-Douglas-Peucker, kept indices ascending.
std::vector<std::size_t> rdp(const std::vector<Vec2>& pts, double eps);

double segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Distance from p to the polyline (closed adds the last-to-first edge).
double polyline_distance(Vec2 p, const std::vector<Vec2>& line, bool closed);

/// Symmetric Hausdorff distance between two polylines, both densified to
/// `step` before measuring.
double hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b, bool closed, double step = 0.05);

double shoelace(const std::vector<Vec2>& ring);

struct Rect {
  std::array<Vec2, 4> corners;
  double area = 0;
};

/// Minimum-area enclosing rectangle by trying the direction of every point
/// pair (a superset of the hull edges) and keeping the smallest box.
Rect min_rect(const std::vector<Vec2>& pts);

/// Every candidate rectangle whose area is within rel_tol of the minimum.
/// The minimum is not unique for some inputs (acute triangles tie on all
/// three edges); callers match against any of these.
std::vector<Rect> min_rects(const std::vector<Vec2>& pts, double rel_tol);

struct Circle {
  Vec2 c;
  double r = 0;
};

/// Smallest circle through every pair (as diameter) and triple that encloses
/// all points. O(n^4); keep inputs small.
Circle min_circle(const std::vector<Vec2>& pts);

/// Steepest-descent routing on a triangle soup, computed the slow way:
/// adjacency by comparing every face pair, accumulation by walking each
/// face's descent chain to its end.
struct Routing {
  std::vector<int> receiver;
  std::vector<double> accumulation;
};
Routing route(const std::vector<Vec3>& vertices, const std::vector<std::array<std::uint32_t, 3>>& tris);

}  // namespace oracle
