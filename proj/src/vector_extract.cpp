#include "parkforge/vector_extract.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <optional>
#include <set>
#include <string>

#include "parkforge/errors.hpp"
#include "parkforge/kernels.hpp"

namespace parkforge {

namespace {

// Neighbour offsets, clockwise as displayed (y down), starting east.
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

Vec2 pixel_center(int x, int y) { return {x + 0.5, y + 0.5}; }

// Moves each traced point half a pixel outward, from the boundary pixel's
// centre to the pixel edge the region actually ends at. Points whose
// neighbours coincide (one-pixel spurs) stay put.
std::vector<Vec2> to_pixel_edges(const std::vector<Vec2>& ring) {
  const double s = geom::signed_area(ring) > 0 ? 1.0 : -1.0;
  const std::size_t n = ring.size();
  std::vector<Vec2> out(ring);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 t = ring[(i + 1) % n] - ring[(i + n - 1) % n];
    const double len = norm(t);
    if (len < 1e-12) continue;
    out[i] = ring[i] + Vec2{s * t.y, -s * t.x} * (0.5 / len);
  }
  return out;
}

std::vector<Vec2> simplify_simple(const std::vector<Vec2>& ring, double epsilon) {
  for (double eps = epsilon; eps >= 0.25; eps *= 0.5) {
    std::vector<Vec2> candidate;
    for (auto i : geom::rdp_closed(ring, eps)) candidate.push_back(ring[i]);
    if (candidate.size() >= 3 && geom::is_simple(candidate)) return candidate;
  }
  return {};
}

}  // namespace

std::vector<Contour> trace_contours(const CategoryMask& mask) {
  mask.validate();
  const int w = mask.width, h = mask.height;
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  std::vector<std::pair<int, int>> starts;
  std::vector<std::size_t> areas;

  std::deque<std::pair<int, int>> queue;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y) || label[static_cast<std::size_t>(y) * w + x] >= 0) continue;
      const int id = static_cast<int>(starts.size());
      starts.emplace_back(x, y);
      std::size_t area = 0;
      label[static_cast<std::size_t>(y) * w + x] = id;
      queue.emplace_back(x, y);
      while (!queue.empty()) {
        const auto [cx, cy] = queue.front();
        queue.pop_front();
        ++area;
        for (int d = 0; d < 8; ++d) {
          const int nx = cx + kDx[d], ny = cy + kDy[d];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h || !mask.at(nx, ny)) continue;
          auto& l = label[static_cast<std::size_t>(ny) * w + nx];
          if (l >= 0) continue;
          l = id;
          queue.emplace_back(nx, ny);
        }
      }
      areas.push_back(area);
    }
  }

  std::vector<Contour> contours;
  for (std::size_t id = 0; id < starts.size(); ++id) {
    auto fg = [&](int x, int y) {
      return x >= 0 && y >= 0 && x < w && y < h && label[static_cast<std::size_t>(y) * w + x] == static_cast<int>(id);
    };
    const auto [sx, sy] = starts[id];
    Contour c;
    c.pixel_area = areas[id];

    // Border following from the first raster pixel, whose west side is background.
    int first = -1;
    for (int k = 0; k < 8; ++k) {
      const int d = (4 + k) % 8;
      if (fg(sx + kDx[d], sy + kDy[d])) {
        first = d;
        break;
      }
    }
    if (first < 0) {
      c.points.push_back(pixel_center(sx, sy));
      contours.push_back(std::move(c));
      continue;
    }
    const std::pair<int, int> s{sx, sy};
    const std::pair<int, int> i1{sx + kDx[first], sy + kDy[first]};
    std::pair<int, int> p2 = i1, p3 = s;
    for (;;) {
      int back = 0;
      for (int d = 0; d < 8; ++d) {
        if (p3.first + kDx[d] == p2.first && p3.second + kDy[d] == p2.second) back = d;
      }
      std::pair<int, int> p4 = p2;
      for (int k = 1; k <= 8; ++k) {
        const int d = (back - k + 16) % 8;
        if (fg(p3.first + kDx[d], p3.second + kDy[d])) {
          p4 = {p3.first + kDx[d], p3.second + kDy[d]};
          break;
        }
      }
      c.points.push_back(pixel_center(p3.first, p3.second));
      if (p4 == s && p3 == i1) break;
      p2 = p3;
      p3 = p4;
    }
    if (geom::signed_area(c.points) > 0) std::reverse(c.points.begin() + 1, c.points.end());
    contours.push_back(std::move(c));
  }
  return contours;
}

CategoryMask morphological_clean(const CategoryMask& mask, int kernel, bool open_then_close) {
  mask.validate();
  if (kernel < 1 || kernel % 2 == 0) throw ValidationError("morphology kernel must be odd and >= 1");
  if (kernel == 1) return mask;
  CategoryMask out = mask;
  std::vector<std::uint8_t> tmp(mask.bits.size());
  auto open = [&] {
    kernels::omp::erode(out.bits, tmp, mask.width, mask.height, kernel);
    kernels::omp::dilate(tmp, out.bits, mask.width, mask.height, kernel);
  };
  auto close = [&] {
    kernels::omp::dilate(out.bits, tmp, mask.width, mask.height, kernel);
    kernels::omp::erode(tmp, out.bits, mask.width, mask.height, kernel);
  };
  if (open_then_close) {
    open();
    close();
  } else {
    close();
    open();
  }
  return out;
}

BuildingFootprint fit_building(const Contour& contour, double pixel_pad) {
  const auto rect = geom::min_area_rect(contour.points);
  BuildingFootprint fp;
  const double off_axis = std::min(rect.angle_deg, 90.0 - rect.angle_deg);
  if (off_axis <= 1.0) {
    double minx = contour.points[0].x, maxx = minx, miny = contour.points[0].y, maxy = miny;
    for (auto p : contour.points) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
    minx -= pixel_pad;
    miny -= pixel_pad;
    maxx += pixel_pad;
    maxy += pixel_pad;
    fp.corners = {Vec2{minx, miny}, Vec2{maxx, miny}, Vec2{maxx, maxy}, Vec2{minx, maxy}};
    fp.rotated = false;
    return fp;
  }
  fp.corners = rect.corners;
  fp.rotated = true;
  if (pixel_pad != 0) {
    const Vec2 center = geom::centroid_of(fp.corners);
    const Vec2 side_u = fp.corners[1] - fp.corners[0];
    const Vec2 side_v = fp.corners[3] - fp.corners[0];
    const Vec2 u = side_u * (1.0 / norm(side_u));
    const Vec2 v = side_v * (1.0 / norm(side_v));
    for (auto& c : fp.corners) {
      const double su = dot(c - center, u) >= 0 ? 1.0 : -1.0;
      const double sv = dot(c - center, v) >= 0 ? 1.0 : -1.0;
      c = c + u * (su * pixel_pad) + v * (sv * pixel_pad);
    }
  }
  return fp;
}

std::vector<RegionOutline> extract_regions(const CategoryMask& mask, Category category,
                                           double min_area, double epsilon, double sample_step,
                                           int morph_kernel) {
  if (min_area < 0) throw ValidationError("min_area must be >= 0");
  if (!(epsilon > 0)) throw ValidationError("epsilon must be > 0");
  if (!(sample_step >= 1)) throw ValidationError("sample_step must be >= 1");

  const CategoryMask cleaned = morphological_clean(mask, morph_kernel);
  std::vector<RegionOutline> regions;
  for (const auto& contour : trace_contours(cleaned)) {
    if (static_cast<double>(contour.pixel_area) < min_area || contour.points.size() < 3) continue;

    // Coarsen only as far as the outline stays simple. Offsetting can make
    // one-pixel gaps touch; the centre ring is the fallback.
    std::vector<Vec2> polygon = simplify_simple(to_pixel_edges(contour.points), epsilon);
    if (polygon.empty()) polygon = simplify_simple(contour.points, epsilon);
    if (polygon.empty()) {
      std::fprintf(stderr, "warning: skipping non-simple %s outline of %zu px\n",
                   std::string(to_string(category)).c_str(), contour.pixel_area);
      continue;
    }
    RegionOutline r;
    r.category = category;
    r.smooth_samples = geom::resample_closed(geom::quadratic_bspline_closed(polygon), sample_step);
    r.polygon = std::move(polygon);
    r.area_px = static_cast<double>(contour.pixel_area);
    regions.push_back(std::move(r));
  }
  return regions;
}

namespace {

CategoryMask binarize(const CategoryMask& mask, double blur_sigma) {
  mask.validate();
  if (blur_sigma < 0) throw ValidationError("blur_sigma must be >= 0");
  const std::size_t n = mask.bits.size();
  std::vector<float> plane(n), blurred(n);
  for (std::size_t i = 0; i < n; ++i) plane[i] = mask.bits[i];
  kernels::omp::gaussian_blur(plane, blurred, mask.width, mask.height, blur_sigma);
  CategoryMask out = mask;
  for (std::size_t i = 0; i < n; ++i) out.bits[i] = blurred[i] >= 128.0f ? 255 : 0;
  return out;
}

// Thinning eats roughly half the stroke width off every free end. Walk each
// end on along its last few points while the stroke continues.
void extend_free_ends(std::vector<Vec2>& path, const CategoryMask& skeleton, const CategoryMask& stroke) {
  auto inside = [](const CategoryMask& m, Vec2 p) {
    const int x = static_cast<int>(std::floor(p.x)), y = static_cast<int>(std::floor(p.y));
    return x >= 0 && y >= 0 && x < m.width && y < m.height && m.at(x, y);
  };
  auto degree = [&](Vec2 p) {
    const int x = static_cast<int>(std::floor(p.x)), y = static_cast<int>(std::floor(p.y));
    int n = 0;
    for (int d = 0; d < 8; ++d) n += inside(skeleton, {x + kDx[d] + 0.5, y + kDy[d] + 0.5});
    return n;
  };
  auto extended = [&](Vec2 end, Vec2 from) -> std::optional<Vec2> {
    const Vec2 dir = end - from;
    const double len = norm(dir);
    if (len < 1e-9 || degree(end) != 1) return std::nullopt;
    const Vec2 step = dir * (0.5 / len);
    Vec2 p = end;
    while (inside(stroke, p + step)) p = p + step;
    if (distance(p, end) < 1e-9) return std::nullopt;
    return p;
  };
  const std::size_t k = std::min<std::size_t>(5, path.size() - 1);
  const auto tail = extended(path.back(), path[path.size() - 1 - k]);
  const auto head = extended(path.front(), path[k]);
  if (tail) path.push_back(*tail);
  if (head) path.insert(path.begin(), *head);
}

}  // namespace

CategoryMask skeletonize(const CategoryMask& mask, double blur_sigma) {
  CategoryMask skel = binarize(mask, blur_sigma);
  kernels::omp::zhang_suen_thin(skel.bits, skel.width, skel.height);
  return skel;
}

std::vector<std::vector<Vec2>> skeleton_paths(const CategoryMask& skeleton) {
  const int w = skeleton.width, h = skeleton.height;
  auto fg = [&](int x, int y) { return x >= 0 && y >= 0 && x < w && y < h && skeleton.at(x, y); };
  auto index = [w](int x, int y) { return static_cast<long>(y) * w + x; };

  // m-adjacency: a diagonal step only counts when no 4-neighbour path joins
  // the two pixels, so staircase corners do not look like junctions.
  auto neighbours = [&](int x, int y) {
    std::vector<std::pair<int, int>> out;
    for (int d = 0; d < 8; ++d) {
      const int nx = x + kDx[d], ny = y + kDy[d];
      if (!fg(nx, ny)) continue;
      if (kDx[d] != 0 && kDy[d] != 0 && (fg(x + kDx[d], y) || fg(x, y + kDy[d]))) continue;
      out.emplace_back(nx, ny);
    }
    return out;
  };

  std::set<std::pair<long, long>> walked;
  auto edge_key = [&](std::pair<int, int> a, std::pair<int, int> b) {
    const long ia = index(a.first, a.second), ib = index(b.first, b.second);
    return std::make_pair(std::min(ia, ib), std::max(ia, ib));
  };

  std::vector<std::vector<Vec2>> paths;
  auto walk = [&](std::pair<int, int> start, std::pair<int, int> next) {
    std::vector<Vec2> path{pixel_center(start.first, start.second)};
    walked.insert(edge_key(start, next));
    std::pair<int, int> prev = start, cur = next;
    for (;;) {
      path.push_back(pixel_center(cur.first, cur.second));
      if (cur == start) break;
      const auto nb = neighbours(cur.first, cur.second);
      if (nb.size() != 2) break;
      const auto candidate = nb[0] == prev ? nb[1] : nb[0];
      if (walked.count(edge_key(cur, candidate))) break;
      walked.insert(edge_key(cur, candidate));
      prev = cur;
      cur = candidate;
    }
    paths.push_back(std::move(path));
  };

  for (int pass = 0; pass < 2; ++pass) {
    // First pass starts at endpoints and junctions; the second picks up loops.
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!fg(x, y)) continue;
        const auto nb = neighbours(x, y);
        if ((pass == 0) == (nb.size() == 2)) continue;
        for (auto q : nb) {
          if (!walked.count(edge_key({x, y}, q))) walk({x, y}, q);
        }
      }
    }
  }
  return paths;
}

Centerline extract_centerlines(const CategoryMask& mask, Category category, double blur_sigma,
                               double prune_len, int stride) {
  if (prune_len < 0) throw ValidationError("prune_len must be >= 0");
  if (stride < 1) throw ValidationError("stride must be >= 1");
  Centerline cl;
  cl.category = category;
  const CategoryMask stroke = binarize(mask, blur_sigma);
  CategoryMask skeleton = stroke;
  kernels::omp::zhang_suen_thin(skeleton.bits, skeleton.width, skeleton.height);
  for (auto& path : skeleton_paths(skeleton)) {
    if (path.size() < 2 || geom::polyline_length(path) < prune_len) continue;
    extend_free_ends(path, skeleton, stroke);
    std::vector<Vec2> sparse;
    for (std::size_t i = 0; i < path.size(); i += static_cast<std::size_t>(stride)) sparse.push_back(path[i]);
    if ((path.size() - 1) % static_cast<std::size_t>(stride) != 0) sparse.push_back(path.back());
    cl.paths.push_back(std::move(sparse));
  }
  return cl;
}

PlantingPlan extract_plantings(const CategoryMask& mask, double interval) {
  if (!(interval >= 1)) throw ValidationError("planting interval must be >= 1");
  PlantingPlan plan;
  for (auto& contour : trace_contours(mask)) {
    if (contour.pixel_area < kSinglePlantMaxArea) {
      const auto circle = geom::min_enclosing_circle(contour.points);
      plan.singles.push_back({circle.center, std::max(circle.radius, 0.5)});
    } else {
      PlantCluster cluster;
      cluster.points = geom::resample_closed(contour.points, interval);
      cluster.outline = std::move(contour.points);
      plan.clusters.push_back(std::move(cluster));
    }
  }
  return plan;
}

VectorScene assemble_scene(const std::vector<CategoryMask>& masks, const ExtractionParams& params,
                           double scale) {
  if (masks.empty()) throw ValidationError("no masks supplied");
  if (!(scale > 0)) throw ValidationError("scale must be positive");
  VectorScene scene;
  scene.width = masks.front().width;
  scene.height = masks.front().height;
  scene.scale = scale;

  std::array<const CategoryMask*, 8> by_category{};
  for (const auto& m : masks) {
    m.validate();
    if (m.width != scene.width || m.height != scene.height) {
      throw ValidationError("mask '" + std::string(to_string(m.category)) + "' is " +
                            std::to_string(m.width) + "x" + std::to_string(m.height) + ", expected " +
                            std::to_string(scene.width) + "x" + std::to_string(scene.height));
    }
    auto& slot = by_category[static_cast<int>(m.category)];
    if (slot) throw ValidationError("duplicate mask for '" + std::string(to_string(m.category)) + "'");
    slot = &m;
  }

  const double W = scene.width, H = scene.height;
  for (auto category : kAllCategories) {
    const CategoryMask* mask = by_category[static_cast<int>(category)];
    if (!mask) continue;
    switch (category) {
      case Category::building:
        for (const auto& contour : trace_contours(*mask)) {
          if (static_cast<double>(contour.pixel_area) < params.building_min_area) continue;
          if (geom::convex_hull(contour.points).size() < 3) continue;
          auto fp = fit_building(contour, 0.5);
          for (auto& c : fp.corners) c = {std::clamp(c.x, 0.0, W), std::clamp(c.y, 0.0, H)};
          scene.buildings.push_back(fp);
        }
        break;
      case Category::green_space:
      case Category::water:
      case Category::pavement:
      case Category::red_line: {
        // The site boundary is usually a thin line that opening would erase.
        const int kernel = category == Category::red_line ? 1 : params.morph_kernel;
        for (auto& r : extract_regions(*mask, category, params.min_area, params.epsilon, params.sample_step, kernel)) {
          scene.regions.push_back(std::move(r));
        }
        break;
      }
      case Category::road:
      case Category::city_road: {
        auto cl = extract_centerlines(*mask, category, params.blur_sigma, params.prune_len, params.stride);
        if (!cl.paths.empty()) scene.centerlines.push_back(std::move(cl));
        break;
      }
      case Category::plant:
        scene.plantings = extract_plantings(*mask, params.planting_interval);
        break;
    }
  }
  return scene;
}

}  // namespace parkforge
