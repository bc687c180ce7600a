#include "parkforge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "parkforge/errors.hpp"
#include "parkforge/kernels.hpp"

namespace parkforge::geom {

double signed_area(std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  double a = 0;
  for (std::size_t i = 0; i < n; ++i) a += cross(ring[i], ring[(i + 1) % n]);
  return 0.5 * a;
}

double perimeter(std::span<const Vec2> ring) {
  double p = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) p += distance(ring[i], ring[(i + 1) % ring.size()]);
  return p;
}

double polyline_length(std::span<const Vec2> path) {
  double p = 0;
  for (std::size_t i = 1; i < path.size(); ++i) p += distance(path[i - 1], path[i]);
  return p;
}

Vec2 centroid_of(std::span<const Vec2> points) {
  Vec2 c;
  for (auto p : points) c = c + p;
  return points.empty() ? c : c * (1.0 / static_cast<double>(points.size()));
}

bool point_in_polygon(Vec2 p, std::span<const Vec2> ring) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = ring[i], b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double distance_to_ring(Vec2 p, std::span<const Vec2> ring) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ring.size(); ++i) {
    best = std::min(best, kernels::point_segment_distance(p, ring[i], ring[(i + 1) % ring.size()]));
  }
  return best;
}

namespace {

int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0) - (v < 0);
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_touch(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orient_sign(a, b, c), o2 = orient_sign(a, b, d);
  const int o3 = orient_sign(c, d, a), o4 = orient_sign(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

bool is_simple(std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (ring[i] == ring[(i + 1) % n]) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[i], b = ring[(i + 1) % n];
    // Adjacent edge folding back over this one.
    const Vec2 c = ring[(i + 2) % n];
    if (orient_sign(a, b, c) == 0 && dot(b - a, c - b) < 0) return false;
    const double minx = std::min(a.x, b.x), maxx = std::max(a.x, b.x);
    const double miny = std::min(a.y, b.y), maxy = std::max(a.y, b.y);
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
      const Vec2 p = ring[j], q = ring[(j + 1) % n];
      if (std::max(p.x, q.x) < minx || std::min(p.x, q.x) > maxx || std::max(p.y, q.y) < miny ||
          std::min(p.y, q.y) > maxy) {
        continue;
      }
      if (segments_touch(a, b, p, q)) return false;
    }
  }
  return true;
}

Ring clean_ring(std::span<const Vec2> ring, double tolerance) {
  Ring out;
  for (auto p : ring) {
    if (out.empty() || distance(out.back(), p) > tolerance) out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= tolerance) out.pop_back();
  // Remove collinear vertices until none remain.
  auto removable = [&](std::size_t i) {
    const std::size_t n = out.size();
    const Vec2 a = out[(i + n - 1) % n], b = out[i], c = out[(i + 1) % n];
    const double scale = std::max(distance(a, b) * distance(b, c), 1e-300);
    return std::abs(cross(b - a, c - b)) <= tolerance * scale || distance(a, c) <= tolerance;
  };
  for (std::size_t i = 0; out.size() >= 3 && i < out.size();) {
    if (removable(i)) {
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
      i = i == 0 ? 0 : i - 1;
    } else {
      ++i;
    }
  }
  return out;
}

Ring convex_hull(std::span<const Vec2> points) {
  Ring pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  Ring hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

RotatedRect min_area_rect(std::span<const Vec2> points) {
  const Ring hull = convex_hull(points);
  if (hull.size() < 3) throw ValidationError("minimum-area rectangle needs at least 3 non-collinear points");
  const std::size_t n = hull.size();
  auto at = [&](std::size_t i) { return hull[i % n]; };

  RotatedRect best;
  best.area = std::numeric_limits<double>::infinity();
  std::size_t far = 0, right = 0, left = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 origin = hull[i];
    const Vec2 edge = at(i + 1) - origin;
    const Vec2 u = edge * (1.0 / norm(edge));
    const Vec2 v{-u.y, u.x};  // inward normal for a counter-clockwise hull
    auto pu = [&](std::size_t k) { return dot(at(k) - origin, u); };
    auto pv = [&](std::size_t k) { return dot(at(k) - origin, v); };

    // Indices grow without wrapping; `at` reduces them. Counter-clockwise
    // from edge i the hull reaches max-u, then max-v, then min-u.
    right = std::max(right, i + 1);
    while (pu(right + 1) > pu(right)) ++right;
    far = std::max(far, right);
    while (pv(far + 1) > pv(far)) ++far;
    left = std::max(left, far);
    while (pu(left + 1) < pu(left)) ++left;

    const double u_min = pu(left), u_max = pu(right), v_max = pv(far);
    const double area = (u_max - u_min) * v_max;
    if (area < best.area) {
      best.area = area;
      best.corners = {origin + u * u_min, origin + u * u_max, origin + u * u_max + v * v_max,
                      origin + u * u_min + v * v_max};
      double ang = std::atan2(u.y, u.x) * 180.0 / std::numbers::pi;
      ang = std::fmod(ang, 90.0);
      if (ang < 0) ang += 90.0;
      if (ang >= 90.0) ang = 0.0;
      best.angle_deg = ang;
    }
  }
  return best;
}

namespace {

Circle circle_from_two(Vec2 a, Vec2 b) {
  const Vec2 c = (a + b) * 0.5;
  return {c, std::max(distance(c, a), distance(c, b))};
}

Circle circumcircle(Vec2 a, Vec2 b, Vec2 c) {
  // Relative to the bounding box centre for better conditioning.
  const double ox = (std::min({a.x, b.x, c.x}) + std::max({a.x, b.x, c.x})) / 2;
  const double oy = (std::min({a.y, b.y, c.y}) + std::max({a.y, b.y, c.y})) / 2;
  const double ax = a.x - ox, ay = a.y - oy, bx = b.x - ox, by = b.y - oy, cx = c.x - ox, cy = c.y - oy;
  const double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  if (d == 0) return {};
  const double x = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d;
  const double y = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d;
  const Vec2 center{ox + x, oy + y};
  return {center, std::max({distance(center, a), distance(center, b), distance(center, c)})};
}

Circle mec_two_boundary(std::span<const Vec2> pts, Vec2 p, Vec2 q) {
  const Circle circ = circle_from_two(p, q);
  Circle left, right;
  const Vec2 pq = q - p;
  for (auto r : pts) {
    if (circ.contains(r)) continue;
    const double side = cross(pq, r - p);
    const Circle c = circumcircle(p, q, r);
    if (c.radius < 0) continue;
    const double c_side = cross(pq, c.center - p);
    if (side > 0 && (left.radius < 0 || c_side > cross(pq, left.center - p))) {
      left = c;
    } else if (side < 0 && (right.radius < 0 || c_side < cross(pq, right.center - p))) {
      right = c;
    }
  }
  if (left.radius < 0 && right.radius < 0) return circ;
  if (left.radius < 0) return right;
  if (right.radius < 0) return left;
  return left.radius <= right.radius ? left : right;
}

Circle mec_one_boundary(std::span<const Vec2> pts, Vec2 p) {
  Circle c{p, 0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 q = pts[i];
    if (c.contains(q)) continue;
    c = c.radius == 0 ? circle_from_two(p, q) : mec_two_boundary(pts.first(i + 1), p, q);
  }
  return c;
}

}  // namespace

Circle min_enclosing_circle(std::span<const Vec2> points) {
  Circle c;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (c.radius < 0 || !c.contains(points[i])) c = mec_one_boundary(points.first(i + 1), points[i]);
  }
  return c;
}

std::vector<std::size_t> rdp_open(std::span<const Vec2> chain, double epsilon) {
  const std::size_t n = chain.size();
  if (n <= 2) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  std::vector<char> keep(n, 0);
  keep[0] = keep[n - 1] = 1;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    double dmax = -1;
    std::size_t idx = a;
    for (std::size_t i = a + 1; i < b; ++i) {
      const double d = kernels::point_segment_distance(chain[i], chain[a], chain[b]);
      if (d > dmax) {
        dmax = d;
        idx = i;
      }
    }
    if (idx != a && dmax > epsilon) {
      keep[idx] = 1;
      stack.push_back({idx, b});
      stack.push_back({a, idx});
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> rdp_closed(std::span<const Vec2> ring, double epsilon) {
  const std::size_t n = ring.size();
  if (n < 4) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  std::size_t far = 0;
  double dmax = -1;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = distance(ring[0], ring[i]);
    if (d > dmax) {
      dmax = d;
      far = i;
    }
  }
  std::vector<Vec2> first(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(far) + 1);
  std::vector<Vec2> second(ring.begin() + static_cast<std::ptrdiff_t>(far), ring.end());
  second.push_back(ring[0]);
  std::vector<std::size_t> out = rdp_open(first, epsilon);
  for (auto i : rdp_open(second, epsilon)) {
    const std::size_t idx = far + i;
    if (idx != far && idx != n) out.push_back(idx);
  }
  return out;
}

Ring quadratic_bspline_closed(std::span<const Vec2> control, int pieces_per_span) {
  const std::size_t n = control.size();
  Ring out;
  if (n < 3) return Ring(control.begin(), control.end());
  out.reserve(n * pieces_per_span);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 v0 = control[i], v1 = control[(i + 1) % n], v2 = control[(i + 2) % n];
    const Vec2 start = (v0 + v1) * 0.5, end = (v1 + v2) * 0.5;
    for (int k = 0; k < pieces_per_span; ++k) {
      const double t = static_cast<double>(k) / pieces_per_span;
      const double s = 1.0 - t;
      out.push_back(start * (s * s) + v1 * (2 * s * t) + end * (t * t));
    }
  }
  return out;
}

Ring resample_closed(std::span<const Vec2> ring, double step) {
  const std::size_t n = ring.size();
  Ring out;
  if (n == 0) return out;
  const double total = perimeter(ring);
  out.push_back(ring[0]);
  double next = step;
  double walked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[i], b = ring[(i + 1) % n];
    const double len = distance(a, b);
    while (len > 0 && next <= walked + len && next < total - 1e-9) {
      out.push_back(a + (b - a) * ((next - walked) / len));
      next += step;
    }
    walked += len;
  }
  return out;
}

std::vector<Tri> ear_clip(std::span<const Vec2> ring) {
  std::vector<Tri> tris;
  const std::size_t n = ring.size();
  if (n < 3) return tris;
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  if (signed_area(ring) < 0) std::reverse(idx.begin(), idx.end());

  auto is_convex = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    return cross(ring[b] - ring[a], ring[c] - ring[b]) > 0;
  };
  auto inside_tri = [&](Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
    return cross(b - a, p - a) >= 0 && cross(c - b, p - b) >= 0 && cross(a - c, p - c) >= 0;
  };

  std::size_t i = 0;
  std::size_t misses = 0;
  while (idx.size() > 3) {
    const std::size_t m = idx.size();
    const std::uint32_t a = idx[(i + m - 1) % m], b = idx[i % m], c = idx[(i + 1) % m];
    bool ear = is_convex(a, b, c);
    if (ear) {
      for (std::size_t k = 0; k < m && ear; ++k) {
        const std::uint32_t p = idx[k];
        if (p == a || p == b || p == c) continue;
        const Vec2 q = ring[p];
        if (q == ring[a] || q == ring[b] || q == ring[c]) continue;
        if (inside_tri(q, ring[a], ring[b], ring[c])) ear = false;
      }
    }
    if (ear) {
      tris.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i % m));
      misses = 0;
      if (i >= idx.size()) i = 0;
      continue;
    }
    if (++misses > m) {
      // No clean ear (degenerate input); drop the flattest vertex and go on.
      std::size_t flat = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < m; ++k) {
        const double cr = std::abs(cross(ring[idx[k]] - ring[idx[(k + m - 1) % m]], ring[idx[(k + 1) % m]] - ring[idx[k]]));
        if (cr < best) {
          best = cr;
          flat = k;
        }
      }
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(flat));
      misses = 0;
      i = 0;
      continue;
    }
    i = (i + 1) % m;
  }
  if (cross(ring[idx[1]] - ring[idx[0]], ring[idx[2]] - ring[idx[0]]) > 0) tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

namespace {

struct DTri {
  std::uint32_t v[3];
  Vec2 cc;
  double r2;
};

}  // namespace

std::vector<Tri> delaunay(std::span<const Vec2> input) {
  const std::size_t n = input.size();
  if (n < 3) return {};
  std::vector<Vec2> pts(input.begin(), input.end());
  double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
  for (auto p : pts) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double span = std::max({maxx - minx, maxy - miny, 1e-9});
  const Vec2 mid{(minx + maxx) / 2, (miny + maxy) / 2};
  pts.push_back({mid.x - 100 * span, mid.y - 100 * span});
  pts.push_back({mid.x + 100 * span, mid.y - 100 * span});
  pts.push_back({mid.x, mid.y + 100 * span});

  auto make = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    DTri t{{a, b, c}, {}, 0};
    const Circle cc = circumcircle(pts[a], pts[b], pts[c]);
    t.cc = cc.center;
    t.r2 = cc.radius < 0 ? std::numeric_limits<double>::infinity() : cc.radius * cc.radius;
    return t;
  };
  auto orient = [&](std::uint32_t a, std::uint32_t b, Vec2 p) { return cross(pts[b] - pts[a], p - pts[a]); };

  std::vector<DTri> tris{make(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n + 1),
                               static_cast<std::uint32_t>(n + 2))};
  std::vector<std::size_t> bad, cavity;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> rim;
  std::vector<std::size_t> rim_owner;

  for (std::uint32_t pi = 0; pi < n; ++pi) {
    const Vec2 p = pts[pi];
    bad.clear();
    std::size_t home = static_cast<std::size_t>(-1);
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto& tr = tris[t];
      const double dx = p.x - tr.cc.x, dy = p.y - tr.cc.y;
      if (dx * dx + dy * dy < tr.r2) {
        bad.push_back(t);
        if (home == static_cast<std::size_t>(-1) && orient(tr.v[0], tr.v[1], p) >= 0 &&
            orient(tr.v[1], tr.v[2], p) >= 0 && orient(tr.v[2], tr.v[0], p) >= 0) {
          home = t;
        }
      }
    }
    if (home == static_cast<std::size_t>(-1)) continue;  // duplicate or numerically lost point

    // Grow the cavity from the containing triangle through shared edges,
    // then drop triangles whose rim edge would not see p on its left.
    auto shares_edge = [&](const DTri& a, const DTri& b) {
      int common = 0;
      for (auto x : a.v) {
        for (auto y : b.v) common += x == y;
      }
      return common == 2;
    };
    std::vector<char> rejected(bad.size(), 0);
    for (;;) {
      cavity.assign(1, home);
      std::vector<char> used(bad.size(), 0);
      for (std::size_t q = 0; q < cavity.size(); ++q) {
        for (std::size_t k = 0; k < bad.size(); ++k) {
          if (used[k] || rejected[k] || bad[k] == home) continue;
          if (shares_edge(tris[cavity[q]], tris[bad[k]])) {
            used[k] = 1;
            cavity.push_back(bad[k]);
          }
        }
      }
      rim.clear();
      rim_owner.clear();
      for (auto t : cavity) {
        for (int e = 0; e < 3; ++e) {
          const std::uint32_t a = tris[t].v[e], b = tris[t].v[(e + 1) % 3];
          bool shared = false;
          for (auto u : cavity) {
            if (u == t) continue;
            for (int f = 0; f < 3; ++f) {
              if (tris[u].v[f] == b && tris[u].v[(f + 1) % 3] == a) shared = true;
            }
          }
          if (!shared) {
            rim.emplace_back(a, b);
            rim_owner.push_back(t);
          }
        }
      }
      std::size_t offender = static_cast<std::size_t>(-1);
      for (std::size_t r = 0; r < rim.size(); ++r) {
        if (orient(rim[r].first, rim[r].second, p) <= 0 && rim_owner[r] != home) {
          offender = rim_owner[r];
          break;
        }
      }
      if (offender == static_cast<std::size_t>(-1)) break;
      rejected[static_cast<std::size_t>(std::find(bad.begin(), bad.end(), offender) - bad.begin())] = 1;
    }

    std::sort(cavity.begin(), cavity.end(), std::greater<>());
    for (auto t : cavity) {
      tris[t] = tris.back();
      tris.pop_back();
    }
    for (const auto& [a, b] : rim) {
      if (orient(a, b, p) > 0) tris.push_back(make(a, b, pi));
    }
  }

  std::vector<Tri> out;
  for (const auto& t : tris) {
    if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
    out.push_back({t.v[0], t.v[1], t.v[2]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace parkforge::geom
