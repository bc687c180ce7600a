#include "parkforge/terrain_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>

#include "parkforge/errors.hpp"
#include "parkforge/kernels.hpp"
#include "parkforge/png_io.hpp"

namespace parkforge {

namespace {

constexpr Rgb kLow{0, 0, 255};
constexpr Rgb kHigh{255, 0, 0};
constexpr Rgb kBackground{255, 255, 255};
constexpr Rgb kArrow{20, 20, 20};
constexpr int kElevationStops = 3;
constexpr int kDrainageDecades = 5;

Rgb lerp(Rgb a, Rgb b, double t) {
  auto ch = [t](std::uint8_t x, std::uint8_t y) {
    return static_cast<std::uint8_t>(std::lround(x + (static_cast<double>(y) - x) * t));
  };
  return {ch(a.r, b.r), ch(a.g, b.g), ch(a.b, b.b)};
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

void merge(AnalysisOverlay& o, const Mesh3D& m) {
  const auto offset = static_cast<std::uint32_t>(o.vertices.size());
  o.vertices.insert(o.vertices.end(), m.vertices.begin(), m.vertices.end());
  for (const auto& t : m.triangles) o.triangles.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
}

void finish_bounds(AnalysisOverlay& o) {
  if (o.vertices.empty()) return;
  o.bounds = {o.vertices[0].x, o.vertices[0].y, o.vertices[0].x, o.vertices[0].y};
  for (const auto& v : o.vertices) {
    o.bounds[0] = std::min(o.bounds[0], v.x);
    o.bounds[1] = std::min(o.bounds[1], v.y);
    o.bounds[2] = std::max(o.bounds[2], v.x);
    o.bounds[3] = std::max(o.bounds[3], v.y);
  }
}

void finish_bins(AnalysisOverlay& o) {
  o.bin_counts.assign(o.legend.size(), 0);
  for (int b : o.bin) ++o.bin_counts[static_cast<std::size_t>(b)];
  if (!o.per_face.empty()) {
    const auto [lo, hi] = std::minmax_element(o.per_face.begin(), o.per_face.end());
    o.min = *lo;
    o.max = *hi;
  }
}

Vec3 centroid(const AnalysisOverlay& o, std::size_t f) {
  const auto& t = o.triangles[f];
  return (o.vertices[t[0]] + o.vertices[t[1]] + o.vertices[t[2]]) * (1.0 / 3.0);
}

void set_pixel(std::vector<std::uint8_t>& rgb, int w, int h, int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= w || y >= h) return;
  const auto i = 3 * (static_cast<std::size_t>(y) * w + x);
  rgb[i] = c.r;
  rgb[i + 1] = c.g;
  rgb[i + 2] = c.b;
}

}  // namespace

std::string_view to_string(OverlayKind k) {
  switch (k) {
    case OverlayKind::elevation:
      return "elevation";
    case OverlayKind::slope:
      return "slope";
    case OverlayKind::drainage:
      return "drainage";
  }
  return "?";
}

int slope_bin(double degrees) {
  const double s = std::round(degrees * 1e9) / 1e9;
  for (int b = 1; b < static_cast<int>(kSlopeEdges.size()) - 1; ++b) {
    if (s < kSlopeEdges[b]) return b - 1;
  }
  return static_cast<int>(kSlopeEdges.size()) - 2;
}

AnalysisOverlay elevation_overlay(std::span<const TerrainField> fields) {
  AnalysisOverlay o;
  o.kind = OverlayKind::elevation;
  for (const auto& f : fields) merge(o, f.mesh);
  finish_bounds(o);
  const std::size_t n = o.triangles.size();
  o.per_face.resize(n);
  for (std::size_t f = 0; f < n; ++f) o.per_face[f] = centroid(o, f).z;
  double lo = 0, hi = 0;
  if (n) {
    lo = *std::min_element(o.per_face.begin(), o.per_face.end());
    hi = *std::max_element(o.per_face.begin(), o.per_face.end());
  }
  const double range = hi - lo;
  // Three ramp stops; each face is binned with the stop nearest its colour.
  const double mid = lo + 0.5 * range;
  o.legend = {{fmt("min %.2f m", lo), kLow}, {fmt("mid %.2f m", mid), lerp(kLow, kHigh, 0.5)},
              {fmt("max %.2f m", hi), kHigh}};
  o.bin.resize(n);
  o.face_color.resize(n);
  for (std::size_t f = 0; f < n; ++f) {
    const double t = range > 0 ? (o.per_face[f] - lo) / range : 0.5;
    o.face_color[f] = lerp(kLow, kHigh, t);
    o.bin[f] = std::min(kElevationStops - 1, static_cast<int>(t * kElevationStops));
  }
  finish_bins(o);
  return o;
}

AnalysisOverlay slope_overlay(std::span<const Mesh3D> meshes) {
  static const std::array<Rgb, 5> colors{Rgb{26, 152, 80}, Rgb{166, 217, 106}, Rgb{254, 224, 139},
                                         Rgb{244, 109, 67}, Rgb{165, 0, 38}};
  AnalysisOverlay o;
  o.kind = OverlayKind::slope;
  for (const auto& m : meshes) merge(o, m);
  finish_bounds(o);
  const std::size_t n = o.triangles.size();
  o.per_face.resize(n);
  kernels::omp::face_slopes(o.vertices, o.triangles, o.per_face);
  for (std::size_t b = 0; b + 1 < kSlopeEdges.size(); ++b) {
    const bool last = b + 2 == kSlopeEdges.size();
    o.legend.push_back({fmt("[%g, ", kSlopeEdges[b]) + fmt("%g", kSlopeEdges[b + 1]) + (last ? "] deg" : ") deg"),
                        colors[b]});
  }
  o.bin.resize(n);
  o.face_color.resize(n);
  for (std::size_t f = 0; f < n; ++f) {
    o.bin[f] = slope_bin(o.per_face[f]);
    o.face_color[f] = colors[static_cast<std::size_t>(o.bin[f])];
  }
  finish_bins(o);
  return o;
}

AnalysisOverlay drainage_overlay(std::span<const TerrainField> fields) {
  AnalysisOverlay o;
  o.kind = OverlayKind::drainage;
  for (const auto& f : fields) merge(o, f.mesh);
  finish_bounds(o);
  const std::size_t n = o.triangles.size();

  o.flow3d.resize(n);
  o.flow.resize(n);
  std::vector<double> cz(n);
  for (std::size_t f = 0; f < n; ++f) {
    const auto& t = o.triangles[f];
    Vec3 nrm = cross(o.vertices[t[1]] - o.vertices[t[0]], o.vertices[t[2]] - o.vertices[t[0]]);
    nrm = nrm * (1.0 / norm(nrm));
    if (nrm.z < 0) nrm = nrm * -1.0;
    // Gravity minus its normal component.
    const Vec3 down = Vec3{0, 0, -1} + nrm * nrm.z;
    const double len = norm(down);
    const double hlen = std::hypot(down.x, down.y);
    o.flow3d[f] = len > 1e-12 ? down * (1.0 / len) : Vec3{};
    o.flow[f] = hlen > 1e-12 ? Vec2{down.x / hlen, down.y / hlen} : Vec2{};
    cz[f] = centroid(o, f).z;
  }

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> edges;
  for (std::uint32_t f = 0; f < n; ++f) {
    const auto& t = o.triangles[f];
    for (int k = 0; k < 3; ++k) edges[std::minmax(t[k], t[(k + 1) % 3])].push_back(f);
  }
  o.receiver.assign(n, -1);
  for (const auto& [edge, faces] : edges) {
    for (auto a : faces) {
      for (auto b : faces) {
        if (a == b || !(cz[b] < cz[a])) continue;
        const int cur = o.receiver[a];
        if (cur < 0 || cz[b] < cz[cur] || (cz[b] == cz[cur] && static_cast<int>(b) < cur)) {
          o.receiver[a] = static_cast<int>(b);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cz[a] != cz[b] ? cz[a] > cz[b] : a < b;
  });
  o.per_face.assign(n, 1.0);
  for (auto f : order) {
    if (o.receiver[f] >= 0) o.per_face[static_cast<std::size_t>(o.receiver[f])] += o.per_face[f];
  }

  for (int d = 0; d < kDrainageDecades; ++d) {
    const bool last = d + 1 == kDrainageDecades;
    const std::string label = last ? fmt(">= %.0f faces", std::pow(10.0, d))
                                   : fmt("%.0f", std::pow(10.0, d)) + fmt(" to %.0f faces", std::pow(10.0, d + 1) - 1);
    o.legend.push_back({label, lerp(Rgb{222, 235, 247}, Rgb{8, 48, 107}, d / (kDrainageDecades - 1.0))});
  }
  o.log_accumulation.resize(n);
  o.bin.resize(n);
  o.face_color.resize(n);
  for (std::size_t f = 0; f < n; ++f) {
    o.log_accumulation[f] = std::log10(o.per_face[f]);
    o.bin[f] = std::min(kDrainageDecades - 1, static_cast<int>(std::floor(o.log_accumulation[f] + 1e-12)));
    o.face_color[f] = o.legend[static_cast<std::size_t>(o.bin[f])].color;
  }
  finish_bins(o);
  return o;
}

void render_overlay(const AnalysisOverlay& o, const std::filesystem::path& png_path, double px_per_meter) {
  if (!(px_per_meter > 0)) throw ValidationError("px_per_meter must be > 0");
  const double minx = o.bounds[0], miny = o.bounds[1];
  const double maxx = o.bounds[2], maxy = o.bounds[3];
  const double wd = std::ceil((maxx - minx) * px_per_meter), hd = std::ceil((maxy - miny) * px_per_meter);
  if (wd * hd > 1e8) throw ValidationError("overlay raster too large; lower px_per_meter");
  const int w = std::max(1, static_cast<int>(wd)), h = std::max(1, static_cast<int>(hd));

  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(w) * h * 3);
  for (std::size_t i = 0; i < rgb.size(); i += 3) {
    rgb[i] = kBackground.r;
    rgb[i + 1] = kBackground.g;
    rgb[i + 2] = kBackground.b;
  }
  // Pixel space: column = (x - minx) * ppm, row = (maxy - y) * ppm.
  auto to_px = [&](Vec3 v) { return Vec2{(v.x - minx) * px_per_meter, (maxy - v.y) * px_per_meter}; };
  for (std::size_t f = 0; f < o.triangles.size(); ++f) {
    const auto& t = o.triangles[f];
    const Vec2 a = to_px(o.vertices[t[0]]), b = to_px(o.vertices[t[1]]), c = to_px(o.vertices[t[2]]);
    const double area = cross(b - a, c - a);
    if (area == 0) continue;
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x, b.x, c.x}))));
    const int x1 = std::min(w - 1, static_cast<int>(std::ceil(std::max({a.x, b.x, c.x}))));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min({a.y, b.y, c.y}))));
    const int y1 = std::min(h - 1, static_cast<int>(std::ceil(std::max({a.y, b.y, c.y}))));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const Vec2 p{x + 0.5, y + 0.5};
        const double e0 = cross(b - a, p - a) / area, e1 = cross(c - b, p - b) / area, e2 = cross(a - c, p - c) / area;
        if (e0 >= 0 && e1 >= 0 && e2 >= 0) set_pixel(rgb, w, h, x, y, o.face_color[f]);
      }
    }
  }
  if (o.kind == OverlayKind::drainage) {
    for (std::size_t f = 0; f < o.triangles.size(); ++f) {
      if (o.flow[f] == Vec2{}) continue;
      const Vec2 start = to_px(centroid(o, f));
      const double len = px_per_meter * 0.5 * (1.0 + o.log_accumulation[f]);
      const Vec2 dir{o.flow[f].x, -o.flow[f].y};
      const int steps = std::max(1, static_cast<int>(std::ceil(len)));
      for (int s = 0; s <= steps; ++s) {
        const Vec2 p = start + dir * (len * s / steps);
        set_pixel(rgb, w, h, static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y)), kArrow);
      }
    }
  }
  png::write_rgb(png_path, w, h, rgb);

  nlohmann::json legend = nlohmann::json::array();
  for (const auto& e : o.legend) legend.push_back({{"label", e.label}, {"color", {e.color.r, e.color.g, e.color.b}}});
  std::vector<std::size_t> counts = o.bin_counts;
  counts.resize(o.legend.size(), 0);
  const nlohmann::json doc = {{"kind", std::string(to_string(o.kind))},
                              {"legend", legend},
                              {"stats", {{"min", o.min}, {"max", o.max}, {"bin_counts", counts}}}};
  auto sidecar = png_path;
  sidecar.replace_extension(".json");
  std::ofstream out(sidecar, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + sidecar.string() + "' for writing");
  out << doc.dump(1) << '\n';
  if (!out) throw IoError("write failure on '" + sidecar.string() + "'");
}

}  // namespace parkforge
