#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "parkforge/kernels.hpp"

namespace parkforge::kernels::omp {

void gaussian_blur(std::span<const float> in, std::span<float> out, int width, int height,
                   double sigma) {
  const auto taps = gaussian_taps(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  std::vector<float> tmp(in.size());

#pragma omp parallel
  {
    // Padded row buffer: clamp-to-edge once per row instead of per tap.
    std::vector<float> line(static_cast<std::size_t>(std::max(width, height)) + 2 * radius);

#pragma omp for schedule(static)
    for (int y = 0; y < height; ++y) {
      const float* row = in.data() + static_cast<std::size_t>(y) * width;
      for (int i = 0; i < width + 2 * radius; ++i) line[i] = row[std::clamp(i - radius, 0, width - 1)];
      float* dst = tmp.data() + static_cast<std::size_t>(y) * width;
      for (int x = 0; x < width; ++x) {
        float acc = 0;
        for (int k = 0; k <= 2 * radius; ++k) acc += taps[k] * line[x + k];
        dst[x] = acc;
      }
    }

#pragma omp for schedule(static)
    for (int x = 0; x < width; ++x) {
      for (int i = 0; i < height + 2 * radius; ++i) {
        line[i] = tmp[static_cast<std::size_t>(std::clamp(i - radius, 0, height - 1)) * width + x];
      }
      for (int y = 0; y < height; ++y) {
        float acc = 0;
        for (int k = 0; k <= 2 * radius; ++k) acc += taps[k] * line[y + k];
        out[static_cast<std::size_t>(y) * width + x] = acc;
      }
    }
  }
}

namespace {

// Separable square-window filter: a row pass then a column pass.
template <class Pick>
void separable_filter(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width,
                      int height, int kernel, Pick pick) {
  const int r = kernel / 2;
  std::vector<std::uint8_t> tmp(in.size());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    const std::uint8_t* row = in.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      const int lo = std::max(0, x - r), hi = std::min(width - 1, x + r);
      std::uint8_t v = row[lo];
      for (int xx = lo + 1; xx <= hi; ++xx) v = pick(v, row[xx]);
      tmp[static_cast<std::size_t>(y) * width + x] = v;
    }
  }
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    const int lo = std::max(0, y - r), hi = std::min(height - 1, y + r);
    for (int x = 0; x < width; ++x) {
      std::uint8_t v = tmp[static_cast<std::size_t>(lo) * width + x];
      for (int yy = lo + 1; yy <= hi; ++yy) v = pick(v, tmp[static_cast<std::size_t>(yy) * width + x]);
      out[static_cast<std::size_t>(y) * width + x] = v;
    }
  }
}

}  // namespace

void erode(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width, int height,
           int kernel) {
  separable_filter(in, out, width, height, kernel,
                   [](std::uint8_t a, std::uint8_t b) { return std::min(a, b); });
}

void dilate(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width, int height,
            int kernel) {
  separable_filter(in, out, width, height, kernel,
                   [](std::uint8_t a, std::uint8_t b) { return std::max(a, b); });
}

int zhang_suen_thin(std::span<std::uint8_t> img, int width, int height) {
  // One-pixel background frame so the neighbourhood lookup needs no bounds checks.
  const int pw = width + 2;
  std::vector<std::uint8_t> grid(static_cast<std::size_t>(pw) * (height + 2), 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      grid[static_cast<std::size_t>(y + 1) * pw + x + 1] = img[static_cast<std::size_t>(y) * width + x] != 0;
    }
  }
  std::vector<std::uint8_t> marker(grid.size(), 0);

  int passes = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    ++passes;
    for (int sub = 0; sub < 2; ++sub) {
      const auto& table = zhang_suen_table(sub);
      long removed = 0;
#pragma omp parallel for schedule(static) reduction(+ : removed)
      for (int y = 1; y <= height; ++y) {
        const std::uint8_t* c = grid.data() + static_cast<std::size_t>(y) * pw;
        const std::uint8_t* n = c - pw;
        const std::uint8_t* s = c + pw;
        std::uint8_t* m = marker.data() + static_cast<std::size_t>(y) * pw;
        for (int x = 1; x <= width; ++x) {
          if (!c[x]) continue;
          const int idx = n[x] | (n[x + 1] << 1) | (c[x + 1] << 2) | (s[x + 1] << 3) | (s[x] << 4) |
                          (s[x - 1] << 5) | (c[x - 1] << 6) | (n[x - 1] << 7);
          if (table[idx]) {
            m[x] = 1;
            ++removed;
          }
        }
      }
      if (removed > 0) {
        changed = true;
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(grid.size()); ++i) {
          if (marker[i]) {
            grid[i] = 0;
            marker[i] = 0;
          }
        }
      }
    }
  }

#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      img[static_cast<std::size_t>(y) * width + x] = grid[static_cast<std::size_t>(y + 1) * pw + x + 1] ? 255 : 0;
    }
  }
  return passes;
}

void classify_pixels(std::span<const std::uint8_t> rgb, std::span<const ColorBox> boxes,
                     std::span<std::int8_t> labels) {
  const long n = static_cast<long>(labels.size());
  const int nb = static_cast<int>(boxes.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const int r = rgb[3 * i], g = rgb[3 * i + 1], b = rgb[3 * i + 2];
    std::int8_t label = -1;
    for (int k = 0; k < nb; ++k) {
      const auto& box = boxes[k];
      if (r >= box.lo[0] && r <= box.hi[0] && g >= box.lo[1] && g <= box.hi[1] && b >= box.lo[2] &&
          b <= box.hi[2]) {
        label = static_cast<std::int8_t>(k);
        break;
      }
    }
    labels[i] = label;
  }
}

void distance_to_ring(std::span<const Vec2> points, std::span<const Vec2> ring,
                      std::span<double> out) {
  const long n = static_cast<long>(points.size());
  const std::size_t m = ring.size();
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < m; ++e) {
      best = std::min(best, point_segment_distance(points[i], ring[e], ring[(e + 1) % m]));
    }
    out[i] = best;
  }
}

void face_slopes(std::span<const Vec3> vertices, std::span<const Triangle> triangles,
                 std::span<double> out) {
  constexpr double kDeg = 180.0 / 3.14159265358979323846;
  const long n = static_cast<long>(triangles.size());
#pragma omp parallel for schedule(static)
  for (long f = 0; f < n; ++f) {
    const auto& t = triangles[f];
    const Vec3 nrm = cross(vertices[t[1]] - vertices[t[0]], vertices[t[2]] - vertices[t[0]]);
    out[f] = std::atan2(std::hypot(nrm.x, nrm.y), std::abs(nrm.z)) * kDeg;
  }
}

void l0_gradient_shrink(std::span<const double> planes, int width, int height, int channels,
                        double threshold, std::span<double> grad_x, std::span<double> grad_y) {
  const std::size_t plane = static_cast<std::size_t>(width) * height;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    const int yn = (y + 1) % height;
    for (int x = 0; x < width; ++x) {
      const int xn = (x + 1) % width;
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      double mag = 0;
      for (int c = 0; c < channels; ++c) {
        const double* p = planes.data() + c * plane;
        const double dx = p[static_cast<std::size_t>(y) * width + xn] - p[i];
        const double dy = p[static_cast<std::size_t>(yn) * width + x] - p[i];
        grad_x[c * plane + i] = dx;
        grad_y[c * plane + i] = dy;
        mag += dx * dx + dy * dy;
      }
      if (mag < threshold) {
        for (int c = 0; c < channels; ++c) {
          grad_x[c * plane + i] = 0;
          grad_y[c * plane + i] = 0;
        }
      }
    }
  }
}

}  // namespace parkforge::kernels::omp
