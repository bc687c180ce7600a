// Reference versions of the kernels. Keep these plain; they are the yardstick
// the OpenMP versions are tested against.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "parkforge/kernels.hpp"

namespace parkforge::kernels::serial {

void gaussian_blur(std::span<const float> in, std::span<float> out, int width, int height,
                   double sigma) {
  const auto taps = gaussian_taps(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  std::vector<float> tmp(in.size());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      float acc = 0;
      for (int k = -radius; k <= radius; ++k) {
        const int xx = std::clamp(x + k, 0, width - 1);
        acc += taps[k + radius] * in[static_cast<std::size_t>(y) * width + xx];
      }
      tmp[static_cast<std::size_t>(y) * width + x] = acc;
    }
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      float acc = 0;
      for (int k = -radius; k <= radius; ++k) {
        const int yy = std::clamp(y + k, 0, height - 1);
        acc += taps[k + radius] * tmp[static_cast<std::size_t>(yy) * width + x];
      }
      out[static_cast<std::size_t>(y) * width + x] = acc;
    }
  }
}

namespace {

template <class Pick>
void window_filter(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width,
                   int height, int kernel, std::uint8_t init, Pick pick) {
  const int r = kernel / 2;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::uint8_t v = init;
      for (int dy = -r; dy <= r; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= height) continue;
        for (int dx = -r; dx <= r; ++dx) {
          const int xx = x + dx;
          if (xx < 0 || xx >= width) continue;
          v = pick(v, in[static_cast<std::size_t>(yy) * width + xx]);
        }
      }
      out[static_cast<std::size_t>(y) * width + x] = v;
    }
  }
}

}  // namespace

void erode(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width, int height,
           int kernel) {
  window_filter(in, out, width, height, kernel, 255,
                [](std::uint8_t a, std::uint8_t b) { return std::min(a, b); });
}

void dilate(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width, int height,
            int kernel) {
  window_filter(in, out, width, height, kernel, 0,
                [](std::uint8_t a, std::uint8_t b) { return std::max(a, b); });
}

int zhang_suen_thin(std::span<std::uint8_t> img, int width, int height) {
  auto px = [&](int x, int y) -> int {
    if (x < 0 || y < 0 || x >= width || y >= height) return 0;
    return img[static_cast<std::size_t>(y) * width + x] != 0;
  };
  int passes = 0;
  bool changed = true;
  std::vector<std::size_t> doomed;
  while (changed) {
    changed = false;
    ++passes;
    for (int sub = 0; sub < 2; ++sub) {
      doomed.clear();
      for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
          if (!px(x, y)) continue;
          const int p2 = px(x, y - 1), p3 = px(x + 1, y - 1), p4 = px(x + 1, y),
                    p5 = px(x + 1, y + 1), p6 = px(x, y + 1), p7 = px(x - 1, y + 1),
                    p8 = px(x - 1, y), p9 = px(x - 1, y - 1);
          const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
          const int a = (!p2 && p3) + (!p3 && p4) + (!p4 && p5) + (!p5 && p6) + (!p6 && p7) +
                        (!p7 && p8) + (!p8 && p9) + (!p9 && p2);
          if (b < 2 || b > 6 || a != 1) continue;
          if (sub == 0 && (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0)) continue;
          if (sub == 1 && (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0)) continue;
          doomed.push_back(static_cast<std::size_t>(y) * width + x);
        }
      }
      for (auto i : doomed) img[i] = 0;
      if (!doomed.empty()) changed = true;
    }
  }
  return passes;
}

void classify_pixels(std::span<const std::uint8_t> rgb, std::span<const ColorBox> boxes,
                     std::span<std::int8_t> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = -1;
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      bool inside = true;
      for (int c = 0; c < 3; ++c) {
        const int v = rgb[3 * i + c];
        if (v < boxes[b].lo[c] || v > boxes[b].hi[c]) inside = false;
      }
      if (inside) {
        labels[i] = static_cast<std::int8_t>(b);
        break;
      }
    }
  }
}

void distance_to_ring(std::span<const Vec2> points, std::span<const Vec2> ring,
                      std::span<double> out) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < n; ++e) {
      best = std::min(best, point_segment_distance(points[i], ring[e], ring[(e + 1) % n]));
    }
    out[i] = best;
  }
}

void face_slopes(std::span<const Vec3> vertices, std::span<const Triangle> triangles,
                 std::span<double> out) {
  constexpr double kDeg = 180.0 / 3.14159265358979323846;
  for (std::size_t f = 0; f < triangles.size(); ++f) {
    const auto& t = triangles[f];
    const Vec3 n = cross(vertices[t[1]] - vertices[t[0]], vertices[t[2]] - vertices[t[0]]);
    out[f] = std::atan2(std::hypot(n.x, n.y), std::abs(n.z)) * kDeg;
  }
}

void l0_gradient_shrink(std::span<const double> planes, int width, int height, int channels,
                        double threshold, std::span<double> grad_x, std::span<double> grad_y) {
  const std::size_t plane = static_cast<std::size_t>(width) * height;
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

}  // namespace parkforge::kernels::serial
