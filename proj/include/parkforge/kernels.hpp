#pragma once

// Data-parallel inner loops used across the pipeline.
//
// Every kernel exists twice with identical signatures: `serial::` is the
// straightforward reference, `omp::` is the OpenMP version the library calls.
// Both must produce bit-identical output; tests/kernels_test.cpp and the
// benchmark target compare them.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "parkforge/types.hpp"

namespace parkforge::kernels {

/// Inclusive per-channel color box for one palette entry.
struct ColorBox {
  std::array<int, 3> lo{};
  std::array<int, 3> hi{};
};

using Triangle = std::array<std::uint32_t, 3>;

namespace serial {

/// Separable Gaussian with clamp-to-edge borders; sigma 0 copies.
void gaussian_blur(std::span<const float> in, std::span<float> out, int width, int height,
                   double sigma);

/// Square-window min/max over the in-bounds part of the window, {0,255} grids.
void erode(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width, int height,
           int kernel);
void dilate(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width, int height,
            int kernel);

/// Zhang-Suen thinning in place (outside the grid counts as background).
/// Returns the number of full passes run.
int zhang_suen_thin(std::span<std::uint8_t> img, int width, int height);

/// labels[i] = index of the first box containing pixel i, or -1.
void classify_pixels(std::span<const std::uint8_t> rgb, std::span<const ColorBox> boxes,
                     std::span<std::int8_t> labels);

/// Euclidean distance from each point to the nearest edge of a closed ring.
void distance_to_ring(std::span<const Vec2> points, std::span<const Vec2> ring,
                      std::span<double> out);

/// Inclination of each triangle's plane from horizontal, in degrees.
void face_slopes(std::span<const Vec3> vertices, std::span<const Triangle> triangles,
                 std::span<double> out);

/// Auxiliary step of L0 smoothing. For each pixel take the periodic forward
/// differences of every channel; keep them if their summed squares reach
/// `threshold`, else write zeros. Planes are channel-major.
void l0_gradient_shrink(std::span<const double> planes, int width, int height, int channels,
                        double threshold, std::span<double> grad_x, std::span<double> grad_y);

}  // namespace serial

namespace omp {

void gaussian_blur(std::span<const float> in, std::span<float> out, int width, int height,
                   double sigma);
void erode(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width, int height,
           int kernel);
void dilate(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width, int height,
            int kernel);
int zhang_suen_thin(std::span<std::uint8_t> img, int width, int height);
void classify_pixels(std::span<const std::uint8_t> rgb, std::span<const ColorBox> boxes,
                     std::span<std::int8_t> labels);
void distance_to_ring(std::span<const Vec2> points, std::span<const Vec2> ring,
                      std::span<double> out);
void face_slopes(std::span<const Vec3> vertices, std::span<const Triangle> triangles,
                 std::span<double> out);
void l0_gradient_shrink(std::span<const double> planes, int width, int height, int channels,
                        double threshold, std::span<double> grad_x, std::span<double> grad_y);

}  // namespace omp

/// Normalized 1-D Gaussian taps, radius ceil(3 sigma).
std::vector<float> gaussian_taps(double sigma);

/// Zhang-Suen removal tables for subiteration 0 or 1, indexed by the
/// 8-neighbour bitmask (bit k set when P(k+2) is foreground; P2 = north,
/// then clockwise). A 1 entry means the centre pixel is removed.
const std::array<std::uint8_t, 256>& zhang_suen_table(int subiteration);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

}  // namespace parkforge::kernels
