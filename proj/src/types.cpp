#include "parkforge/types.hpp"

#include <algorithm>
#include <string>

#include "parkforge/errors.hpp"

namespace parkforge {

namespace {
constexpr std::array<std::string_view, 8> kNames = {
    "green_space", "water", "road", "pavement", "building", "red_line", "city_road", "plant",
};
}

std::string_view to_string(Category c) { return kNames[static_cast<int>(c)]; }

std::optional<Category> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Category>(i);
  }
  return std::nullopt;
}

void RasterPlan::validate() const {
  if (width <= 0 || height <= 0) {
    throw ValidationError("raster plan has zero dimension (" + std::to_string(width) + "x" +
                          std::to_string(height) + ")");
  }
  if (pixels.size() != 3 * pixel_count()) {
    throw ValidationError("raster plan buffer holds " + std::to_string(pixels.size()) +
                          " bytes, expected " + std::to_string(3 * pixel_count()));
  }
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw ValidationError("raster plan scale must be positive, got " + std::to_string(scale));
  }
}

RasterPlan RasterPlan::filled(int width, int height, Rgb color, double scale) {
  RasterPlan p;
  p.width = width;
  p.height = height;
  p.scale = scale;
  p.pixels.resize(3 * p.pixel_count());
  for (std::size_t i = 0; i < p.pixel_count(); ++i) {
    p.pixels[3 * i] = color.r;
    p.pixels[3 * i + 1] = color.g;
    p.pixels[3 * i + 2] = color.b;
  }
  return p;
}

std::size_t CategoryMask::foreground_count() const {
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(), [](auto v) { return v != 0; }));
}

void CategoryMask::validate() const {
  if (width <= 0 || height <= 0) throw ValidationError("mask has zero dimension");
  if (bits.size() != static_cast<std::size_t>(width) * height) {
    throw ValidationError("mask buffer size does not match its dimensions");
  }
  for (auto v : bits) {
    if (v != 0 && v != 255) throw ValidationError("mask values must be exactly 0 or 255");
  }
}

}  // namespace parkforge
