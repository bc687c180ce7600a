#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace parkforge {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// The eight landscape element classes a plan is annotated with.
enum class Category : int {
  green_space = 0,
  water,
  road,
  pavement,
  building,
  red_line,
  city_road,
  plant,
};

inline constexpr std::array<Category, 8> kAllCategories = {
    Category::green_space, Category::water,    Category::road,      Category::pavement,
    Category::building,    Category::red_line, Category::city_road, Category::plant,
};

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view name);

struct Vec2 {
  double x = 0, y = 0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

struct Vec3 {
  double x = 0, y = 0, z = 0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// RGB raster of a layout plan. Pixels are row-major RGB triples.
struct RasterPlan {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
  double scale = 1.0;  // meters per pixel

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  Rgb at(int x, int y) const {
    const auto i = 3 * (static_cast<std::size_t>(y) * width + x);
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const auto i = 3 * (static_cast<std::size_t>(y) * width + x);
    pixels[i] = c.r;
    pixels[i + 1] = c.g;
    pixels[i + 2] = c.b;
  }

  /// Throws ValidationError when dimensions, buffer size or scale are off.
  void validate() const;

  static RasterPlan filled(int width, int height, Rgb color, double scale = 1.0);
};

/// Binary grid for one category; foreground 255, background 0.
struct CategoryMask {
  Category category = Category::green_space;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  static CategoryMask empty(Category c, int width, int height) {
    return {c, width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0)};
  }
  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool on) {
    bits[static_cast<std::size_t>(y) * width + x] = on ? 255 : 0;
  }
  std::size_t foreground_count() const;
  void validate() const;
};

}  // namespace parkforge
