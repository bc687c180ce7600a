#include "parkforge/segmentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "parkforge/errors.hpp"
#include "parkforge/kernels.hpp"

namespace parkforge {

Rgb default_color(Category c) {
  switch (c) {
    case Category::green_space: return {34, 139, 34};
    case Category::water: return {0, 102, 204};
    case Category::road: return {128, 128, 128};
    case Category::pavement: return {210, 180, 140};
    case Category::building: return {178, 34, 34};
    case Category::red_line: return {255, 0, 0};
    case Category::city_road: return {64, 64, 64};
    case Category::plant: return {0, 200, 0};
  }
  return {};
}

Palette Palette::defaults() {
  Palette p;
  for (auto c : kAllCategories) p.entries.push_back({c, default_color(c), 20});
  return p;
}

const PaletteEntry* Palette::find(Category c) const {
  auto it = std::find_if(entries.begin(), entries.end(), [c](const auto& e) { return e.category == c; });
  return it == entries.end() ? nullptr : &*it;
}

void Palette::validate() const {
  for (auto c : kAllCategories) {
    const auto n = std::count_if(entries.begin(), entries.end(), [c](const auto& e) { return e.category == c; });
    if (n != 1) {
      throw ConfigError("palette must list category '" + std::string(to_string(c)) + "' exactly once");
    }
  }
  if (entries.size() != kAllCategories.size()) throw ConfigError("palette must have exactly 8 entries");
  for (const auto& e : entries) {
    if (e.tolerance < 0 || e.tolerance > 127) {
      throw ConfigError("palette tolerance for '" + std::string(to_string(e.category)) +
                        "' must be in [0,127]");
    }
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const auto& a = entries[i];
      const auto& b = entries[j];
      const int reach = a.tolerance + b.tolerance;
      const bool overlap = std::abs(a.reference.r - b.reference.r) <= reach &&
                           std::abs(a.reference.g - b.reference.g) <= reach &&
                           std::abs(a.reference.b - b.reference.b) <= reach;
      if (overlap) {
        throw ConfigError("palette ranges of '" + std::string(to_string(a.category)) + "' and '" +
                          std::string(to_string(b.category)) + "' overlap");
      }
    }
  }
}

std::vector<CategoryMask> segment(const RasterPlan& plan, const Palette& palette) {
  plan.validate();
  palette.validate();

  std::vector<kernels::ColorBox> boxes;
  for (auto c : kAllCategories) {
    const auto& e = *palette.find(c);
    const int ref[3] = {e.reference.r, e.reference.g, e.reference.b};
    kernels::ColorBox box;
    for (int k = 0; k < 3; ++k) {
      box.lo[k] = ref[k] - e.tolerance;
      box.hi[k] = ref[k] + e.tolerance;
    }
    boxes.push_back(box);
  }

  std::vector<std::int8_t> labels(plan.pixel_count());
  kernels::omp::classify_pixels(plan.pixels, boxes, labels);

  std::vector<CategoryMask> masks;
  for (auto c : kAllCategories) masks.push_back(CategoryMask::empty(c, plan.width, plan.height));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= 0) masks[labels[i]].bits[i] = 255;
  }
  return masks;
}

}  // namespace parkforge
