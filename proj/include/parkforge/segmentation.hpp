#pragma once

#include <vector>

#include "parkforge/types.hpp"

namespace parkforge {

struct PaletteEntry {
  Category category;
  Rgb reference;
  int tolerance = 20;  // per-channel half-width, 0..127
};

/// One color range per landscape category. Ranges must be pairwise disjoint.
struct Palette {
  std::vector<PaletteEntry> entries;

  /// The built-in palette: every category with tolerance 20.
  static Palette defaults();

  const PaletteEntry* find(Category c) const;

  /// Throws ConfigError if a category is missing or duplicated, a tolerance
  /// is out of range, or two color ranges overlap (message names both).
  void validate() const;
};

/// Default display/reference color of a category.
Rgb default_color(Category c);

/// Scans every pixel and returns one mask per category, in `kAllCategories`
/// order. A pixel is foreground in the mask whose range contains all three of
/// its channels.
std::vector<CategoryMask> segment(const RasterPlan& plan, const Palette& palette);

}  // namespace parkforge
