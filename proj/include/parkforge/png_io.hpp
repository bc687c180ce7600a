#pragma once

#include <cstdint>
#include <filesystem>
#include <span>

#include "parkforge/types.hpp"

namespace parkforge::png {

/// Decodes any PNG into 8-bit RGB, dropping alpha.
/// Missing, unreadable or empty files raise IoError; non-PNG or corrupt data
/// raises FormatError.
RasterPlan read_rgb(const std::filesystem::path& path, double scale = 1.0);

/// Reads a PNG as 8-bit grayscale and thresholds it to {0,255}.
CategoryMask read_mask(const std::filesystem::path& path, Category category);

void write_rgb(const std::filesystem::path& path, int width, int height,
               std::span<const std::uint8_t> rgb);
void write_gray(const std::filesystem::path& path, int width, int height,
                std::span<const std::uint8_t> gray);

inline void write_plan(const std::filesystem::path& path, const RasterPlan& plan) {
  write_rgb(path, plan.width, plan.height, plan.pixels);
}
inline void write_mask(const std::filesystem::path& path, const CategoryMask& mask) {
  write_gray(path, mask.width, mask.height, mask.bits);
}

}  // namespace parkforge::png
