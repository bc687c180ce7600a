#include "parkforge/png_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "parkforge/errors.hpp"

namespace parkforge::png {

namespace {

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  if (bytes.empty()) throw IoError("'" + path.string() + "' is empty");
  return bytes;
}

std::vector<std::uint8_t> decode(const std::filesystem::path& path, std::uint32_t format,
                                 int& width, int& height) {
  const auto bytes = slurp(path);
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw FormatError("'" + path.string() + "' is not a PNG image");
  }
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw FormatError("cannot decode '" + path.string() + "': " + image.message);
  }
  image.format = format;
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw ValidationError("'" + path.string() + "' has a zero dimension");
  }
  std::vector<std::uint8_t> out(PNG_IMAGE_SIZE(image));
  // Composite any alpha against black; the alpha channel itself is discarded.
  png_color background{0, 0, 0};
  if (!png_image_finish_read(&image, &background, out.data(), 0, nullptr)) {
    png_image_free(&image);
    throw FormatError("cannot decode '" + path.string() + "': " + image.message);
  }
  width = static_cast<int>(image.width);
  height = static_cast<int>(image.height);
  return out;
}

void encode(const std::filesystem::path& path, int width, int height, std::uint32_t format,
            std::span<const std::uint8_t> data) {
  if (width <= 0 || height <= 0) throw ValidationError("cannot write a PNG with a zero dimension");
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (data.size() != PNG_IMAGE_SIZE(image)) throw ValidationError("PNG pixel buffer size mismatch");

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, data.data(), 0, nullptr)) {
    throw FormatError(std::string("PNG encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> buffer(size);
  if (!png_image_write_to_memory(&image, buffer.data(), &size, 0, data.data(), 0, nullptr)) {
    throw FormatError(std::string("PNG encode failed: ") + image.message);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(buffer.data()), static_cast<std::streamsize>(size));
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

}  // namespace

RasterPlan read_rgb(const std::filesystem::path& path, double scale) {
  RasterPlan plan;
  plan.scale = scale;
  plan.pixels = decode(path, PNG_FORMAT_RGB, plan.width, plan.height);
  plan.validate();
  return plan;
}

CategoryMask read_mask(const std::filesystem::path& path, Category category) {
  CategoryMask mask;
  mask.category = category;
  mask.bits = decode(path, PNG_FORMAT_GRAY, mask.width, mask.height);
  for (auto& v : mask.bits) v = v >= 128 ? 255 : 0;
  return mask;
}

void write_rgb(const std::filesystem::path& path, int width, int height,
               std::span<const std::uint8_t> rgb) {
  encode(path, width, height, PNG_FORMAT_RGB, rgb);
}

void write_gray(const std::filesystem::path& path, int width, int height,
                std::span<const std::uint8_t> gray) {
  encode(path, width, height, PNG_FORMAT_GRAY, gray);
}

}  // namespace parkforge::png
