#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "parkforge/errors.hpp"
#include "parkforge/png_io.hpp"
#include "parkforge/raster_prep.hpp"

namespace fs = std::filesystem;
using namespace parkforge;

namespace {

fs::path tmp(const std::string& name) {
  const fs::path dir = fs::path(PARKFORGE_TMP) / "raster_prep";
  fs::create_directories(dir);
  return dir / name;
}

RasterPlan two_region(int w, int h, Rgb a, Rgb b) {
  auto p = RasterPlan::filled(w, h, a);
  for (int y = 0; y < h; ++y)
    for (int x = w / 2; x < w; ++x) p.set(x, y, b);
  return p;
}

}  // namespace

TEST(LoadPlan, Reads256Plan) {
  const auto path = tmp("plan256.png");
  png::write_plan(path, fixtures::full_plan());
  const auto p = load_plan(path, 0.5);
  EXPECT_EQ(p.width, 256);
  EXPECT_EQ(p.height, 256);
  EXPECT_EQ(p.scale, 0.5);
  EXPECT_EQ(p.pixels, fixtures::full_plan().pixels);
}

TEST(LoadPlan, SingleRedPixel) {
  const auto path = tmp("red.png");
  const std::vector<std::uint8_t> px{255, 0, 0};
  png::write_rgb(path, 1, 1, px);
  const auto p = load_plan(path);
  ASSERT_EQ(p.pixel_count(), 1u);
  EXPECT_EQ(p.at(0, 0), (Rgb{255, 0, 0}));
}

TEST(LoadPlan, GrayscalePngBecomesRgb) {
  const auto path = tmp("gray.png");
  const std::vector<std::uint8_t> px{0, 77, 255, 12};
  png::write_gray(path, 2, 2, px);
  const auto p = load_plan(path);
  EXPECT_EQ(p.at(1, 0), (Rgb{77, 77, 77}));
}

TEST(LoadPlan, ErrorKinds) {
  const auto empty = tmp("empty.png");
  std::ofstream(empty).close();
  EXPECT_THROW(load_plan(empty), IoError);
  EXPECT_THROW(load_plan(tmp("does_not_exist.png")), IoError);
  const auto junk = tmp("junk.png");
  std::ofstream(junk) << "this is not a png at all";
  EXPECT_THROW(load_plan(junk), FormatError);
  EXPECT_THROW(load_plan(tmp("red.png"), 0.0), ValidationError);
}

TEST(Smooth, ConstantImageUnchanged) {
  const auto p = RasterPlan::filled(24, 16, {40, 120, 200});
  EXPECT_EQ(smooth(p, 0.05).pixels, p.pixels);
}

TEST(Smooth, LambdaZeroIsIdentity) {
  std::mt19937 gen(1);
  auto p = RasterPlan::filled(20, 20, {0, 0, 0});
  for (auto& v : p.pixels) v = static_cast<std::uint8_t>(gen());
  EXPECT_EQ(smooth(p, 0.0).pixels, p.pixels);
}

// Two-region plan with 1% of pixels replaced. `amplitude` bounds the
// per-channel change; 255 means arbitrary random colors.
RasterPlan flipped_plan(const RasterPlan& clean, int amplitude, unsigned seed,
                        std::vector<std::pair<int, int>>& flipped) {
  RasterPlan noisy = clean;
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> cx(0, clean.width - 1), cy(0, clean.height - 1), d(-amplitude, amplitude);
  const std::size_t count = clean.pixel_count() / 100;
  while (flipped.size() < count) {
    const int x = cx(gen), y = cy(gen);
    if (std::find(flipped.begin(), flipped.end(), std::pair{x, y}) != flipped.end()) continue;
    Rgb c = clean.at(x, y);
    auto shift = [&](std::uint8_t v) { return static_cast<std::uint8_t>(std::clamp(v + d(gen), 0, 255)); };
    c = {shift(c.r), shift(c.g), shift(c.b)};
    noisy.set(x, y, c);
    flipped.emplace_back(x, y);
  }
  return noisy;
}

TEST(Smooth, MatchesReferenceImplementation) {
  const auto clean = two_region(64, 48, {120, 200, 80}, {60, 90, 220});
  std::vector<std::pair<int, int>> flipped;
  const auto noisy = flipped_plan(clean, 255, 11, flipped);
  const auto in = tmp("l0_in.raw"), out = tmp("l0_out.raw");
  std::ofstream(in, std::ios::binary).write(reinterpret_cast<const char*>(noisy.pixels.data()), noisy.pixels.size());
  const std::string cmd = std::string(PARKFORGE_PYTHON) + " '" + PARKFORGE_TEST_TOOLS + "/l0_reference.py' '" +
                          in.string() + "' '" + out.string() + "' 64 48 0.02";
  ASSERT_EQ(std::system(cmd.c_str()), 0) << cmd;
  std::ifstream ref_in(out, std::ios::binary);
  const std::vector<std::uint8_t> ref((std::istreambuf_iterator<char>(ref_in)), {});
  const auto got = smooth(noisy, 0.02);
  ASSERT_EQ(ref.size(), got.pixels.size());
  int worst = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(ref[i] - got.pixels[i]));
  EXPECT_LE(worst, 1);
}

TEST(Smooth, RestoresLowAmplitudeFlips) {
  const Rgb a{120, 200, 80}, b{60, 90, 220};
  const auto clean = two_region(64, 64, a, b);
  std::vector<std::pair<int, int>> flipped;
  const auto noisy = flipped_plan(clean, 12, 7, flipped);
  const auto out = smooth(noisy, 0.02);
  std::size_t restored = 0;
  for (auto [x, y] : flipped) restored += out.at(x, y) == clean.at(x, y);
  EXPECT_GE(restored, 0.95 * flipped.size()) << restored << "/" << flipped.size();
}

TEST(Smooth, KeepsTwoRegionEdge) {
  const auto clean = two_region(32, 32, {255, 255, 255}, {0, 0, 0});
  EXPECT_EQ(smooth(clean, 0.02).pixels, clean.pixels);
}

TEST(Enhance, IdentityParameters) {
  std::mt19937 gen(2);
  auto p = RasterPlan::filled(15, 9, {0, 0, 0});
  for (auto& v : p.pixels) v = static_cast<std::uint8_t>(gen());
  EXPECT_EQ(enhance(p, 0.0, 1.0).pixels, p.pixels);
}

TEST(Enhance, ConstantStaysConstant) {
  const auto p = RasterPlan::filled(10, 10, {100, 30, 250});
  const auto out = enhance(p, 0.8, 1.5);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 10; ++x) EXPECT_EQ(out.at(x, y), out.at(0, 0));
  EXPECT_EQ(out.at(0, 0), (Rgb{86, 0, 255}));  // 128 + 1.5 (v - 128), clamped
}

TEST(Enhance, StepEdgeOvershootMatchesHandConvolution) {
  const int w = 20;
  auto p = RasterPlan::filled(w, 5, {100, 100, 100});
  for (int y = 0; y < 5; ++y)
    for (int x = w / 2; x < w; ++x) p.set(x, y, {200, 200, 200});
  const auto out = enhance(p, 1.0, 1.0);

  // 1-D profile: sigma 1, radius 3 taps, clamped borders.
  double taps[7], s = 0;
  for (int k = -3; k <= 3; ++k) s += taps[k + 3] = std::exp(-0.5 * k * k);
  int lo = 255, hi = 0;
  for (int x = 0; x < w; ++x) {
    double blur = 0;
    for (int k = -3; k <= 3; ++k) blur += taps[k + 3] / s * (std::clamp(x + k, 0, w - 1) < w / 2 ? 100 : 200);
    const double o = x < w / 2 ? 100 : 200;
    const double expect = std::clamp(std::round(o + (o - blur)), 0.0, 255.0);
    EXPECT_NEAR(out.at(x, 2).r, expect, 1.0) << "x=" << x;
    if (std::abs(x - w / 2) <= 3) {
      lo = std::min<int>(lo, out.at(x, 2).r);
      hi = std::max<int>(hi, out.at(x, 2).r);
    }
  }
  EXPECT_GT(hi, 200);
  EXPECT_LT(lo, 100);
}

TEST(Enhance, RejectsBadParameters) {
  const auto p = RasterPlan::filled(4, 4, {1, 2, 3});
  EXPECT_THROW(enhance(p, -1, 1), ValidationError);
  EXPECT_THROW(enhance(p, 0, 0), ValidationError);
}
