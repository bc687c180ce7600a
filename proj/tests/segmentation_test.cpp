#include <gtest/gtest.h>

#include <random>
#include <string>

#include "fixtures.hpp"
#include "parkforge/errors.hpp"
#include "parkforge/raster_prep.hpp"
#include "parkforge/segmentation.hpp"

using namespace parkforge;

namespace {

const CategoryMask& mask_of(const std::vector<CategoryMask>& masks, Category c) {
  for (const auto& m : masks)
    if (m.category == c) return m;
  throw std::runtime_error("missing mask");
}

}  // namespace

TEST(Segment, AllWater) {
  const auto masks = segment(RasterPlan::filled(4, 4, default_color(Category::water)), Palette::defaults());
  ASSERT_EQ(masks.size(), 8u);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    EXPECT_EQ(masks[i].category, kAllCategories[i]);
    EXPECT_EQ(masks[i].foreground_count(), masks[i].category == Category::water ? 16u : 0u);
  }
  for (auto v : mask_of(masks, Category::water).bits) EXPECT_EQ(v, 255);
}

TEST(Segment, OnePixelPerCategory) {
  auto plan = RasterPlan::filled(8, 1, {0, 0, 0});
  for (int i = 0; i < 8; ++i) plan.set(i, 0, default_color(kAllCategories[i]));
  const auto masks = segment(plan, Palette::defaults());
  for (int i = 0; i < 8; ++i) {
    EXPECT_EQ(masks[i].foreground_count(), 1u);
    EXPECT_TRUE(masks[i].at(i, 0));
  }
}

TEST(Segment, GreenRectangleCountExact) {
  auto plan = RasterPlan::filled(50, 40, default_color(Category::pavement));
  for (int y = 7; y < 29; ++y)
    for (int x = 11; x < 44; ++x) plan.set(x, y, default_color(Category::green_space));
  const auto masks = segment(plan, Palette::defaults());
  EXPECT_EQ(mask_of(masks, Category::green_space).foreground_count(), 33u * 22u);
  EXPECT_EQ(mask_of(masks, Category::pavement).foreground_count(), 50u * 40u - 33u * 22u);
}

TEST(Segment, ToleranceBoxIsInclusive) {
  const Rgb ref = default_color(Category::road);
  auto plan = RasterPlan::filled(2, 1, ref);
  plan.set(0, 0, {static_cast<std::uint8_t>(std::min(255, ref.r + 20)), ref.g, ref.b});
  plan.set(1, 0, {static_cast<std::uint8_t>(std::min(255, ref.r + 21)), ref.g, ref.b});
  const auto masks = segment(plan, Palette::defaults());
  const auto& road = mask_of(masks, Category::road);
  if (ref.r + 21 <= 255) {
    EXPECT_TRUE(road.at(0, 0));
    EXPECT_FALSE(road.at(1, 0));
  }
}

TEST(Segment, MasksAreDisjoint) {
  const auto masks = segment(fixtures::full_plan(), Palette::defaults());
  for (std::size_t p = 0; p < 256u * 256u; ++p) {
    int n = 0;
    for (const auto& m : masks) n += m.bits[p] != 0;
    EXPECT_LE(n, 1);
  }
}

TEST(Palette, OverlapNamesBothCategories) {
  auto pal = Palette::defaults();
  for (auto& e : pal.entries)
    if (e.category == Category::road) e.reference = default_color(Category::pavement);
  try {
    pal.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("road"), std::string::npos) << msg;
    EXPECT_NE(msg.find("pavement"), std::string::npos) << msg;
  }
  EXPECT_THROW(segment(RasterPlan::filled(2, 2, {0, 0, 0}), pal), ConfigError);
}

TEST(Palette, DefaultsValidAndComplete) {
  const auto pal = Palette::defaults();
  EXPECT_NO_THROW(pal.validate());
  for (auto c : kAllCategories) ASSERT_NE(pal.find(c), nullptr);
}

TEST(Palette, RejectsMissingCategoryAndBadTolerance) {
  auto pal = Palette::defaults();
  pal.entries.pop_back();
  EXPECT_THROW(pal.validate(), ConfigError);
  pal = Palette::defaults();
  pal.entries[0].tolerance = 200;
  EXPECT_THROW(pal.validate(), ConfigError);
}

TEST(Segment, SmoothedNoisyPlanSegmentsLikeClean) {
  auto clean = RasterPlan::filled(48, 48, default_color(Category::pavement));
  for (int y = 10; y < 38; ++y)
    for (int x = 8; x < 30; ++x) clean.set(x, y, default_color(Category::water));
  auto noisy = clean;
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> coord(0, 47), d(-6, 6);
  for (int i = 0; i < 200; ++i) {
    const int x = coord(gen), y = coord(gen);
    Rgb c = noisy.at(x, y);
    c.r = static_cast<std::uint8_t>(std::clamp(c.r + d(gen), 0, 255));
    c.g = static_cast<std::uint8_t>(std::clamp(c.g + d(gen), 0, 255));
    noisy.set(x, y, c);
  }
  const auto a = segment(smooth(noisy, 0.02), Palette::defaults());
  const auto b = segment(clean, Palette::defaults());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].bits, b[i].bits) << to_string(a[i].category);
}
