#include <algorithm>
#include <cmath>

#include "parkforge/kernels.hpp"

namespace parkforge::kernels {

std::vector<float> gaussian_taps(double sigma) {
  if (sigma <= 0) return {1.0f};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> w(2 * radius + 1);
  double total = 0;
  for (int k = -radius; k <= radius; ++k) {
    w[k + radius] = std::exp(-0.5 * (k * k) / (sigma * sigma));
    total += w[k + radius];
  }
  std::vector<float> taps(w.size());
  std::transform(w.begin(), w.end(), taps.begin(), [&](double v) { return static_cast<float>(v / total); });
  return taps;
}

namespace {

std::array<std::uint8_t, 256> build_table(int subiteration) {
  std::array<std::uint8_t, 256> table{};
  for (int idx = 0; idx < 256; ++idx) {
    auto p = [idx](int k) { return (idx >> (k - 2)) & 1; };  // p(2)..p(9)
    int b = 0;
    for (int k = 2; k <= 9; ++k) b += p(k);
    int a = 0;
    for (int k = 2; k <= 9; ++k) {
      const int next = k == 9 ? 2 : k + 1;
      if (p(k) == 0 && p(next) == 1) ++a;
    }
    bool remove = b >= 2 && b <= 6 && a == 1;
    if (subiteration == 0) {
      remove = remove && p(2) * p(4) * p(6) == 0 && p(4) * p(6) * p(8) == 0;
    } else {
      remove = remove && p(2) * p(4) * p(8) == 0 && p(2) * p(6) * p(8) == 0;
    }
    table[idx] = remove ? 1 : 0;
  }
  return table;
}

}  // namespace

const std::array<std::uint8_t, 256>& zhang_suen_table(int subiteration) {
  static const std::array<std::array<std::uint8_t, 256>, 2> tables = {build_table(0), build_table(1)};
  return tables[subiteration & 1];
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

}  // namespace parkforge::kernels
