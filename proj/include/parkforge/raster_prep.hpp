#pragma once

#include <filesystem>

#include "parkforge/types.hpp"

namespace parkforge {

struct SmoothingParams {
  double lambda = 0.02;          // weight of the gradient-count term
  double beta_growth = 2.0;      // penalty multiplier per outer iteration
  double beta_max = 1e5;         // iteration stops once the penalty reaches this
};

/// Loads a PNG layout plan as 8-bit RGB with the given meters-per-pixel scale.
RasterPlan load_plan(const std::filesystem::path& path, double scale = 1.0);

/// Edge-preserving L0 gradient-minimization smoothing.
///
/// Minimizes |S - I|^2 + lambda * #{p : grad S(p) != 0} over RGB images in
/// [0,1] by half-quadratic splitting: alternately thresholds auxiliary
/// gradients and solves the quadratic subproblem in the Fourier domain
/// (periodic boundaries). The penalty starts at 2*lambda and grows by
/// `beta_growth` until it reaches `beta_max`. lambda == 0 returns the input.
RasterPlan smooth(const RasterPlan& plan, const SmoothingParams& params = {});
inline RasterPlan smooth(const RasterPlan& plan, double lambda) {
  SmoothingParams p;
  p.lambda = lambda;
  return smooth(plan, p);
}

/// Unsharp masking followed by a linear contrast stretch about mid-gray (128):
///   v = o + amount * (o - gaussian(o));  v = 128 + gain * (v - 128)
/// Channels are rounded and clamped to [0,255].
RasterPlan enhance(const RasterPlan& plan, double sharpen_amount, double contrast_gain,
                   double blur_sigma = 1.0);

}  // namespace parkforge
