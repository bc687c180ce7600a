#include "parkforge/raster_prep.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "parkforge/errors.hpp"
#include "parkforge/kernels.hpp"
#include "parkforge/png_io.hpp"

namespace parkforge {

RasterPlan load_plan(const std::filesystem::path& path, double scale) {
  if (!(scale > 0)) throw ValidationError("plan scale must be positive");
  return png::read_rgb(path, scale);
}

namespace {

// The FFTW planner is not re-entrant; executing an existing plan is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (!p) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

class Fft2d {
 public:
  Fft2d(int width, int height)
      : width_(width),
        height_(height),
        spatial_(fftw_buffer<double>(static_cast<std::size_t>(width) * height)),
        freq_(fftw_buffer<fftw_complex>(static_cast<std::size_t>(height) * (width / 2 + 1))) {
    std::lock_guard lock(fftw_planner_mutex());
    forward_ = fftw_plan_dft_r2c_2d(height, width, spatial_.get(), freq_.get(), FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_2d(height, width, freq_.get(), spatial_.get(), FFTW_ESTIMATE);
  }
  ~Fft2d() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  double* spatial() { return spatial_.get(); }
  fftw_complex* freq() { return freq_.get(); }
  std::size_t freq_size() const { return static_cast<std::size_t>(height_) * (width_ / 2 + 1); }
  void forward() { fftw_execute(forward_); }
  void inverse() { fftw_execute(inverse_); }

 private:
  int width_, height_;
  FftwBuffer<double> spatial_;
  FftwBuffer<fftw_complex> freq_;
  fftw_plan forward_{};
  fftw_plan inverse_{};
};

}  // namespace

RasterPlan smooth(const RasterPlan& plan, const SmoothingParams& params) {
  plan.validate();
  if (params.lambda < 0) throw ValidationError("smoothing lambda must be >= 0");
  if (params.lambda == 0) return plan;
  if (!(params.beta_growth > 1)) throw ValidationError("smoothing penalty growth must exceed 1");

  const int w = plan.width, h = plan.height;
  const std::size_t n = plan.pixel_count();
  constexpr int kChannels = 3;

  std::vector<double> img(kChannels * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < kChannels; ++c) img[c * n + i] = plan.pixels[3 * i + c] / 255.0;
  }

  Fft2d fft(w, h);
  const int half = w / 2 + 1;
  const std::size_t nf = fft.freq_size();

  // Spectrum of the input and of the periodic difference operators.
  std::vector<std::complex<double>> input_spec(kChannels * nf);
  for (int c = 0; c < kChannels; ++c) {
    std::copy_n(img.data() + c * n, n, fft.spatial());
    fft.forward();
    for (std::size_t k = 0; k < nf; ++k) input_spec[c * nf + k] = {fft.freq()[k][0], fft.freq()[k][1]};
  }
  std::vector<double> grad_energy(nf);
  for (int ky = 0; ky < h; ++ky) {
    const double ey = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * ky / h);
    for (int kx = 0; kx < half; ++kx) {
      const double ex = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * kx / w);
      grad_energy[static_cast<std::size_t>(ky) * half + kx] = ex + ey;
    }
  }

  std::vector<double> s = img;
  std::vector<double> gx(kChannels * n), gy(kChannels * n);
  const double inv_n = 1.0 / static_cast<double>(n);

  for (double beta = 2.0 * params.lambda; beta < params.beta_max; beta *= params.beta_growth) {
    kernels::omp::l0_gradient_shrink(s, w, h, kChannels, params.lambda / beta, gx, gy);

    for (int c = 0; c < kChannels; ++c) {
      const double* hx = gx.data() + c * n;
      const double* vy = gy.data() + c * n;
      double* div = fft.spatial();
      // Adjoint of the forward differences: (Dx^T h)(x) = h(x-1) - h(x).
#pragma omp parallel for schedule(static)
      for (int y = 0; y < h; ++y) {
        const int yp = (y + h - 1) % h;
        for (int x = 0; x < w; ++x) {
          const int xp = (x + w - 1) % w;
          const std::size_t i = static_cast<std::size_t>(y) * w + x;
          div[i] = hx[static_cast<std::size_t>(y) * w + xp] - hx[i] + vy[static_cast<std::size_t>(yp) * w + x] - vy[i];
        }
      }
      fft.forward();
      fftw_complex* f = fft.freq();
      for (std::size_t k = 0; k < nf; ++k) {
        const std::complex<double> num = input_spec[c * nf + k] + beta * std::complex<double>(f[k][0], f[k][1]);
        const std::complex<double> val = num / (1.0 + beta * grad_energy[k]);
        f[k][0] = val.real();
        f[k][1] = val.imag();
      }
      fft.inverse();
      double* out = s.data() + c * n;
      for (std::size_t i = 0; i < n; ++i) out[i] = fft.spatial()[i] * inv_n;
    }
  }

  RasterPlan result = plan;
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < kChannels; ++c) {
      const double v = std::round(s[c * n + i] * 255.0);
      result.pixels[3 * i + c] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
  }
  return result;
}

RasterPlan enhance(const RasterPlan& plan, double sharpen_amount, double contrast_gain,
                   double blur_sigma) {
  plan.validate();
  if (sharpen_amount < 0) throw ValidationError("sharpen amount must be >= 0");
  if (!(contrast_gain > 0)) throw ValidationError("contrast gain must be > 0");
  if (blur_sigma < 0) throw ValidationError("blur sigma must be >= 0");

  const std::size_t n = plan.pixel_count();
  RasterPlan result = plan;
  std::vector<float> channel(n), blurred(n);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < n; ++i) channel[i] = plan.pixels[3 * i + c];
    if (sharpen_amount > 0) {
      kernels::omp::gaussian_blur(channel, blurred, plan.width, plan.height, blur_sigma);
    } else {
      blurred = channel;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double o = channel[i];
      double v = o + sharpen_amount * (o - static_cast<double>(blurred[i]));
      v = 128.0 + contrast_gain * (v - 128.0);
      result.pixels[3 * i + c] = static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
    }
  }
  return result;
}

}  // namespace parkforge
