#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gce/image.hpp"

/// Floating-point reference model of the enhancement pipeline:
/// 5x5 Gaussian smoothing, scaled log2 compression, gain/offset stretch.
namespace gce::golden {

/// Integer 5x5 smoothing mask with its normalization denominator.
struct Kernel5 {
  std::array<std::array<int, 5>, 5> weights{};
  int denom = 1;

  /// True when weights sum to denom and are symmetric under horizontal,
  /// vertical and diagonal reflection.
  bool valid() const;
};

/// The fixed 1/273 mask used throughout the pipeline.
Kernel5 gaussian_kernel_5x5();

/// Sampled continuous Gaussian, normalized to unit sum.
struct RealKernel {
  int size = 0;
  std::vector<double> values;  // row-major size x size

  double at(int dx, int dy) const {  // offsets from the center
    const int c = size / 2;
    return values[static_cast<std::size_t>((dy + c) * size + (dx + c))];
  }
};

/// Raw (unnormalized) 2D Gaussian density at (x, y).
double gaussian_density(double x, double y, double sigma);

/// Samples the density on the integer grid centered at the origin and
/// normalizes. Throws std::invalid_argument for sigma <= 0 or an even/too
/// small size.
RealKernel gaussian_kernel_continuous(double sigma, int size);

struct EnhanceParams {
  double k = 1.5;
  double scale = 32.0;
  int d_max = 255;
  BorderPolicy border = BorderPolicy::replicate;

  void validate() const;
};

/// Weighted 25-tap sum over each pixel's neighborhood divided by the kernel
/// denominator. Output has the input's dimensions.
RealPlane convolve_5x5(const Plane& input, const Kernel5& kernel, BorderPolicy border);

/// scale * k * log2(1 + v) per sample; not clamped. Throws std::domain_error
/// on negative input.
RealPlane log_transform(const RealPlane& input, const EnhanceParams& params);

/// Stretches [min, max] of the plane onto [0, d_max] with round-half-up.
/// A range below 1e-9 bypasses the stretch and emits clamp(round(v)).
Plane gain_offset(const RealPlane& input, int d_max);

Plane enhance_channel(const Plane& input, const EnhanceParams& params = {});

/// Enhances each channel independently; `parallel` runs the three channels
/// on separate threads (results are identical either way).
RgbImage enhance_rgb(const RgbImage& input, const EnhanceParams& params = {},
                     bool parallel = false);

/// Half-up rounding used for every 8-bit quantization in the project.
inline long round_half_up(double v) { return static_cast<long>(std::floor(v + 0.5)); }

}  // namespace gce::golden
