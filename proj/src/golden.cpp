#include "gce/golden.hpp"

#include <algorithm>
#include <future>
#include <numbers>
#include <stdexcept>

namespace gce::golden {

bool Kernel5::valid() const {
  if (denom <= 0) return false;
  long sum = 0;
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) {
      const int w = weights[y][x];
      if (w < 0) return false;
      if (w != weights[y][4 - x] || w != weights[4 - y][x] || w != weights[x][y]) return false;
      sum += w;
    }
  }
  return sum == denom;
}

Kernel5 gaussian_kernel_5x5() {
  Kernel5 k;
  k.weights = {{{1, 4, 7, 4, 1},
                {4, 16, 26, 16, 4},
                {7, 26, 41, 26, 7},
                {4, 16, 26, 16, 4},
                {1, 4, 7, 4, 1}}};
  k.denom = 273;
  return k;
}

double gaussian_density(double x, double y, double sigma) {
  const double s2 = sigma * sigma;
  return std::exp(-(x * x + y * y) / (2.0 * s2)) / (2.0 * std::numbers::pi * s2);
}

RealKernel gaussian_kernel_continuous(double sigma, int size) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian sigma must be positive");
  }
  if (size < 3 || size % 2 == 0) {
    throw std::invalid_argument("gaussian kernel size must be odd and at least 3");
  }
  RealKernel k;
  k.size = size;
  k.values.resize(static_cast<std::size_t>(size) * size);
  const int c = size / 2;
  double total = 0.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double g = gaussian_density(x - c, y - c, sigma);
      k.values[static_cast<std::size_t>(y * size + x)] = g;
      total += g;
    }
  }
  for (double& v : k.values) v /= total;
  return k;
}

void EnhanceParams::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("log gain k must be > 0");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("log scale must be > 0");
  }
  if (d_max != 255) throw std::invalid_argument("d_max must be 255 for 8-bit output");
}

RealPlane convolve_5x5(const Plane& input, const Kernel5& kernel, BorderPolicy border) {
  if (input.empty()) throw std::invalid_argument("cannot convolve an empty plane");
  const auto w = static_cast<std::ptrdiff_t>(input.width());
  const auto h = static_cast<std::ptrdiff_t>(input.height());
  RealPlane out(input.width(), input.height());
  const double inv = 1.0 / kernel.denom;
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      long acc = 0;
      for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
          acc += static_cast<long>(kernel.weights[dy + 2][dx + 2]) *
                 sample(input, x + dx, y + dy, border);
        }
      }
      out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc * inv;
    }
  }
  return out;
}

RealPlane log_transform(const RealPlane& input, const EnhanceParams& params) {
  params.validate();
  const double gain = params.scale * params.k;
  std::vector<double> out(input.size());
  std::transform(input.data().begin(), input.data().end(), out.begin(), [gain](double v) {
    if (v < 0.0) throw std::domain_error("log transform input must be non-negative");
    return gain * std::log2(1.0 + v);
  });
  return RealPlane(input.width(), input.height(), std::move(out));
}

Plane gain_offset(const RealPlane& input, int d_max) {
  const auto [lo_it, hi_it] = std::minmax_element(input.data().begin(), input.data().end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  auto quantize = [d_max](double v) {
    return static_cast<std::uint8_t>(std::clamp<long>(round_half_up(v), 0, d_max));
  };
  std::vector<std::uint8_t> out(input.size());
  if (range < 1e-9) {
    std::transform(input.data().begin(), input.data().end(), out.begin(), quantize);
  } else {
    const double gain = d_max / range;
    std::transform(input.data().begin(), input.data().end(), out.begin(),
                   [&](double v) { return quantize(gain * (v - lo)); });
  }
  return Plane(input.width(), input.height(), std::move(out));
}

Plane enhance_channel(const Plane& input, const EnhanceParams& params) {
  params.validate();
  const RealPlane smoothed = convolve_5x5(input, gaussian_kernel_5x5(), params.border);
  return gain_offset(log_transform(smoothed, params), params.d_max);
}

RgbImage enhance_rgb(const RgbImage& input, const EnhanceParams& params, bool parallel) {
  if (!parallel) {
    return RgbImage(enhance_channel(input.r, params), enhance_channel(input.g, params),
                    enhance_channel(input.b, params));
  }
  auto run = [&params](const Plane& p) { return enhance_channel(p, params); };
  auto r = std::async(std::launch::async, run, std::cref(input.r));
  auto g = std::async(std::launch::async, run, std::cref(input.g));
  Plane b = run(input.b);
  return RgbImage(r.get(), g.get(), std::move(b));
}

}  // namespace gce::golden
