#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "gce/image.hpp"

namespace gce::metrics {

/// 10 log10(255^2 / MSE). Identical inputs give +infinity. Color images pool
/// all three channels into one MSE. Throws std::invalid_argument on a size
/// mismatch.
double psnr(const Plane& a, const Plane& b);
double psnr(const RgbImage& a, const RgbImage& b);

/// "inf" for the identical-image case, otherwise fixed with two decimals.
std::string format_psnr(double db);

struct DiffStats {
  int max_abs = 0;
  double mean_abs = 0.0;
  std::size_t count_nonzero = 0;

  bool operator==(const DiffStats&) const = default;
};

DiffStats diff_stats(const Plane& a, const Plane& b);
DiffStats diff_stats(const RgbImage& a, const RgbImage& b);

}  // namespace gce::metrics
