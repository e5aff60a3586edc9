#include "gce/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <stdexcept>

namespace gce::metrics {

namespace {

void require_same_size(std::size_t wa, std::size_t ha, std::size_t wb, std::size_t hb) {
  if (wa != wb || ha != hb) {
    throw std::invalid_argument("image sizes differ: " + std::to_string(wa) + "x" +
                                std::to_string(ha) + " vs " + std::to_string(wb) + "x" +
                                std::to_string(hb));
  }
}

struct Accum {
  double sq = 0.0;
  double abs = 0.0;
  int max_abs = 0;
  std::size_t nonzero = 0;
  std::size_t n = 0;

  void add(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int d = std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i]));
      sq += static_cast<double>(d) * d;
      abs += d;
      max_abs = std::max(max_abs, d);
      nonzero += d != 0;
    }
    n += a.size();
  }

  double psnr() const {
    if (sq == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / (sq / static_cast<double>(n)));
  }

  DiffStats stats() const { return {max_abs, abs / static_cast<double>(n), nonzero}; }
};

Accum accumulate(const Plane& a, const Plane& b) {
  require_same_size(a.width(), a.height(), b.width(), b.height());
  Accum acc;
  acc.add(a.data(), b.data());
  return acc;
}

Accum accumulate(const RgbImage& a, const RgbImage& b) {
  require_same_size(a.width(), a.height(), b.width(), b.height());
  Accum acc;
  for (int c = 0; c < 3; ++c) acc.add(a.channel(c).data(), b.channel(c).data());
  return acc;
}

}  // namespace

double psnr(const Plane& a, const Plane& b) { return accumulate(a, b).psnr(); }
double psnr(const RgbImage& a, const RgbImage& b) { return accumulate(a, b).psnr(); }

std::string format_psnr(double db) {
  if (std::isinf(db)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", db);
  return buf;
}

DiffStats diff_stats(const Plane& a, const Plane& b) { return accumulate(a, b).stats(); }
DiffStats diff_stats(const RgbImage& a, const RgbImage& b) { return accumulate(a, b).stats(); }

}  // namespace gce::metrics
