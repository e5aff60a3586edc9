#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "gce/metrics.hpp"
#include "oracles.hpp"

using namespace gce;
using namespace gce::metrics;

TEST_CASE("identical images have infinite PSNR") {
  std::mt19937 rng(1);
  const Plane p = oracle::random_plane(rng, 9, 9);
  CHECK(std::isinf(psnr(p, p)));
  CHECK(format_psnr(psnr(p, p)) == "inf");
}

TEST_CASE("all-black against all-white is 0 dB") {
  CHECK(psnr(Plane(8, 8, 0), Plane(8, 8, 255)) == doctest::Approx(0.0));
  CHECK(format_psnr(0.0) == "0.00");
}

TEST_CASE("one pixel off by 16 in a 256x256 plane") {
  Plane a(256, 256, 100);
  Plane b = a;
  b.at(17, 200) = 116;
  // MSE = 256 / 65536, so PSNR = 10 log10(65025 * 256).
  CHECK(psnr(a, b) == doctest::Approx(72.2).epsilon(1e-3));
  CHECK(format_psnr(psnr(a, b)) == "72.21");
}

TEST_CASE("color PSNR pools the channels") {
  RgbImage a(4, 4, 50);
  RgbImage b = a;
  b.g.at(0, 0) = 60;
  const double mse = 100.0 / 48.0;
  CHECK(psnr(a, b) == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / mse)));
}

TEST_CASE("PSNR is symmetric and falls as the error grows") {
  std::mt19937 rng(2);
  const Plane a = oracle::random_plane(rng, 16, 16);
  Plane b = a, c = a;
  for (std::size_t i = 0; i < 16; ++i) {
    b.at(i, i) = static_cast<std::uint8_t>(a.at(i, i) ^ 0x01);
    c.at(i, i) = static_cast<std::uint8_t>(a.at(i, i) ^ 0x10);
  }
  CHECK(psnr(a, b) == psnr(b, a));
  CHECK(psnr(a, c) < psnr(a, b));
}

TEST_CASE("diff_stats") {
  const Plane a(2, 2, std::vector<std::uint8_t>{0, 10, 20, 30});
  const Plane b(2, 2, std::vector<std::uint8_t>{0, 13, 19, 30});
  const DiffStats s = diff_stats(a, b);
  CHECK(s.max_abs == 3);
  CHECK(s.mean_abs == doctest::Approx(1.0));
  CHECK(s.count_nonzero == 2);
  CHECK(diff_stats(a, a) == DiffStats{});
  const DiffStats c = diff_stats(RgbImage(a, a, a), RgbImage(a, b, a));
  CHECK(c.max_abs == 3);
  CHECK(c.mean_abs == doctest::Approx(4.0 / 12.0));
  CHECK(c.count_nonzero == 2);
}

TEST_CASE("size mismatches are rejected") {
  CHECK_THROWS_AS(psnr(Plane(2, 3), Plane(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(diff_stats(Plane(2, 3), Plane(2, 4)), std::invalid_argument);
  CHECK_THROWS_AS(psnr(RgbImage(2, 2), RgbImage(2, 3)), std::invalid_argument);
}
