#include "gce/image.hpp"

#include <cmath>

namespace gce {

namespace {

void check_dims(std::size_t width, std::size_t height, std::size_t len) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("plane dimensions must be at least 1x1");
  }
  if (len != width * height) {
    throw std::invalid_argument("plane data length " + std::to_string(len) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
}

}  // namespace

Plane::Plane(std::size_t width, std::size_t height, std::uint8_t fill)
    : width_(width), height_(height), data_(width * height, fill) {
  check_dims(width, height, data_.size());
}

Plane::Plane(std::size_t width, std::size_t height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height, data_.size());
}

RealPlane::RealPlane(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), data_(width * height, fill) {
  check_dims(width, height, data_.size());
}

RealPlane::RealPlane(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height, data_.size());
  for (double v : data_) {
    if (!std::isfinite(v)) throw std::invalid_argument("real plane holds a non-finite value");
  }
}

RgbImage::RgbImage(Plane red, Plane green, Plane blue)
    : r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
  if (r.width() != g.width() || r.width() != b.width() || r.height() != g.height() ||
      r.height() != b.height()) {
    throw std::invalid_argument("channel planes differ in size");
  }
}

RgbImage::RgbImage(std::size_t width, std::size_t height, std::uint8_t fill)
    : r(width, height, fill), g(width, height, fill), b(width, height, fill) {}

const Plane& RgbImage::channel(int c) const {
  switch (c) {
    case 0: return r;
    case 1: return g;
    case 2: return b;
  }
  throw std::out_of_range("channel index must be 0, 1 or 2");
}

Plane& RgbImage::channel(int c) {
  return const_cast<Plane&>(static_cast<const RgbImage&>(*this).channel(c));
}

std::string_view to_string(BorderPolicy policy) {
  switch (policy) {
    case BorderPolicy::replicate: return "replicate";
    case BorderPolicy::reflect: return "reflect";
    case BorderPolicy::zero: return "zero";
  }
  return "?";
}

BorderPolicy parse_border_policy(std::string_view name) {
  if (name == "replicate") return BorderPolicy::replicate;
  if (name == "reflect") return BorderPolicy::reflect;
  if (name == "zero") return BorderPolicy::zero;
  throw std::invalid_argument("unknown border policy '" + std::string(name) + "'");
}

std::ptrdiff_t resolve_index(std::ptrdiff_t i, std::ptrdiff_t n, BorderPolicy policy) {
  if (i >= 0 && i < n) return i;
  switch (policy) {
    case BorderPolicy::replicate:
      return i < 0 ? 0 : n - 1;
    case BorderPolicy::zero:
      return -1;
    case BorderPolicy::reflect: {
      if (n == 1) return 0;
      const std::ptrdiff_t period = 2 * (n - 1);
      std::ptrdiff_t m = ((i % period) + period) % period;
      return m < n ? m : period - m;
    }
  }
  return -1;
}

std::uint8_t sample(const Plane& plane, std::ptrdiff_t x, std::ptrdiff_t y,
                    BorderPolicy policy) {
  const auto sx = resolve_index(x, static_cast<std::ptrdiff_t>(plane.width()), policy);
  const auto sy = resolve_index(y, static_cast<std::ptrdiff_t>(plane.height()), policy);
  if (sx < 0 || sy < 0) return 0;
  return plane.at(static_cast<std::size_t>(sx), static_cast<std::size_t>(sy));
}

}  // namespace gce
