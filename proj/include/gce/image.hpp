#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gce {

/// One 8-bit image channel stored row-major.
class Plane {
public:
  Plane() = default;
  Plane(std::size_t width, std::size_t height, std::uint8_t fill = 0);
  Plane(std::size_t width, std::size_t height, std::vector<std::uint8_t> data);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::uint8_t at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
  std::uint8_t& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }

  const std::vector<std::uint8_t>& data() const { return data_; }
  std::vector<std::uint8_t>& data() { return data_; }

  bool operator==(const Plane&) const = default;

private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Real-valued intermediate plane (convolution and log-domain results).
class RealPlane {
public:
  RealPlane() = default;
  RealPlane(std::size_t width, std::size_t height, double fill = 0.0);
  RealPlane(std::size_t width, std::size_t height, std::vector<double> data);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  double at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
  double& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> data_;
};

/// Three aligned channel planes.
struct RgbImage {
  Plane r;
  Plane g;
  Plane b;

  RgbImage() = default;
  RgbImage(Plane red, Plane green, Plane blue);
  RgbImage(std::size_t width, std::size_t height, std::uint8_t fill = 0);

  std::size_t width() const { return r.width(); }
  std::size_t height() const { return r.height(); }

  const Plane& channel(int c) const;
  Plane& channel(int c);

  bool operator==(const RgbImage&) const = default;
};

enum class BorderPolicy { replicate, reflect, zero };

std::string_view to_string(BorderPolicy policy);
BorderPolicy parse_border_policy(std::string_view name);

/// Maps a possibly out-of-range coordinate onto [0, n). Returns -1 under the
/// zero policy when the coordinate falls outside. Reflect mirrors about the
/// edge sample without repeating it (dcb|abcd|cba).
std::ptrdiff_t resolve_index(std::ptrdiff_t i, std::ptrdiff_t n, BorderPolicy policy);

/// Reads (x, y) with out-of-bounds coordinates resolved by `policy`.
std::uint8_t sample(const Plane& plane, std::ptrdiff_t x, std::ptrdiff_t y,
                    BorderPolicy policy);

}  // namespace gce
