#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gce/image.hpp"

namespace gce::io {

/// PPM parse failure; `offset()` is the byte position where parsing stopped.
class PpmError : public std::runtime_error {
public:
  PpmError(const std::string& what, std::size_t offset);
  PpmError(const std::string& prefix, const PpmError& inner);
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

enum class PpmFormat { p6, p3 };

struct PpmHeader {
  PpmFormat format = PpmFormat::p6;
  std::size_t width = 0;
  std::size_t height = 0;
  int maxval = 255;
  std::size_t payload_offset = 0;
};

/// Parses the header of a P6 or P3 file. Comments (#...) may appear between
/// header fields. Only maxval 255 is accepted.
PpmHeader read_ppm_header(std::span<const std::uint8_t> bytes);

RgbImage read_ppm(std::span<const std::uint8_t> bytes);

/// Canonical serialization: "P6\nW H\n255\n" + interleaved RGB bytes, or the
/// P3 equivalent with one image row per line.
std::vector<std::uint8_t> write_ppm(const RgbImage& image, PpmFormat format = PpmFormat::p6);

RgbImage read_ppm_file(const std::filesystem::path& path);
void write_ppm_file(const std::filesystem::path& path, const RgbImage& image,
                    PpmFormat format = PpmFormat::p6);

std::tuple<Plane, Plane, Plane> split_channels(const RgbImage& image);

/// Throws std::invalid_argument when the planes differ in size.
RgbImage merge_channels(Plane r, Plane g, Plane b);

}  // namespace gce::io
