#include "gce/imageio.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iterator>

namespace gce::io {

PpmError::PpmError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

PpmError::PpmError(const std::string& prefix, const PpmError& inner)
    : std::runtime_error(prefix + inner.what()), offset_(inner.offset()) {}

namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class Cursor {
public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t read_uint(const char* field) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000) throw PpmError(std::string(field) + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ == bytes_.size()) throw PpmError(std::string("truncated file: missing ") + field, pos_);
      throw PpmError(std::string("expected ") + field, pos_);
    }
    if (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw PpmError(std::string("malformed ") + field, pos_);
    }
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::uint8_t peek() const { return bytes_[pos_]; }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

PpmHeader read_ppm_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) throw PpmError("truncated file: missing magic number", bytes.size());
  PpmHeader h;
  if (bytes[0] != 'P' || (bytes[1] != '6' && bytes[1] != '3')) {
    throw PpmError("unsupported magic number (expected P6 or P3)", 0);
  }
  h.format = bytes[1] == '6' ? PpmFormat::p6 : PpmFormat::p3;
  Cursor cur(bytes);
  cur.advance(2);
  if (cur.remaining() > 0 && !is_space(cur.peek()) && cur.peek() != '#') {
    throw PpmError("malformed magic number", 2);
  }
  h.width = cur.read_uint("width");
  h.height = cur.read_uint("height");
  cur.skip_space_and_comments();
  const std::size_t maxval_at = cur.pos();
  const std::size_t maxval = cur.read_uint("maxval");
  if (h.width == 0 || h.height == 0) throw PpmError("image dimensions must be non-zero", maxval_at);
  if (maxval != 255) {
    throw PpmError("unsupported maxval " + std::to_string(maxval) + " (only 255)", maxval_at);
  }
  h.maxval = 255;
  if (h.format == PpmFormat::p6) {
    // Exactly one whitespace byte separates the header from binary data.
    if (cur.remaining() == 0) throw PpmError("truncated file: missing pixel data", cur.pos());
    cur.advance(1);
  }
  h.payload_offset = cur.pos();
  return h;
}

RgbImage read_ppm(std::span<const std::uint8_t> bytes) {
  const PpmHeader h = read_ppm_header(bytes);
  const std::size_t n = h.width * h.height;
  std::vector<std::uint8_t> r(n), g(n), b(n);
  if (h.format == PpmFormat::p6) {
    const std::size_t need = 3 * n;
    if (bytes.size() - h.payload_offset < need) {
      throw PpmError("truncated pixel data: expected " + std::to_string(need) + " bytes",
                     bytes.size());
    }
    const auto* p = bytes.data() + h.payload_offset;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = p[3 * i];
      g[i] = p[3 * i + 1];
      b[i] = p[3 * i + 2];
    }
  } else {
    Cursor cur(bytes);
    cur.advance(h.payload_offset);
    std::array<std::vector<std::uint8_t>*, 3> planes{&r, &g, &b};
    for (std::size_t i = 0; i < 3 * n; ++i) {
      const std::size_t at = cur.pos();
      const std::size_t v = cur.read_uint("sample");
      if (v > 255) throw PpmError("sample exceeds maxval", at);
      (*planes[i % 3])[i / 3] = static_cast<std::uint8_t>(v);
    }
  }
  return RgbImage(Plane(h.width, h.height, std::move(r)), Plane(h.width, h.height, std::move(g)),
                  Plane(h.width, h.height, std::move(b)));
}

std::vector<std::uint8_t> write_ppm(const RgbImage& image, PpmFormat format) {
  const std::string header = std::string(format == PpmFormat::p6 ? "P6" : "P3") + "\n" +
                             std::to_string(image.width()) + " " + std::to_string(image.height()) +
                             "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const std::size_t n = image.width() * image.height();
  if (format == PpmFormat::p6) {
    out.reserve(out.size() + 3 * n);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(image.r.data()[i]);
      out.push_back(image.g.data()[i]);
      out.push_back(image.b.data()[i]);
    }
    return out;
  }
  char buf[4];
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, image.channel(c).data()[i]);
      out.insert(out.end(), buf, end);
      const bool row_end = c == 2 && (i + 1) % image.width() == 0;
      out.push_back(row_end ? '\n' : ' ');
    }
  }
  return out;
}

RgbImage read_ppm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  try {
    return read_ppm(bytes);
  } catch (const PpmError& e) {
    throw PpmError(path.string() + ": ", e);
  }
}

void write_ppm_file(const std::filesystem::path& path, const RgbImage& image, PpmFormat format) {
  const auto bytes = write_ppm(image, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::tuple<Plane, Plane, Plane> split_channels(const RgbImage& image) {
  return {image.r, image.g, image.b};
}

RgbImage merge_channels(Plane r, Plane g, Plane b) {
  return RgbImage(std::move(r), std::move(g), std::move(b));
}

}  // namespace gce::io
