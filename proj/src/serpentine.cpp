#include "gce/serpentine.hpp"

#include <algorithm>
#include <string>

namespace gce::hw {

RowFifo::RowFifo(std::size_t depth) : storage_(depth) {
  if (depth == 0) throw std::invalid_argument("row FIFO depth must be at least 1");
}

std::optional<std::uint8_t> RowFifo::push(std::uint8_t value) {
  std::optional<std::uint8_t> out;
  if (occupancy_ == storage_.size()) {
    out = storage_[head_];
  } else {
    ++occupancy_;
  }
  storage_[head_] = value;
  head_ = (head_ + 1) % storage_.size();
  peak_ = std::max(peak_, occupancy_);
  return out;
}

std::size_t default_fifo_depth(std::size_t width) { return width; }

std::size_t short_fifo_depth(std::size_t width) { return width > 3 ? width - 3 : 1; }

SerpentineBuffer::SerpentineBuffer(std::size_t width, std::size_t height, BorderPolicy border,
                                   std::optional<std::size_t> fifo_depth)
    : width_(width), height_(height), border_(border) {
  if (width == 0 || height == 0) throw std::invalid_argument("frame must be at least 1x1");
  const std::size_t depth = fifo_depth.value_or(default_fifo_depth(width));
  fifos_.assign(4, RowFifo(depth));
}

void SerpentineBuffer::shift(std::uint8_t pixel) {
  std::array<std::uint8_t, 5> column{};
  column[4] = pixel;
  std::uint8_t carry = pixel;
  for (std::size_t k = 0; k < fifos_.size(); ++k) {
    // Undriven FIFO outputs read as zero until the FIFO has filled.
    carry = fifos_[k].push(carry).value_or(0);
    column[3 - k] = carry;
  }
  for (int r = 0; r < 5; ++r) {
    std::shift_left(raw_[r].begin(), raw_[r].end(), 1);
    raw_[r][4] = column[static_cast<std::size_t>(r)];
  }
  ++shifts_;
}

WindowEvent SerpentineBuffer::inject(std::size_t center, std::uint64_t cycle) const {
  WindowEvent ev;
  ev.cycle = cycle;
  ev.valid = true;
  ev.x = center % width_;
  ev.y = center / width_;
  const auto w = static_cast<std::ptrdiff_t>(width_);
  const auto h = static_cast<std::ptrdiff_t>(height_);
  const auto cx = static_cast<std::ptrdiff_t>(ev.x);
  const auto cy = static_cast<std::ptrdiff_t>(ev.y);
  for (int dy = -2; dy <= 2; ++dy) {
    const auto sy = resolve_index(cy + dy, h, border_);
    for (int dx = -2; dx <= 2; ++dx) {
      const auto sx = resolve_index(cx + dx, w, border_);
      std::uint8_t v = 0;
      if (sx >= 0 && sy >= 0) {
        // Register (2 + ry, 2 + rx) holds the pixel ry rows and rx columns
        // away from the center.
        v = raw_[static_cast<std::size_t>(2 + sy - cy)][static_cast<std::size_t>(2 + sx - cx)];
      }
      ev.window[static_cast<std::size_t>(dy + 2)][static_cast<std::size_t>(dx + 2)] = v;
    }
  }
  return ev;
}

std::optional<WindowEvent> SerpentineBuffer::clock(const PixelEvent& in) {
  if (done()) {
    if (in.valid) throw StreamError("pixel beyond the end of the frame (overrun)");
    return std::nullopt;
  }
  const bool flushing = pixels_in_ == frame_size();
  if (in.valid) {
    if (flushing) throw StreamError("pixel beyond the end of the frame (overrun)");
    ++pixels_in_;
    shift(in.value);
  } else if (flushing) {
    shift(0);
  } else {
    return std::nullopt;
  }
  // The newest register holds raster index shifts_ - 1.
  const std::size_t newest = shifts_ - 1;
  if (newest < window_latency()) return std::nullopt;
  const std::size_t center = newest - window_latency();
  if (center >= frame_size()) return std::nullopt;
  ++windows_out_;
  return inject(center, in.cycle);
}

std::vector<WindowEvent> window_stream(std::span<const PixelEvent> pixels, std::size_t width,
                                       std::size_t height, BorderPolicy border,
                                       std::optional<std::size_t> fifo_depth) {
  SerpentineBuffer buffer(width, height, border, fifo_depth);
  std::vector<WindowEvent> out;
  out.reserve(width * height);
  std::uint64_t cycle = 0;
  for (const auto& ev : pixels) {
    if (auto w = buffer.clock(ev)) out.push_back(*w);
    cycle = ev.cycle + 1;
  }
  if (buffer.pixels_in() != width * height) {
    throw StreamError("stream underrun: received " + std::to_string(buffer.pixels_in()) +
                      " of " + std::to_string(width * height) + " pixels");
  }
  while (!buffer.done()) {
    if (auto w = buffer.clock(PixelEvent{cycle, 0, false})) out.push_back(*w);
    ++cycle;
  }
  return out;
}

std::vector<PixelEvent> to_pixel_events(const Plane& plane, std::uint64_t first_cycle) {
  std::vector<PixelEvent> events;
  events.reserve(plane.size());
  for (std::size_t i = 0; i < plane.size(); ++i) {
    events.push_back({first_cycle + i, plane.data()[i], true});
  }
  return events;
}

}  // namespace gce::hw
