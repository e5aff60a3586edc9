#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gce/hw_arith.hpp"
#include "gce/image.hpp"

namespace gce::hw {

/// Raised when a pixel stream carries more or fewer pixels than the frame.
class StreamError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct PixelEvent {
  std::uint64_t cycle = 0;
  std::uint8_t value = 0;
  bool valid = false;
};

struct WindowEvent {
  std::uint64_t cycle = 0;
  Window5 window{};
  bool valid = false;
  std::size_t x = 0;  // center coordinates
  std::size_t y = 0;
};

/// Fixed-depth row FIFO. Once full, every push pops the oldest entry.
class RowFifo {
public:
  explicit RowFifo(std::size_t depth);

  /// Returns the evicted entry, or nothing while the FIFO is still filling.
  std::optional<std::uint8_t> push(std::uint8_t value);

  std::size_t depth() const { return storage_.size(); }
  std::size_t occupancy() const { return occupancy_; }
  std::size_t peak_occupancy() const { return peak_; }

private:
  std::vector<std::uint8_t> storage_;
  std::size_t head_ = 0;
  std::size_t occupancy_ = 0;
  std::size_t peak_ = 0;
};

/// Row FIFO depth presets.
std::size_t default_fifo_depth(std::size_t width);  // W: aligns taps one row apart
std::size_t short_fifo_depth(std::size_t width);    // W - 3, one row too short for direct taps

/// 5x5 sliding-window former fed one raster pixel per clock.
///
/// Four cascaded row FIFOs tap the four previous rows; a 5x5 register file
/// shifts in one column per clock. The border injector then remaps taps that
/// fall outside the frame according to the border policy, so every input
/// pixel yields exactly one window. Each window leaves the cycle its
/// bottom-right neighbor (two rows down, two columns right) is shifted in;
/// after the last input the former keeps clocking to flush the final rows.
class SerpentineBuffer {
public:
  SerpentineBuffer(std::size_t width, std::size_t height, BorderPolicy border,
                   std::optional<std::size_t> fifo_depth = std::nullopt);

  /// One clock. Invalid input stalls the former until the frame has been
  /// fully received; afterwards every clock advances the flush.
  /// Throws StreamError on a pixel beyond the frame.
  std::optional<WindowEvent> clock(const PixelEvent& in);

  std::size_t pixels_in() const { return pixels_in_; }
  std::size_t windows_out() const { return windows_out_; }
  bool done() const { return windows_out_ == frame_size(); }

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t fifo_depth() const { return fifos_.front().depth(); }
  const std::vector<RowFifo>& fifos() const { return fifos_; }

  /// Cycles from a pixel entering to the window centered on it leaving.
  std::size_t window_latency() const { return 2 * width_ + 2; }

private:
  std::size_t frame_size() const { return width_ * height_; }
  void shift(std::uint8_t pixel);
  WindowEvent inject(std::size_t center, std::uint64_t cycle) const;

  std::size_t width_;
  std::size_t height_;
  BorderPolicy border_;
  std::vector<RowFifo> fifos_;
  Window5 raw_{};  // raw_[row][col], row 4 / col 4 newest
  std::size_t shifts_ = 0;
  std::size_t pixels_in_ = 0;
  std::size_t windows_out_ = 0;
};

/// Streams a raster pixel sequence through a SerpentineBuffer and returns one
/// valid WindowEvent per pixel. Flush clocks continue the input's cycle count.
/// Throws StreamError when the stream holds a number of valid pixels other
/// than width x height.
std::vector<WindowEvent> window_stream(std::span<const PixelEvent> pixels, std::size_t width,
                                       std::size_t height, BorderPolicy border,
                                       std::optional<std::size_t> fifo_depth = std::nullopt);

/// Raster pixel events, one per cycle starting at `first_cycle`.
std::vector<PixelEvent> to_pixel_events(const Plane& plane, std::uint64_t first_cycle = 0);

}  // namespace gce::hw
