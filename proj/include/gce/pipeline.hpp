#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "gce/hw_arith.hpp"
#include "gce/image.hpp"
#include "gce/serpentine.hpp"

namespace gce::hw {

// Register depth of each arithmetic stage behind the window former.
// Convolution: hardwired multiplies (1), five-level adder tree for 25 taps
// (5), reciprocal multiply (1), round and clamp (1).
inline constexpr std::size_t kConvStages = 8;
// Log2: leading-one detect (1), mantissa normalize (1), table read (1),
// interpolation multiply (1), correction add and x48 scale (1).
inline constexpr std::size_t kLogStages = 5;
// Gain/offset: subtract (1), five-stage multiplier, round and clamp (1).
inline constexpr std::size_t kGainStages = 1 + kMultiplierStages + 1;

/// Frame-buffer readback between the passes of two_pass mode.
inline constexpr std::size_t kFrameBufferReadStages = 1;

/// Cycle accounting for one channel pipeline run.
struct CycleReport {
  std::uint64_t latency_cycles = 0;  // first input to first valid output
  std::uint64_t total_cycles = 0;    // first input to last output, inclusive
  std::uint64_t pixels_out = 0;
  double steady_state_rate = 0.0;  // valid outputs per cycle after the latency
  std::uint64_t first_output_cycle = 0;
  std::uint64_t last_output_cycle = 0;
  bool bubble_free = false;  // no idle cycle between first and last output
  StatsMode stats_mode = StatsMode::two_pass;

  double projected_fps(double clock_hz, std::size_t width, std::size_t height) const;
  bool operator==(const CycleReport&) const = default;
};

/// Frames per second for a one-pixel-per-cycle pipeline that pays its latency
/// once per frame.
double fps_model(std::size_t width, std::size_t height, double clock_hz,
                 std::uint64_t latency_cycles);

/// Latency a streaming (previous_frame) pipeline needs for a given width.
std::uint64_t streaming_latency(std::size_t width);

/// One line of the stage trace: `cycle,stage,channel,value,valid`.
struct TraceRecord {
  std::uint64_t cycle;
  std::string_view stage;  // in, window, conv, log, out
  int channel;
  std::uint32_t value;
  bool valid;
};

void write_trace_csv(std::ostream& os, const std::vector<TraceRecord>& records);

struct PipelineConfig {
  BorderPolicy border = BorderPolicy::replicate;
  StatsMode stats_mode = StatsMode::two_pass;
  std::optional<std::size_t> fifo_depth;  // defaults to default_fifo_depth(width)
  int conv_frac_bits = kDefaultConvFracBits;  // 0 gives an 8-bit conv_out bus
  bool parallel = false;                  // run the three channels on separate threads
  bool trace = false;                     // collect per-cycle stage records
};

struct ChannelResult {
  Plane output;
  CycleReport report;
  FrameStats stats_used;  // extrema applied by the gain stage
  FrameStats stats_seen;  // extrema of this frame's log values
  std::vector<TraceRecord> trace;
};

/// Clocks one channel through window former, convolution, log2 and
/// gain/offset until every pixel has left the gain stage. `previous` feeds
/// the gain stage in previous_frame mode; without it the frame is stretched
/// by its own extrema in two passes.
ChannelResult run_channel(const Plane& input, const PipelineConfig& config, int channel = 0,
                          const std::optional<FrameStats>& previous = std::nullopt);

struct PipelineResult {
  RgbImage image;
  CycleReport report;  // identical for all channels
  std::array<FrameStats, 3> stats_used{};
  std::array<FrameStats, 3> stats_seen{};
  std::vector<TraceRecord> trace;  // merged, cycle-major
};

/// Runs the three channel pipelines on one image.
PipelineResult pipeline_run(const RgbImage& image, const PipelineConfig& config = {});

/// Frame sequence driver. In previous_frame mode frame n is stretched with
/// frame n-1's extrema; the first frame falls back to two passes.
class VideoPipeline {
public:
  explicit VideoPipeline(PipelineConfig config) : config_(config) {}

  PipelineResult process(const RgbImage& frame);
  std::size_t frames_processed() const { return frames_; }

private:
  PipelineConfig config_;
  std::optional<std::array<FrameStats, 3>> previous_;
  std::size_t frames_ = 0;
};

}  // namespace gce::hw
