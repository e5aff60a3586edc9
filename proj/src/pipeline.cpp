#include "gce/pipeline.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <ostream>

namespace gce::hw {

namespace {

/// Chain of `depth` registers: a value clocked in at cycle t leaves at t + depth.
template <typename T>
class DelayLine {
public:
  explicit DelayLine(std::size_t depth) : regs_(depth) {
    if (depth == 0) throw std::invalid_argument("delay line depth must be at least 1");
  }

  std::optional<T> clock(std::optional<T> in) {
    auto out = regs_[pos_];
    regs_[pos_] = in;
    pos_ = (pos_ + 1) % regs_.size();
    return out;
  }

private:
  std::vector<std::optional<T>> regs_;
  std::size_t pos_ = 0;
};

struct MinMax {
  std::uint16_t lo = std::numeric_limits<std::uint16_t>::max();
  std::uint16_t hi = 0;
  void add(std::uint16_t v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

}  // namespace

double fps_model(std::size_t width, std::size_t height, double clock_hz,
                 std::uint64_t latency_cycles) {
  const double cycles = static_cast<double>(width) * static_cast<double>(height) +
                        static_cast<double>(latency_cycles);
  return clock_hz / cycles;
}

double CycleReport::projected_fps(double clock_hz, std::size_t width, std::size_t height) const {
  return fps_model(width, height, clock_hz, latency_cycles);
}

std::uint64_t streaming_latency(std::size_t width) {
  return 2 * width + 2 + kConvStages + kLogStages + kGainStages;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRecord>& records) {
  os << "cycle,stage,channel,value,valid\n";
  for (const auto& r : records) {
    os << r.cycle << ',' << r.stage << ',' << r.channel << ',' << r.value << ','
       << (r.valid ? 1 : 0) << '\n';
  }
}

ChannelResult run_channel(const Plane& input, const PipelineConfig& config, int channel,
                          const std::optional<FrameStats>& previous) {
  const std::size_t n = input.size();
  SerpentineBuffer former(input.width(), input.height(), config.border, config.fifo_depth);
  const ConvolutionUnit conv(golden::gaussian_kernel_5x5(), config.conv_frac_bits);
  DelayLine<std::uint16_t> conv_line(kConvStages);
  DelayLine<std::uint16_t> log_line(kLogStages);
  DelayLine<std::uint16_t> readback_line(kFrameBufferReadStages);
  DelayLine<std::uint8_t> gain_line(kGainStages);

  const bool streaming = config.stats_mode == StatsMode::previous_frame && previous.has_value();
  ChannelResult result;
  if (streaming) {
    result.stats_used = *previous;
    result.stats_used.source = StatsMode::previous_frame;
  }

  std::vector<std::uint8_t> out(n);
  std::vector<std::uint16_t> frame_buffer;
  if (!streaming) frame_buffer.reserve(n);
  MinMax seen;
  std::size_t logs = 0;
  std::size_t readback = 0;
  std::size_t produced = 0;
  bool stats_ready = streaming;

  auto trace = [&](std::uint64_t cycle, std::string_view stage, std::uint32_t value, bool valid) {
    if (config.trace) result.trace.push_back({cycle, stage, channel, value, valid});
  };

  // Generous bound: two passes over the frame plus every pipeline stage.
  const std::uint64_t max_cycles = 2 * n + former.window_latency() + 64;
  for (std::uint64_t cycle = 0; produced < n; ++cycle) {
    if (cycle > max_cycles) throw StreamError("pipeline failed to drain");
    const PixelEvent in =
        cycle < n ? PixelEvent{cycle, input.data()[cycle], true} : PixelEvent{cycle, 0, false};
    trace(cycle, "in", in.value, in.valid);

    const auto window = former.clock(in);
    trace(cycle, "window", window ? window->window[2][2] : 0, window.has_value());

    std::optional<std::uint16_t> conv_in;
    if (window) conv_in = conv(window->window);
    const auto conv_out = conv_line.clock(conv_in);
    trace(cycle, "conv", conv_out.value_or(0), conv_out.has_value());

    std::optional<std::uint16_t> log_in;
    if (conv_out) log_in = log2_fixed_q(*conv_out, config.conv_frac_bits);
    const auto log_out = log_line.clock(log_in);
    trace(cycle, "log", log_out.value_or(0), log_out.has_value());

    std::optional<std::uint16_t> gain_src;
    if (log_out) {
      seen.add(*log_out);
      ++logs;
      if (streaming) {
        gain_src = log_out;
      } else {
        frame_buffer.push_back(*log_out);
      }
    }
    if (!streaming) {
      // Second pass: replay the buffered frame once the extrema are final.
      std::optional<std::uint16_t> read;
      if (stats_ready && readback < n) read = frame_buffer[readback++];
      gain_src = readback_line.clock(read);
      if (!stats_ready && logs == n) {
        result.stats_used = FrameStats{seen.lo, seen.hi, StatsMode::two_pass};
        stats_ready = true;
      }
    }

    std::optional<std::uint8_t> gain_in;
    if (gain_src) gain_in = gain_offset_fixed(*gain_src, result.stats_used);
    const auto pixel = gain_line.clock(gain_in);
    trace(cycle, "out", pixel.value_or(0), pixel.has_value());

    if (pixel) {
      if (produced == 0) result.report.first_output_cycle = cycle;
      result.report.last_output_cycle = cycle;
      out[produced++] = *pixel;
    }
  }

  auto& rep = result.report;
  rep.pixels_out = produced;
  rep.latency_cycles = rep.first_output_cycle;
  rep.total_cycles = rep.last_output_cycle + 1;
  const std::uint64_t span = rep.last_output_cycle - rep.first_output_cycle;
  rep.steady_state_rate = span == 0 ? 1.0 : static_cast<double>(produced - 1) / span;
  rep.bubble_free = span + 1 == produced;
  rep.stats_mode = streaming ? StatsMode::previous_frame : StatsMode::two_pass;
  result.stats_seen = FrameStats{seen.lo, seen.hi, StatsMode::two_pass};
  result.output = Plane(input.width(), input.height(), std::move(out));
  return result;
}

namespace {

PipelineResult run_image(const RgbImage& image, const PipelineConfig& config,
                         const std::optional<std::array<FrameStats, 3>>& previous) {
  auto prev = [&previous](int c) -> std::optional<FrameStats> {
    if (!previous) return std::nullopt;
    return (*previous)[static_cast<std::size_t>(c)];
  };
  std::array<ChannelResult, 3> ch;
  if (config.parallel) {
    auto r = std::async(std::launch::async, [&] { return run_channel(image.r, config, 0, prev(0)); });
    auto g = std::async(std::launch::async, [&] { return run_channel(image.g, config, 1, prev(1)); });
    ch[2] = run_channel(image.b, config, 2, prev(2));
    ch[0] = r.get();
    ch[1] = g.get();
  } else {
    for (int c = 0; c < 3; ++c) ch[static_cast<std::size_t>(c)] = run_channel(image.channel(c), config, c, prev(c));
  }

  PipelineResult result;
  result.report = ch[0].report;
  for (std::size_t c = 0; c < 3; ++c) {
    if (!(ch[c].report == result.report)) {
      throw std::logic_error("channel pipelines disagree on cycle accounting");
    }
    result.stats_used[c] = ch[c].stats_used;
    result.stats_seen[c] = ch[c].stats_seen;
  }
  if (config.trace) {
    for (auto& c : ch) {
      result.trace.insert(result.trace.end(), c.trace.begin(), c.trace.end());
    }
    std::stable_sort(result.trace.begin(), result.trace.end(),
                     [](const TraceRecord& a, const TraceRecord& b) { return a.cycle < b.cycle; });
  }
  result.image = RgbImage(std::move(ch[0].output), std::move(ch[1].output), std::move(ch[2].output));
  return result;
}

}  // namespace

PipelineResult pipeline_run(const RgbImage& image, const PipelineConfig& config) {
  return run_image(image, config, std::nullopt);
}

PipelineResult VideoPipeline::process(const RgbImage& frame) {
  const bool use_previous = config_.stats_mode == StatsMode::previous_frame && previous_;
  PipelineResult result = run_image(frame, config_, use_previous ? previous_ : std::nullopt);
  previous_ = result.stats_seen;
  for (auto& s : *previous_) s.source = StatsMode::previous_frame;
  ++frames_;
  return result;
}

}  // namespace gce::hw
