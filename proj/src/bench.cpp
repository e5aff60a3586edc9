#include "gce/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "gce/golden.hpp"
#include "gce/pipeline.hpp"

namespace gce::bench {

std::string_view to_string(Impl impl) { return impl == Impl::golden ? "golden" : "hw"; }

Impl parse_impl(std::string_view name) {
  if (name == "golden") return Impl::golden;
  if (name == "hw" || name == "hwmodel") return Impl::hw;
  throw std::invalid_argument("unknown implementation '" + std::string(name) + "'");
}

std::vector<Size> parse_sizes(std::string_view list) {
  std::vector<Size> sizes;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const std::string item(list.substr(start, comma - start));
    const std::size_t x = item.find('x');
    if (x == std::string::npos) throw std::invalid_argument("size '" + item + "' is not WxH");
    try {
      std::size_t used = 0;
      const auto w = std::stoul(item.substr(0, x), &used);
      if (used != x) throw std::invalid_argument(item);
      const auto h = std::stoul(item.substr(x + 1), &used);
      if (used != item.size() - x - 1) throw std::invalid_argument(item);
      sizes.push_back({w, h});
    } catch (const std::logic_error&) {
      throw std::invalid_argument("size '" + item + "' is not WxH");
    }
    start = comma + 1;
  }
  return sizes;
}

RgbImage synthetic_image(std::size_t width, std::size_t height, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> noise(0.0, 12.0);
  RgbImage img(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double u = static_cast<double>(x) / width;
      const double v = static_cast<double>(y) / height;
      const double base[3] = {40 + 150 * u * v, 20 + 120 * (1 - u) * v, 60 + 80 * u};
      for (int c = 0; c < 3; ++c) {
        img.channel(c).at(x, y) =
            static_cast<std::uint8_t>(std::clamp(base[c] + noise(rng), 0.0, 255.0));
      }
    }
  }
  return img;
}

std::vector<BenchRow> run_bench(const BenchOptions& options, Impl impl) {
  if (options.repetitions < 3) throw std::invalid_argument("benchmark needs at least 3 repetitions");
  std::vector<BenchRow> rows;
  for (const auto& size : options.sizes) {
    if (size.width < 16 || size.height < 16) {
      throw std::invalid_argument("benchmark sizes must be at least 16x16");
    }
    const RgbImage img = synthetic_image(size.width, size.height, options.seed);
    std::vector<double> seconds;
    std::optional<hw::CycleReport> report;
    for (int rep = 0; rep < options.repetitions; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      if (impl == Impl::golden) {
        auto out = golden::enhance_rgb(img, {}, options.parallel);
        (void)out;
      } else {
        hw::PipelineConfig cfg;
        cfg.parallel = options.parallel;
        auto res = hw::pipeline_run(img, cfg);
        if (report && !(*report == res.report)) {
          throw std::logic_error("cycle counts changed between identical runs");
        }
        report = res.report;
      }
      seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::nth_element(seconds.begin(), seconds.begin() + seconds.size() / 2, seconds.end());
    const double median = seconds[seconds.size() / 2];
    BenchRow row;
    row.impl = std::string(to_string(impl));
    row.width = size.width;
    row.height = size.height;
    row.mpix_per_s = static_cast<double>(size.width * size.height) / median / 1e6;
    row.fps = 1.0 / median;
    if (report) {
      row.cycles = report->total_cycles;
      row.latency = report->latency_cycles;
    }
    rows.push_back(row);
  }
  return rows;
}

BenchRow projection_row(std::size_t width, std::size_t height, double clock_hz,
                        std::uint64_t latency) {
  BenchRow row;
  char name[64];
  std::snprintf(name, sizeof name, "projection@%.2fMHz", clock_hz / 1e6);
  row.impl = name;
  row.width = width;
  row.height = height;
  row.fps = hw::fps_model(width, height, clock_hz, latency);
  row.mpix_per_s = row.fps * static_cast<double>(width * height) / 1e6;
  row.cycles = static_cast<std::uint64_t>(width * height) + latency;
  row.latency = latency;
  return row;
}

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows, bool header) {
  if (header) os << "impl,width,height,mpix_per_s,cycles,latency,fps\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.impl << ',' << r.width << ',' << r.height << ',';
    std::snprintf(buf, sizeof buf, "%.3f", r.mpix_per_s);
    os << buf << ',';
    if (r.cycles) os << *r.cycles;
    os << ',';
    if (r.latency) os << *r.latency;
    std::snprintf(buf, sizeof buf, "%.2f", r.fps);
    os << ',' << buf << '\n';
  }
}

}  // namespace gce::bench
