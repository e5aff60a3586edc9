#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gce/image.hpp"

namespace gce::bench {

enum class Impl { golden, hw };

std::string_view to_string(Impl impl);
Impl parse_impl(std::string_view name);

struct Size {
  std::size_t width;
  std::size_t height;
};

/// Parses "64x64,256x256".
std::vector<Size> parse_sizes(std::string_view list);

/// One CSV row: impl,width,height,mpix_per_s,cycles,latency,fps.
struct BenchRow {
  std::string impl;
  std::size_t width = 0;
  std::size_t height = 0;
  double mpix_per_s = 0.0;
  std::optional<std::uint64_t> cycles;   // per channel; hw and projection rows only
  std::optional<std::uint64_t> latency;
  double fps = 0.0;
};

struct BenchOptions {
  std::vector<Size> sizes{{64, 64}, {256, 256}};
  int repetitions = 5;
  bool parallel = false;
  std::uint32_t seed = 1;
};

/// Deterministic pseudo-photographic test frame (smooth gradients plus noise).
RgbImage synthetic_image(std::size_t width, std::size_t height, std::uint32_t seed);

/// Median wall-clock over the repetitions for each size. Throws
/// std::invalid_argument for sizes below 16x16 or fewer than 3 repetitions.
std::vector<BenchRow> run_bench(const BenchOptions& options, Impl impl);

/// Model row: one pixel per clock plus `latency` cycles at `clock_hz`.
BenchRow projection_row(std::size_t width, std::size_t height, double clock_hz,
                        std::uint64_t latency);

inline constexpr double kReferenceClockHz = 224.84e6;
inline constexpr std::uint64_t kReferenceLatency = 535;

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows, bool header = true);

}  // namespace gce::bench
