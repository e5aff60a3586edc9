#include "gce/hw_arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gce::hw {

std::vector<ShiftAddTerm> csd_decompose(std::uint32_t coeff) {
  std::vector<ShiftAddTerm> terms;
  std::int64_t c = coeff;
  for (int shift = 0; c != 0; ++shift, c >>= 1) {
    if (c & 1) {
      // Non-adjacent form: a run of ones ...0111 becomes +1000 -1.
      const int digit = (c & 3) == 3 ? -1 : 1;
      terms.push_back({shift, digit});
      c -= digit;
    }
  }
  return terms;
}

ConstCoeffMultiplier::ConstCoeffMultiplier(std::uint32_t coeff)
    : coeff_(coeff), terms_(csd_decompose(coeff)) {}

std::uint32_t ConstCoeffMultiplier::operator()(std::uint8_t pixel) const {
  std::int64_t sum = 0;
  for (const auto& t : terms_) {
    const std::int64_t shifted = static_cast<std::int64_t>(pixel) << t.shift;
    sum += t.sign > 0 ? shifted : -shifted;
  }
  return static_cast<std::uint32_t>(sum);
}

namespace {

std::array<std::array<ConstCoeffMultiplier, 5>, 5> make_taps(const golden::Kernel5& k) {
  auto row = [&k](int y) {
    return std::array<ConstCoeffMultiplier, 5>{
        ConstCoeffMultiplier(static_cast<std::uint32_t>(k.weights[y][0])),
        ConstCoeffMultiplier(static_cast<std::uint32_t>(k.weights[y][1])),
        ConstCoeffMultiplier(static_cast<std::uint32_t>(k.weights[y][2])),
        ConstCoeffMultiplier(static_cast<std::uint32_t>(k.weights[y][3])),
        ConstCoeffMultiplier(static_cast<std::uint32_t>(k.weights[y][4]))};
  };
  return {row(0), row(1), row(2), row(3), row(4)};
}

}  // namespace

std::uint32_t reciprocal_q20(int denom) {
  if (denom <= 0) throw std::invalid_argument("kernel denominator must be positive");
  const std::uint64_t one = std::uint64_t{1} << 20;
  return static_cast<std::uint32_t>((one + static_cast<std::uint64_t>(denom) / 2) /
                                    static_cast<std::uint64_t>(denom));
}

std::uint16_t normalize_q20(std::uint32_t acc, std::uint32_t reciprocal, int frac_bits) {
  if (frac_bits < 0 || frac_bits > kMaxConvFracBits) {
    throw std::invalid_argument("convolution bus fraction bits out of range");
  }
  const int shift = 20 - frac_bits;
  const std::uint64_t scaled =
      (static_cast<std::uint64_t>(acc) * reciprocal + (std::uint64_t{1} << (shift - 1))) >> shift;
  return static_cast<std::uint16_t>(std::min<std::uint64_t>(scaled, 255u << frac_bits));
}

ConvolutionUnit::ConvolutionUnit(const golden::Kernel5& kernel, int frac_bits)
    : taps_(make_taps(kernel)), reciprocal_(reciprocal_q20(kernel.denom)), frac_bits_(frac_bits) {
  if (frac_bits < 0 || frac_bits > kMaxConvFracBits) {
    throw std::invalid_argument("convolution bus fraction bits out of range");
  }
}

std::uint32_t ConvolutionUnit::accumulate(const Window5& window) const {
  std::uint32_t acc = 0;
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) acc += taps_[y][x](window[y][x]);
  }
  return acc;
}

std::uint16_t ConvolutionUnit::normalize(std::uint32_t acc) const {
  return normalize_q20(acc, reciprocal_, frac_bits_);
}

std::uint8_t conv_fixed(const Window5& window, const golden::Kernel5& kernel) {
  return static_cast<std::uint8_t>(ConvolutionUnit(kernel, 0)(window));
}

// ---------------------------------------------------------------------------

Log2Split log2_split(std::uint16_t v, int frac_bits) {
  const std::uint32_t u = static_cast<std::uint32_t>(v) + (1u << frac_bits);
  const int msb = std::bit_width(u) - 1;
  const std::uint32_t mantissa = u - (std::uint32_t{1} << msb);
  return {msb - frac_bits, (mantissa << kLog2FracBits) >> msb};
}

const std::array<std::uint32_t, 16>& log2_correction_table() {
  static const std::array<std::uint32_t, 16> table = [] {
    std::array<std::uint32_t, 16> t{};
    for (int k = 0; k < 16; ++k) {
      const double f = k / 16.0;
      t[static_cast<std::size_t>(k)] =
          static_cast<std::uint32_t>(std::lround((std::log2(1.0 + f) - f) * 65536.0));
    }
    return t;
  }();
  return table;
}

namespace {

std::uint16_t scale_log2(std::uint32_t log2_q16) {
  const std::uint32_t shift = kLog2FracBits - kLogFracBits;
  return static_cast<std::uint16_t>((log2_q16 * kLogScale + (1u << (shift - 1))) >> shift);
}

}  // namespace

std::uint16_t log2_fixed_q(std::uint16_t v, int frac_bits) {
  const auto [i, f] = log2_split(v, frac_bits);
  constexpr int low_bits = kLog2FracBits - kLog2LutBits;
  const auto& table = log2_correction_table();
  const std::uint32_t index = f >> low_bits;
  const std::int64_t low = f & ((1u << low_bits) - 1);
  // Interpolate toward the next entry; the correction is zero again at f = 1.
  const std::int64_t here = table[index];
  const std::int64_t next = index + 1 < table.size() ? table[index + 1] : 0;
  const std::int64_t step = (next - here) * low;
  const std::int64_t half = std::int64_t{1} << (low_bits - 1);
  const std::int64_t correction = here + (step >= 0 ? (step + half) >> low_bits
                                                    : -((-step + half) >> low_bits));
  const auto corrected = static_cast<std::uint32_t>(static_cast<std::int64_t>(f) + correction);
  return scale_log2((static_cast<std::uint32_t>(i) << kLog2FracBits) + corrected);
}

std::uint16_t log2_mitchell_q(std::uint16_t v, int frac_bits) {
  const auto [i, f] = log2_split(v, frac_bits);
  return scale_log2((static_cast<std::uint32_t>(i) << kLog2FracBits) + f);
}

std::uint16_t log2_fixed(std::uint8_t v) { return log2_fixed_q(v, 0); }

std::uint16_t log2_mitchell(std::uint8_t v) { return log2_mitchell_q(v, 0); }

// ---------------------------------------------------------------------------

std::uint16_t mult8x8(std::uint8_t n1, std::uint8_t n2) {
  std::array<std::uint32_t, 8> level{};
  for (int bit = 0; bit < 8; ++bit) {
    level[static_cast<std::size_t>(bit)] = ((n1 >> bit) & 1u) ? (std::uint32_t{n2} << bit) : 0u;
  }
  for (std::size_t width = 8; width > 1; width /= 2) {
    for (std::size_t j = 0; j < width / 2; ++j) level[j] = level[2 * j] + level[2 * j + 1];
  }
  return static_cast<std::uint16_t>(level[0]);
}

TaggedProduct mult8x8(std::uint8_t n1, std::uint8_t n2, std::uint64_t issue_cycle) {
  return {mult8x8(n1, n2), issue_cycle + kMultiplierStages};
}

std::optional<std::uint16_t> PipelinedMultiplier::clock(
    std::optional<std::pair<std::uint8_t, std::uint8_t>> in) {
  const auto out = stages_.back();
  std::move_backward(stages_.begin(), stages_.end() - 1, stages_.end());
  stages_.front() =
      in ? std::optional<std::uint16_t>(mult8x8(in->first, in->second)) : std::nullopt;
  return out;
}

std::uint64_t multiply_bytewise(std::uint32_t a, std::uint32_t b) {
  std::uint64_t sum = 0;
  for (int i = 0; i < 4; ++i) {
    const auto ai = static_cast<std::uint8_t>(a >> (8 * i));
    if (ai == 0) continue;
    for (int j = 0; j < 4; ++j) {
      const auto bj = static_cast<std::uint8_t>(b >> (8 * j));
      sum += static_cast<std::uint64_t>(mult8x8(ai, bj)) << (8 * (i + j));
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------

std::string_view to_string(StatsMode mode) {
  return mode == StatsMode::two_pass ? "two_pass" : "previous_frame";
}

StatsMode parse_stats_mode(std::string_view name) {
  if (name == "two_pass") return StatsMode::two_pass;
  if (name == "previous_frame") return StatsMode::previous_frame;
  throw std::invalid_argument("unknown stats mode '" + std::string(name) + "'");
}

FrameStats frame_stats(std::span<const std::uint16_t> log_values, StatsMode mode,
                       const std::optional<FrameStats>& previous) {
  if (log_values.empty()) throw std::invalid_argument("frame statistics need a non-empty frame");
  if (mode == StatsMode::previous_frame && previous) {
    FrameStats s = *previous;
    s.source = StatsMode::previous_frame;
    return s;
  }
  const auto [lo, hi] = std::minmax_element(log_values.begin(), log_values.end());
  return {*lo, *hi, StatsMode::two_pass};
}

std::uint32_t gain_q14(const FrameStats& stats) {
  const std::uint32_t range = stats.gl_max - stats.gl_min;
  if (range == 0) return 0;
  return ((255u << kGainFormat.frac_bits) + range / 2) / range;
}

std::uint8_t gain_offset_fixed(std::uint16_t v, const FrameStats& stats) {
  const std::uint32_t range = stats.gl_max - stats.gl_min;
  if (range == 0) {
    const std::uint32_t rounded = (v + (1u << (kLogFracBits - 1))) >> kLogFracBits;
    return static_cast<std::uint8_t>(std::min<std::uint32_t>(rounded, 255));
  }
  if (v <= stats.gl_min) return 0;
  const std::uint32_t diff = v - stats.gl_min;
  if (diff >= range) return 255;
  const std::uint64_t product = multiply_bytewise(diff, gain_q14(stats));
  const std::uint64_t rounded =
      (product + (std::uint64_t{1} << (kGainFormat.frac_bits - 1))) >> kGainFormat.frac_bits;
  return static_cast<std::uint8_t>(std::min<std::uint64_t>(rounded, 255));
}

}  // namespace gce::hw
