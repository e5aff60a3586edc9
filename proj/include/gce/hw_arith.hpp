#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gce/golden.hpp"

namespace gce::hw {

/// Unsigned fixed-point layout: `total_bits` wide, `frac_bits` below the
/// binary point.
struct FixedFormat {
  int total_bits;
  int frac_bits;

  constexpr std::uint64_t max_raw() const { return (std::uint64_t{1} << total_bits) - 1; }
  constexpr bool fits(std::uint64_t raw) const { return raw <= max_raw(); }
  constexpr double to_real(std::uint64_t raw) const {
    return static_cast<double>(raw) / static_cast<double>(std::uint64_t{1} << frac_bits);
  }
};

inline constexpr FixedFormat kConvAccFormat{17, 0};     // 25-tap sum, max 255*273
inline constexpr FixedFormat kReciprocalFormat{12, 20};  // round(2^20 / denom)
inline constexpr FixedFormat kLogFormat{16, 6};          // Q10.6 log-domain samples
inline constexpr FixedFormat kLog2InternalFormat{20, 16};  // i + f before the x48 scale
inline constexpr FixedFormat kGainFormat{24, 14};         // Q8.8 gain per Q10.6 step

using Window5 = std::array<std::array<std::uint8_t, 5>, 5>;

// ---------------------------------------------------------------------------
// Constant-coefficient multiplication

/// One signed power-of-two term of a canonical signed digit expansion.
struct ShiftAddTerm {
  int shift;
  int sign;  // +1 or -1
};

/// Canonical signed digit (non-adjacent form) expansion of `coeff`; the
/// number of terms is the adder count of the hardwired multiplier.
std::vector<ShiftAddTerm> csd_decompose(std::uint32_t coeff);

/// Multiplier hardwired to one coefficient: shifts and adds only.
class ConstCoeffMultiplier {
public:
  explicit ConstCoeffMultiplier(std::uint32_t coeff);

  std::uint32_t operator()(std::uint8_t pixel) const;
  std::uint32_t coefficient() const { return coeff_; }
  std::size_t adder_count() const { return terms_.empty() ? 0 : terms_.size() - 1; }

private:
  std::uint32_t coeff_;
  std::vector<ShiftAddTerm> terms_;
};

/// Fractional bits carried on the convolution output bus. Zero reproduces a
/// plain 8-bit conv_out; the default keeps four bits below the integer so the
/// log stage sees sub-unit detail in dark regions.
inline constexpr int kDefaultConvFracBits = 4;
inline constexpr int kMaxConvFracBits = 6;

/// Bank of 25 hardwired multipliers plus the reciprocal of the denominator.
class ConvolutionUnit {
public:
  explicit ConvolutionUnit(const golden::Kernel5& kernel, int frac_bits = 0);

  /// Weighted 25-tap sum (17-bit accumulator).
  std::uint32_t accumulate(const Window5& window) const;
  /// Accumulator scaled by the Q20 reciprocal, rounded and clamped to
  /// [0, 255] in Q8.frac_bits.
  std::uint16_t normalize(std::uint32_t acc) const;
  std::uint16_t operator()(const Window5& window) const { return normalize(accumulate(window)); }

  std::uint32_t reciprocal() const { return reciprocal_; }
  int frac_bits() const { return frac_bits_; }

private:
  std::array<std::array<ConstCoeffMultiplier, 5>, 5> taps_;
  std::uint32_t reciprocal_;
  int frac_bits_;
};

/// round(2^20 / denom).
std::uint32_t reciprocal_q20(int denom);

/// (acc * reciprocal + half) >> (20 - frac_bits), clamped to 255 in
/// Q8.frac_bits.
std::uint16_t normalize_q20(std::uint32_t acc, std::uint32_t reciprocal, int frac_bits = 0);

/// Fixed-point 5x5 convolution of one window to an 8-bit value.
std::uint8_t conv_fixed(const Window5& window, const golden::Kernel5& kernel);

// ---------------------------------------------------------------------------
// Base-2 logarithm

inline constexpr int kLogScale = 48;  // k * scale = 1.5 * 32
inline constexpr int kLogFracBits = 6;
inline constexpr int kLog2FracBits = 16;
inline constexpr int kLog2LutBits = 4;

/// Integer part (leading-one position of 1 + v) and Q16 mantissa fraction.
struct Log2Split {
  int integer;
  std::uint32_t fraction;
};

/// Splits 1 + v where v is unsigned Q8.frac_bits.
Log2Split log2_split(std::uint16_t v, int frac_bits = 0);

/// Correction added to the Mitchell fraction, indexed by its top four bits;
/// entry k is round(2^16 * (log2(1 + k/16) - k/16)). The low twelve bits
/// interpolate linearly toward entry k + 1 (zero past the last entry).
const std::array<std::uint32_t, 16>& log2_correction_table();

/// 48 * log2(1 + v) in Q10.6 using Mitchell's fraction plus the correction
/// table.
std::uint16_t log2_fixed(std::uint8_t v);

/// Same unit fed from a Q8.frac_bits convolution bus.
std::uint16_t log2_fixed_q(std::uint16_t v, int frac_bits);

/// Same datapath with the correction table bypassed.
std::uint16_t log2_mitchell(std::uint8_t v);
std::uint16_t log2_mitchell_q(std::uint16_t v, int frac_bits);

// ---------------------------------------------------------------------------
// 8x8 multiplier

inline constexpr int kMultiplierStages = 5;

/// Product of two bytes. Formed as eight AND-gated partial products reduced
/// by a three-level adder tree, the same structure the pipelined unit
/// registers between levels.
std::uint16_t mult8x8(std::uint8_t n1, std::uint8_t n2);

struct TaggedProduct {
  std::uint16_t value;
  std::uint64_t ready_cycle;
};

/// Functional result with its issue cycle advanced by the pipeline depth.
TaggedProduct mult8x8(std::uint8_t n1, std::uint8_t n2, std::uint64_t issue_cycle);

/// Clocked five-stage multiplier: one operand pair in and one product out per
/// cycle, each product emerging five clocks after its operands.
class PipelinedMultiplier {
public:
  std::optional<std::uint16_t> clock(std::optional<std::pair<std::uint8_t, std::uint8_t>> in);

private:
  std::array<std::optional<std::uint16_t>, kMultiplierStages> stages_{};
};

/// Wide unsigned product assembled from byte-by-byte mult8x8 partial products.
std::uint64_t multiply_bytewise(std::uint32_t a, std::uint32_t b);

// ---------------------------------------------------------------------------
// Gain/offset correction

enum class StatsMode { two_pass, previous_frame };

std::string_view to_string(StatsMode mode);
StatsMode parse_stats_mode(std::string_view name);

/// Log-domain extrema (Q10.6 raw) used to stretch a frame.
struct FrameStats {
  std::uint16_t gl_min = 0;
  std::uint16_t gl_max = 0;
  StatsMode source = StatsMode::two_pass;

  bool operator==(const FrameStats&) const = default;
};

/// two_pass: extrema of `log_values`. previous_frame: `previous` when given,
/// otherwise the extrema of `log_values` (the first frame of a sequence).
/// Throws std::invalid_argument on an empty frame.
FrameStats frame_stats(std::span<const std::uint16_t> log_values, StatsMode mode,
                       const std::optional<FrameStats>& previous = std::nullopt);

/// round(255 * 2^14 / (gl_max - gl_min)); zero for a degenerate range.
std::uint32_t gain_q14(const FrameStats& stats);

/// Stretches one Q10.6 sample onto [0, 255]. A zero range bypasses the
/// stretch and emits clamp(round(v)).
std::uint8_t gain_offset_fixed(std::uint16_t v, const FrameStats& stats);

}  // namespace gce::hw
