#include <random>

#include "doctest.h"
#include "gce/serpentine.hpp"
#include "oracles.hpp"

using namespace gce;
using namespace gce::hw;

namespace {

constexpr BorderPolicy kAllBorders[] = {BorderPolicy::replicate, BorderPolicy::reflect,
                                        BorderPolicy::zero};

bool windows_match(const Plane& p, const std::vector<WindowEvent>& got, BorderPolicy border) {
  const oracle::Padded padded = oracle::pad(p, border);
  if (got.size() != p.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const long x = static_cast<long>(i % p.width()), y = static_cast<long>(i / p.width());
    if (got[i].x != static_cast<std::size_t>(x) || got[i].y != static_cast<std::size_t>(y)) return false;
    for (int dy = -2; dy <= 2; ++dy) {
      for (int dx = -2; dx <= 2; ++dx) {
        if (got[i].window[dy + 2][dx + 2] != padded.at(x + dx, y + dy)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("row FIFO delays by its depth") {
  RowFifo f(3);
  CHECK_FALSE(f.push(1).has_value());
  CHECK_FALSE(f.push(2).has_value());
  CHECK_FALSE(f.push(3).has_value());
  CHECK(f.push(4) == 1);
  CHECK(f.push(5) == 2);
  CHECK(f.occupancy() == 3);
  CHECK(f.peak_occupancy() == 3);
  CHECK_THROWS_AS(RowFifo(0), std::invalid_argument);
}

TEST_CASE("one window per pixel") {
  const Plane p(8, 8, 9);
  const auto events = to_pixel_events(p);
  const auto windows = window_stream(events, 8, 8, BorderPolicy::replicate);
  CHECK(windows.size() == 64);
  for (const auto& w : windows) {
    CHECK(w.valid);
    for (const auto& row : w.window) {
      for (auto v : row) CHECK(v == 9);
    }
  }
}

TEST_CASE("ramp windows equal direct indexing") {
  Plane p(16, 16);
  for (std::size_t y = 0; y < 16; ++y) {
    for (std::size_t x = 0; x < 16; ++x) p.at(x, y) = static_cast<std::uint8_t>(x + 16 * y);
  }
  for (auto border : kAllBorders) {
    CHECK(windows_match(p, window_stream(to_pixel_events(p), 16, 16, border), border));
  }
}

TEST_CASE("window equivalence for every frame size up to 32x32") {
  std::mt19937 rng(1);
  for (std::size_t h = 1; h <= 32; ++h) {
    for (std::size_t w = 1; w <= 32; ++w) {
      const Plane p = oracle::random_plane(rng, w, h);
      const auto events = to_pixel_events(p);
      for (auto border : kAllBorders) {
        INFO(w << "x" << h << " " << to_string(border));
        REQUIRE(windows_match(p, window_stream(events, w, h, border), border));
      }
    }
  }
}

TEST_CASE("windows leave two rows and two pixels after their center") {
  std::mt19937 rng(2);
  const Plane p = oracle::random_plane(rng, 13, 6);
  SerpentineBuffer buf(13, 6, BorderPolicy::replicate);
  CHECK(buf.fifos().size() == 4);
  CHECK(buf.fifo_depth() == 13);
  const auto windows = window_stream(to_pixel_events(p), 13, 6, BorderPolicy::replicate);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    CHECK(windows[i].cycle == i + 2 * 13 + 2);
  }
}

TEST_CASE("FIFO occupancy never exceeds the configured depth") {
  std::mt19937 rng(3);
  const Plane p = oracle::random_plane(rng, 20, 12);
  SerpentineBuffer buf(20, 12, BorderPolicy::reflect);
  std::uint64_t cycle = 0;
  for (const auto& ev : to_pixel_events(p)) {
    buf.clock(ev);
    cycle = ev.cycle + 1;
    for (const auto& f : buf.fifos()) REQUIRE(f.occupancy() <= f.depth());
  }
  while (!buf.done()) buf.clock(PixelEvent{cycle++, 0, false});
  for (const auto& f : buf.fifos()) CHECK(f.peak_occupancy() == 20);
}

TEST_CASE("input bubbles stall the former without changing windows") {
  std::mt19937 rng(4);
  const Plane p = oracle::random_plane(rng, 9, 7);
  std::vector<PixelEvent> events;
  std::uint64_t cycle = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i % 5 == 2) events.push_back({cycle++, 0, false});
    events.push_back({cycle++, p.data()[i], true});
  }
  const auto windows = window_stream(events, 9, 7, BorderPolicy::replicate);
  CHECK(windows_match(p, windows, BorderPolicy::replicate));
  CHECK(windows.back().cycle > p.size() + 2 * 9 + 2 - 1);
}

TEST_CASE("pixel count mismatches are stream errors") {
  const Plane p(6, 6, 1);
  auto events = to_pixel_events(p);
  events.pop_back();
  CHECK_THROWS_AS(window_stream(events, 6, 6, BorderPolicy::replicate), StreamError);

  events = to_pixel_events(p);
  events.push_back({events.back().cycle + 1, 3, true});
  CHECK_THROWS_AS(window_stream(events, 6, 6, BorderPolicy::replicate), StreamError);
}

TEST_CASE("the W-3 row FIFO preset misaligns the window") {
  std::mt19937 rng(5);
  const Plane p = oracle::random_plane(rng, 16, 16);
  CHECK(short_fifo_depth(16) == 13);
  const auto windows =
      window_stream(to_pixel_events(p), 16, 16, BorderPolicy::replicate, short_fifo_depth(16));
  CHECK_FALSE(windows_match(p, windows, BorderPolicy::replicate));
  CHECK(windows_match(p,
                      window_stream(to_pixel_events(p), 16, 16, BorderPolicy::replicate,
                                    default_fifo_depth(16)),
                      BorderPolicy::replicate));
}
