#pragma once

// Deterministic renders of the parameter plane and of dynamical planes,
// PPM (P6) encoding and a 64-bit average hash for regression checks.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fdyn/family.hpp"
#include "fdyn/grid.hpp"

namespace fdyn {

struct Rgb {
  std::uint8_t r, g, b;
  friend bool operator==(Rgb a, Rgb b) { return a.r == b.r && a.g == b.g && a.b == b.b; }
};

/// Hyperbolic period p uses kPeriodPalette[(p - 1) % 12]; Julia basins use the phase.
inline constexpr std::array<Rgb, 12> kPeriodPalette{{
    {255, 0, 0},      // 1 red
    {0, 200, 0},      // 2 green
    {0, 0, 255},      // 3 blue
    {255, 255, 0},    // 4 yellow
    {255, 0, 255},    // 5 magenta
    {0, 255, 255},    // 6 cyan
    {255, 128, 0},    // 7 orange
    {128, 0, 255},    // 8 violet
    {0, 128, 128},    // 9 teal
    {128, 64, 0},     // 10 brown
    {255, 128, 192},  // 11 pink
    {128, 255, 128},  // 12 pale green
}};

/// Escape level k uses grey kEscapeRamp[min(k, 15)].
inline constexpr std::array<std::uint8_t, 16> kEscapeRamp{
    {240, 224, 208, 192, 176, 160, 144, 128, 116, 104, 92, 80, 70, 60, 50, 40}};

inline constexpr Rgb kUndecided{0, 0, 0};

inline constexpr int kRenderMaxIter = 2000;
inline constexpr int kDefaultPeriodMax = 14;

struct ImageBuffer {
  int nx = 0;
  int ny = 0;
  /// Row-major RGB, top row first; size 3 nx ny.
  std::vector<std::uint8_t> rgb;

  ImageBuffer() = default;
  ImageBuffer(int nx, int ny);
  Rgb at(int i, int j) const;
  void set(int i, int j, Rgb c);
  friend bool operator==(const ImageBuffer& a, const ImageBuffer& b) {
    return a.nx == b.nx && a.ny == b.ny && a.rgb == b.rgb;
  }
};

Rgb escape_color(int level);
Rgb period_color(int period);

/// Parameter plane: grey by escape level, palette by period up to period_max,
/// black otherwise (Undecided, longer periods, t = 0).
ImageBuffer render_parameter(const GridSpec& spec, int max_iter = kRenderMaxIter,
                             int period_max = kDefaultPeriodMax, int workers = 0,
                             double bailout_constant = 10.0);

/// Dynamical plane of f_t: grey by escape level, palette by phase for points
/// attracted to the attracting cycle of the critical orbit, black otherwise.
ImageBuffer render_julia(const Parameter& t, const GridSpec& spec, int max_iter = kRenderMaxIter,
                         int workers = 0, double bailout_constant = 10.0);

std::string encode_ppm(const ImageBuffer& img);
/// Inverse of encode_ppm; throws DomainError on anything but a maxval-255 P6 stream.
ImageBuffer decode_ppm(std::string_view bytes);

/// 8x8 block means of luma; bit (row * 8 + col) is set when the block is
/// brighter than the mean of all blocks. Bit 0 is the top-left block.
std::uint64_t average_hash(const ImageBuffer& img);
int hamming_distance(std::uint64_t a, std::uint64_t b);

}  // namespace fdyn
