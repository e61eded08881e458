#include "fdyn/atlas.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdio>

#include "fdyn/cycles.hpp"
#include "fdyn/escape.hpp"

namespace fdyn {

ImageBuffer::ImageBuffer(int nx_, int ny_) : nx(nx_), ny(ny_) {
  if (nx < 1 || ny < 1) throw DomainError("ImageBuffer: dimensions must be >= 1");
  rgb.assign(3 * static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0);
}

Rgb ImageBuffer::at(int i, int j) const {
  const std::size_t k = 3 * (static_cast<std::size_t>(j) * nx + i);
  return {rgb[k], rgb[k + 1], rgb[k + 2]};
}

void ImageBuffer::set(int i, int j, Rgb c) {
  const std::size_t k = 3 * (static_cast<std::size_t>(j) * nx + i);
  rgb[k] = c.r;
  rgb[k + 1] = c.g;
  rgb[k + 2] = c.b;
}

Rgb escape_color(int level) {
  const std::uint8_t g = kEscapeRamp[static_cast<std::size_t>(std::clamp(level, 0, 15))];
  return {g, g, g};
}

Rgb period_color(int period) {
  return kPeriodPalette[static_cast<std::size_t>((std::max(period, 1) - 1) % 12)];
}

ImageBuffer render_parameter(const GridSpec& spec, int max_iter, int period_max, int workers,
                             double bailout_constant) {
  if (max_iter < 1) throw DomainError("render_parameter: max_iter must be >= 1");
  ImageBuffer img(spec.nx, spec.ny);
  for_each_row_band(spec.ny, workers, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < spec.nx; ++i) {
        const Complex t = spec.point(i, j);
        Rgb c = kUndecided;
        if (t != Complex{0.0, 0.0}) {
          const OrbitScan s = scan_critical_orbit(Parameter(t), max_iter, bailout_constant);
          if (s.escape_level >= 0) {
            c = escape_color(s.escape_level);
          } else if (s.cycle && std::abs(s.cycle->multiplier) < 1.0 && s.cycle->period <= period_max) {
            c = period_color(s.cycle->period);
          }
        }
        img.set(i, j, c);
      }
    }
  });
  return img;
}

ImageBuffer render_julia(const Parameter& t, const GridSpec& spec, int max_iter, int workers,
                         double bailout_constant) {
  if (max_iter < 1) throw DomainError("render_julia: max_iter must be >= 1");
  ImageBuffer img(spec.nx, spec.ny);
  const std::optional<CycleInfo> cycle = find_attracting_cycle(t);
  const CycleInfo* cyc = cycle ? &*cycle : nullptr;
  for_each_row_band(spec.ny, workers, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < spec.nx; ++i) {
        const Verdict v = classify_dynamical(t, ExtendedComplex(spec.point(i, j)), max_iter, cyc,
                                             bailout_constant);
        Rgb c = kUndecided;
        if (v.kind == VerdictKind::EscapeLevel) {
          c = escape_color(v.level);
        } else if (v.kind == VerdictKind::AttractingCycle) {
          c = period_color(v.phase + 1);
        }
        img.set(i, j, c);
      }
    }
  });
  return img;
}

std::string encode_ppm(const ImageBuffer& img) {
  char header[64];
  const int n = std::snprintf(header, sizeof header, "P6\n%d %d\n255\n", img.nx, img.ny);
  std::string out(header, static_cast<std::size_t>(n));
  out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
  return out;
}

namespace {

// Reads one whitespace-delimited unsigned header token; '#' comments are skipped.
int header_int(std::string_view s, std::size_t& pos) {
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    } else if (s[pos] == '#') {
      while (pos < s.size() && s[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  long v = 0;
  const std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + (s[pos] - '0');
    if (v > 1000000) throw DomainError("decode_ppm: header value too large");
    ++pos;
  }
  if (pos == start) throw DomainError("decode_ppm: malformed header");
  return static_cast<int>(v);
}

}  // namespace

ImageBuffer decode_ppm(std::string_view s) {
  if (s.size() < 2 || s.substr(0, 2) != "P6") throw DomainError("decode_ppm: not a P6 stream");
  std::size_t pos = 2;
  const int nx = header_int(s, pos);
  const int ny = header_int(s, pos);
  const int maxval = header_int(s, pos);
  if (maxval != 255) throw DomainError("decode_ppm: only maxval 255 is supported");
  if (pos >= s.size() || !std::isspace(static_cast<unsigned char>(s[pos]))) {
    throw DomainError("decode_ppm: malformed header");
  }
  ++pos;
  ImageBuffer img(nx, ny);
  if (s.size() - pos != img.rgb.size()) throw DomainError("decode_ppm: pixel data has the wrong length");
  std::copy(s.begin() + static_cast<std::ptrdiff_t>(pos), s.end(), img.rgb.begin());
  return img;
}

std::uint64_t average_hash(const ImageBuffer& img) {
  std::array<double, 64> block{};
  for (int by = 0; by < 8; ++by) {
    const int j0 = by * img.ny / 8, j1 = std::max(j0 + 1, (by + 1) * img.ny / 8);
    for (int bx = 0; bx < 8; ++bx) {
      const int i0 = bx * img.nx / 8, i1 = std::max(i0 + 1, (bx + 1) * img.nx / 8);
      long long sum = 0, count = 0;
      for (int j = j0; j < std::min(j1, img.ny); ++j) {
        for (int i = i0; i < std::min(i1, img.nx); ++i) {
          const Rgb c = img.at(i, j);
          sum += 299LL * c.r + 587LL * c.g + 114LL * c.b;
          ++count;
        }
      }
      block[static_cast<std::size_t>(by * 8 + bx)] = count ? static_cast<double>(sum) / count : 0.0;
    }
  }
  double mean = 0.0;
  for (double b : block) mean += b;
  mean /= 64.0;
  std::uint64_t h = 0;
  for (int k = 0; k < 64; ++k) {
    if (block[static_cast<std::size_t>(k)] > mean) h |= std::uint64_t{1} << k;
  }
  return h;
}

int hamming_distance(std::uint64_t a, std::uint64_t b) { return std::popcount(a ^ b); }

}  // namespace fdyn
