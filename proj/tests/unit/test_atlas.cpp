#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fdyn/atlas.hpp"

using fdyn::Complex;
using fdyn::GridSpec;
using fdyn::ImageBuffer;
using fdyn::Parameter;
using fdyn::Rgb;

namespace fdyn {
std::ostream& operator<<(std::ostream& os, Rgb c) {
  return os << '(' << int(c.r) << ',' << int(c.g) << ',' << int(c.b) << ')';
}
}  // namespace fdyn

namespace {

const std::string kGolden = FDYN_GOLDEN_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// FDYN_WRITE_GOLDEN=1 regenerates instead of comparing.
bool regenerate() {
  const char* v = std::getenv("FDYN_WRITE_GOLDEN");
  return v && std::string(v) == "1";
}

bool rotation_symmetric(const ImageBuffer& img) {
  for (int j = 0; j < img.ny; ++j) {
    for (int i = 0; i < img.nx; ++i) {
      if (!(img.at(i, j) == img.at(img.nx - 1 - i, img.ny - 1 - j))) return false;
    }
  }
  return true;
}

Rgb pixel_at(const ImageBuffer& img, const GridSpec& g, Complex z) {
  const auto px = g.pixel_of(z);
  REQUIRE(px);
  return img.at(px->first, px->second);
}

const double kMisiurewicz = std::sqrt(4.0 + 2.0 * std::sqrt(2.0));

}  // namespace

TEST_CASE("palette tables") {
  CHECK(fdyn::period_color(1) == Rgb{255, 0, 0});
  CHECK(fdyn::period_color(2) == Rgb{0, 200, 0});
  CHECK(fdyn::period_color(3) == Rgb{0, 0, 255});
  CHECK(fdyn::period_color(4) == Rgb{255, 255, 0});
  CHECK(fdyn::period_color(13) == fdyn::period_color(1));
  for (int k = 0; k < 15; ++k) {
    CHECK(fdyn::escape_color(k).r > fdyn::escape_color(k + 1).r);
    // grey never collides with black or a palette entry
    CHECK_FALSE(fdyn::escape_color(k) == fdyn::kUndecided);
  }
  CHECK(fdyn::escape_color(40) == fdyn::escape_color(15));
}

TEST_CASE("ppm encoding") {
  ImageBuffer white(1, 1);
  white.set(0, 0, {255, 255, 255});
  const std::string bytes = fdyn::encode_ppm(white);
  // 11 header bytes plus one pixel
  CHECK(bytes.size() == 14);
  CHECK(bytes == std::string("P6\n1 1\n255\n\xff\xff\xff"));

  ImageBuffer img(5, 3);
  for (std::size_t k = 0; k < img.rgb.size(); ++k) img.rgb[k] = static_cast<std::uint8_t>(k * 37 % 256);
  CHECK(fdyn::decode_ppm(fdyn::encode_ppm(img)) == img);
  CHECK(fdyn::decode_ppm("P6\n# comment\n5 3\n255\n" + std::string(45, 'x')).nx == 5);

  CHECK_THROWS_AS(fdyn::decode_ppm("P3\n1 1\n255\n000"), fdyn::DomainError);
  CHECK_THROWS_AS(fdyn::decode_ppm("P6\n1 1\n65535\n\0\0\0\0\0\0"), fdyn::DomainError);
  CHECK_THROWS_AS(fdyn::decode_ppm("P6\n2 2\n255\n\xff\xff\xff"), fdyn::DomainError);
  CHECK_THROWS_AS(ImageBuffer(0, 3), fdyn::DomainError);
}

TEST_CASE("average hash") {
  ImageBuffer img(64, 64);
  for (int j = 0; j < 64; ++j) {
    for (int i = 32; i < 64; ++i) img.set(i, j, {255, 255, 255});
  }
  // right half bright: columns 4..7 of every block row
  std::uint64_t expect = 0;
  for (int r = 0; r < 8; ++r) expect |= std::uint64_t{0xF0} << (8 * r);
  CHECK(fdyn::average_hash(img) == expect);
  CHECK(fdyn::average_hash(ImageBuffer(64, 64)) == 0);
  CHECK(fdyn::hamming_distance(expect, 0) == 32);
  // small images still hash
  CHECK(fdyn::average_hash(ImageBuffer(3, 2)) == 0);
}

TEST_CASE("parameter render on the wide viewport") {
  const GridSpec g = GridSpec::from_bounds(-3.0, 3.0, -2.0, 2.0, 192, 128);
  const ImageBuffer one = fdyn::render_parameter(g, 2000, 14, 1);
  const ImageBuffer many = fdyn::render_parameter(g, 2000, 14, 8);
  CHECK(one == many);
  CHECK(fdyn::encode_ppm(one) == fdyn::encode_ppm(many));
  CHECK(rotation_symmetric(one));
  CHECK(pixel_at(one, g, {0.01, 0.0}) == fdyn::period_color(1));
  CHECK(pixel_at(one, g, {std::sqrt(2.0), 0.0}) == fdyn::period_color(2));
  CHECK(pixel_at(one, g, {-std::sqrt(2.0), 0.0}) == fdyn::period_color(2));
  // at least periods 1..3 and two escape levels appear
  std::set<std::uint32_t> colors;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const Rgb c = one.at(i, j);
      colors.insert((std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b);
    }
  }
  for (int p = 1; p <= 3; ++p) {
    const Rgb c = fdyn::period_color(p);
    CHECK(colors.count((std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b) == 1);
  }
}

TEST_CASE("parameter render far out is level 0") {
  const GridSpec g({5.0, 0.0}, 1.0, 1.0, 16, 16);
  const ImageBuffer img = fdyn::render_parameter(g, 200, 14, 2);
  for (int j = 0; j < 16; ++j) {
    for (int i = 0; i < 16; ++i) CHECK(img.at(i, j) == fdyn::escape_color(0));
  }
}

TEST_CASE("period_max hides longer periods") {
  const GridSpec g = GridSpec::from_bounds(-3.0, 3.0, -2.0, 2.0, 96, 64);
  const ImageBuffer img = fdyn::render_parameter(g, 2000, 1, 0);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) CHECK_FALSE(img.at(i, j) == fdyn::period_color(2));
  }
  CHECK(pixel_at(img, g, {std::sqrt(2.0), 0.0}) == fdyn::kUndecided);
}

TEST_CASE("julia render of sqrt2 matches the frozen golden") {
  const GridSpec g = GridSpec::centered_square(3.0, 64);
  const ImageBuffer img = fdyn::render_julia(Parameter(std::sqrt(2.0)), g, 2000, 3);
  const std::string bytes = fdyn::encode_ppm(img);
  const std::string path = kGolden + "/julia_sqrt2_64.ppm";
  if (regenerate()) {
    std::ofstream(path, std::ios::binary) << bytes;
  }
  CHECK(bytes == slurp(path));
  CHECK(rotation_symmetric(img));
  // superattracting 2-cycle 0 -> t -> 0: the two phases sit at 0 and t
  const Rgb at0 = pixel_at(img, g, {0.0, 0.0});
  const Rgb att = pixel_at(img, g, {std::sqrt(2.0), 0.0});
  CHECK_FALSE(at0 == att);
  CHECK((at0 == fdyn::period_color(1) || at0 == fdyn::period_color(2)));
  CHECK((att == fdyn::period_color(1) || att == fdyn::period_color(2)));
  const Rgb corner = img.at(0, 0);
  CHECK((corner.r == corner.g && corner.g == corner.b && corner.r > 0));
}

TEST_CASE("julia render near the Misiurewicz parameter keeps its hash") {
  const GridSpec g = GridSpec::centered_square(3.0, 256);
  const ImageBuffer img = fdyn::render_julia(Parameter(kMisiurewicz - 1e-4), g, 2000, 0);
  CHECK(rotation_symmetric(img));
  const std::uint64_t h = fdyn::average_hash(img);
  const std::string path = kGolden + "/julia_sierpinski_256.ahash";
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  if (regenerate()) {
    std::ofstream(path) << hex << "\n";
  }
  std::istringstream in(slurp(path));
  std::string stored;
  in >> stored;
  const std::uint64_t golden = std::stoull(stored, nullptr, 16);
  CHECK_MESSAGE(fdyn::hamming_distance(h, golden) <= 2, "hash " << hex << " vs " << stored);
  // the pole basin around z = 1 is level 1, the far field level 0
  CHECK(pixel_at(img, g, {1.0, 0.0}) == fdyn::escape_color(1));
  CHECK(pixel_at(img, g, {-1.0, 0.0}) == fdyn::escape_color(1));
  CHECK(pixel_at(img, g, {2.95, 2.95}) == fdyn::escape_color(0));
}

TEST_CASE("julia render with an attracting fixed point shows two basins") {
  const Parameter t(Complex{0.4, 1.3});
  const GridSpec g = GridSpec::centered_square(3.0, 96);
  const ImageBuffer img = fdyn::render_julia(t, g, 2000, 0);
  CHECK(rotation_symmetric(img));
  long long grey = 0, red = 0, other = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const Rgb c = img.at(i, j);
      if (c == fdyn::period_color(1)) {
        ++red;
      } else if (c.r == c.g && c.g == c.b && c.r > 0) {
        ++grey;
      } else {
        ++other;
      }
    }
  }
  CHECK(red > 100);
  CHECK(grey > 100);
  CHECK(other < g.nx * g.ny / 100);
  // the critical points 0 and the critical value t lie in S_t
  CHECK(pixel_at(img, g, {0.0, 0.0}) == fdyn::period_color(1));
  CHECK(pixel_at(img, g, t.value()) == fdyn::period_color(1));
}

TEST_CASE("julia render determinism across worker counts") {
  const GridSpec g = GridSpec::centered_square(3.0, 80);
  const Parameter t(Complex{0.4, 1.3});
  CHECK(fdyn::render_julia(t, g, 500, 1) == fdyn::render_julia(t, g, 500, 7));
}
