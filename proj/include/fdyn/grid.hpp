#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace fdyn {

using Complex = std::complex<double>;

/// Rectangular sampling of the complex plane. Pixel (i, j) has real part
/// center.re + ((i + 0.5)/nx - 0.5) * width and imaginary part
/// center.im + (0.5 - (j + 0.5)/ny) * height, so row 0 is the top. On a grid
/// centered at 0, mirrored pixels are exact negatives of each other.
struct GridSpec {
  Complex center{0.0, 0.0};
  double width = 6.0;
  double height = 6.0;
  int nx = 512;
  int ny = 512;

  GridSpec() = default;
  GridSpec(Complex center, double width, double height, int nx, int ny);
  static GridSpec from_bounds(double xmin, double xmax, double ymin, double ymax, int nx, int ny);
  /// Square grid [-half, half]^2 centered at the origin.
  static GridSpec centered_square(double half, int n);

  Complex point(int i, int j) const;
  /// Pixel whose center is nearest to z, or nullopt when z is outside the grid.
  std::optional<std::pair<int, int>> pixel_of(Complex z) const;
  double pixel_width() const { return width / nx; }
  double pixel_height() const { return height / ny; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
};

/// Number of worker threads to use when the caller passes 0.
int default_workers();

/// Splits rows [0, ny) into contiguous bands and runs fn(row_begin, row_end)
/// on up to `workers` threads. Bands are disjoint, so writes keyed by row
/// need no synchronization.
void for_each_row_band(int ny, int workers, const std::function<void(int, int)>& fn);

/// 4-connected components of pixels sharing a class value; classes <= 0 are
/// background. labels receives 0 for background and 1..count otherwise, in
/// raster order of first appearance. Returns count.
int label_components(const std::vector<int>& classes, int nx, int ny, std::vector<int>& labels);

}  // namespace fdyn
