#include "fdyn/grid.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "fdyn/error.hpp"

namespace fdyn {

GridSpec::GridSpec(Complex c, double w, double h, int nx_, int ny_)
    : center(c), width(w), height(h), nx(nx_), ny(ny_) {
  if (nx < 1 || ny < 1) throw DomainError("GridSpec: pixel counts must be >= 1");
  if (!(width > 0.0) || !(height > 0.0)) throw DomainError("GridSpec: extents must be positive");
}

GridSpec GridSpec::from_bounds(double xmin, double xmax, double ymin, double ymax, int nx, int ny) {
  return GridSpec({0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}, xmax - xmin, ymax - ymin, nx, ny);
}

GridSpec GridSpec::centered_square(double half, int n) {
  return GridSpec({0.0, 0.0}, 2.0 * half, 2.0 * half, n, n);
}

Complex GridSpec::point(int i, int j) const {
  // Integer numerators keep mirrored pixels exactly opposite.
  const double fx = static_cast<double>(2 * i + 1 - nx) / static_cast<double>(2 * nx);
  const double fy = static_cast<double>(ny - 2 * j - 1) / static_cast<double>(2 * ny);
  return {center.real() + fx * width, center.imag() + fy * height};
}

std::optional<std::pair<int, int>> GridSpec::pixel_of(Complex z) const {
  const double u = (z.real() - center.real()) / width + 0.5;
  const double v = 0.5 - (z.imag() - center.imag()) / height;
  if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return std::nullopt;
  const int i = std::clamp(static_cast<int>(std::floor(u * nx)), 0, nx - 1);
  const int j = std::clamp(static_cast<int>(std::floor(v * ny)), 0, ny - 1);
  return std::make_pair(i, j);
}

int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void for_each_row_band(int ny, int workers, const std::function<void(int, int)>& fn) {
  if (workers <= 0) workers = default_workers();
  workers = std::max(1, std::min(workers, ny));
  if (workers == 1) {
    fn(0, ny);
    return;
  }
  // Interleaved small bands balance rows of very different cost.
  constexpr int kBand = 8;
  const int bands = (ny + kBand - 1) / kBand;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int b = w; b < bands; b += workers) fn(b * kBand, std::min(ny, (b + 1) * kBand));
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace fdyn

namespace fdyn {

namespace {

int find_root(std::vector<int>& parent, int a) {
  while (parent[a] != a) {
    parent[a] = parent[parent[a]];
    a = parent[a];
  }
  return a;
}

}  // namespace

int label_components(const std::vector<int>& classes, int nx, int ny, std::vector<int>& labels) {
  const std::size_t n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  if (classes.size() != n) throw DomainError("label_components: size mismatch");
  std::vector<int> parent(n);
  for (std::size_t k = 0; k < n; ++k) parent[k] = static_cast<int>(k);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int k = j * nx + i;
      const int c = classes[k];
      if (c <= 0) continue;
      if (i > 0 && classes[k - 1] == c) {
        const int a = find_root(parent, k), b = find_root(parent, k - 1);
        parent[std::max(a, b)] = std::min(a, b);
      }
      if (j > 0 && classes[k - nx] == c) {
        const int a = find_root(parent, k), b = find_root(parent, k - nx);
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  labels.assign(n, 0);
  std::vector<int> id(n, 0);
  int count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (classes[k] <= 0) continue;
    const int r = find_root(parent, static_cast<int>(k));
    if (id[r] == 0) id[r] = ++count;
    labels[k] = id[r];
  }
  return count;
}

}  // namespace fdyn
