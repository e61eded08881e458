#include "fdyn/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fdyn/detail/complex_ops.hpp"
#include "fdyn/escape.hpp"

namespace fdyn {

namespace {

std::pair<int, int> require_pixel(const GridSpec& spec, Complex z) {
  const auto px = spec.pixel_of(z);
  if (!px) throw DomainError("point lies outside the grid");
  return *px;
}

void require_encloses_disc(const GridSpec& spec) {
  const Complex c = spec.center;
  const bool ok = c.real() - 0.5 * spec.width <= -3.0 && c.real() + 0.5 * spec.width >= 3.0 &&
                  c.imag() - 0.5 * spec.height <= -3.0 && c.imag() + 0.5 * spec.height >= 3.0;
  if (!ok) throw DomainError("grid must contain the disc |z| <= 3");
}

// First k with |z_k| > r (or -1), plus the distance estimate
// g / |grad g| = |y| log|(t/4) y| / |y'| to the Julia set, read off once |y| > 1e8.
int escape_with_distance(Complex t, Complex z, int max_iter, double r, double& de) {
  const double r2 = r * r;
  const double log_t4 = std::log(std::abs(t) / 4.0);
  Complex dz{1.0, 0.0};
  int level = -1;
  de = 0.0;
  for (int k = 0; k < max_iter + 400; ++k) {
    const double n2 = detail::norm2(z);
    if (level < 0 && n2 > r2) level = k;
    if (level < 0 && k >= max_iter) return -1;
    if (n2 > 1e16) break;
    const Complex prev = z;
    if (!detail::map_step(t, z)) {
      // Straight onto a pole or past the overflow guard: deep inside the basin.
      if (level < 0) level = k + 1;
      de = std::numeric_limits<double>::infinity();
      return level;
    }
    dz = detail::mul(dz, detail::derivative_unchecked(t, prev));
    if (!detail::finite(dz)) return level;
  }
  const double m = std::abs(z);
  const double d = std::abs(dz);
  if (level >= 0 && d > 0.0) de = m * (std::log(m) + log_t4) / d;
  return level;
}

}  // namespace

int LabelGrid::component_of(Complex z) const {
  const auto [i, j] = require_pixel(spec, z);
  return at(i, j);
}

int LabelGrid::level_of(Complex z) const {
  const auto [i, j] = require_pixel(spec, z);
  return levels[spec.index(i, j)];
}

LabelGrid label_escape_grid(const Parameter& t, const GridSpec& spec, int max_iter, int workers) {
  require_encloses_disc(spec);
  if (max_iter < 1) throw DomainError("label_escape_grid: max_iter must be >= 1");
  LabelGrid g;
  g.spec = spec;
  g.levels.assign(spec.size(), -1);
  const Complex tv = t.value();
  const double r = bailout_radius(t);
  const double band = std::max(spec.pixel_width(), spec.pixel_height());
  std::vector<int> classes(spec.size(), 0);
  for_each_row_band(spec.ny, workers, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < spec.nx; ++i) {
        double de = 0.0;
        const int level = escape_with_distance(tv, spec.point(i, j), max_iter, r, de);
        g.levels[spec.index(i, j)] = level;
        classes[spec.index(i, j)] = (level >= 0 && de >= band) ? 1 : 0;
      }
    }
  });
  g.component_count = label_components(classes, spec.nx, spec.ny, g.labels);
  const int a = g.at(0, 0), b = g.at(spec.nx - 1, 0), c = g.at(0, spec.ny - 1),
            d = g.at(spec.nx - 1, spec.ny - 1);
  g.component_of_farfield = (a == b && a == c && a == d) ? a : 0;
  return g;
}

ProbeReport sierpinski_probe(const Parameter& t, const GridSpec& spec, int max_iter, int workers) {
  require_encloses_disc(spec);
  ProbeReport rep;
  rep.resolution = spec.nx;
  const Verdict v = classify_parameter(t);
  if (v.kind != VerdictKind::EscapeLevel) return rep;
  if (v.level == 0) {
    rep.verdict = ProbeVerdict::CantorLocus;
    return rep;
  }
  const LabelGrid g = label_escape_grid(t, spec, max_iter, workers);
  const int far = g.component_of_farfield;
  if (far == 0) return rep;

  std::vector<int> mask(spec.size());
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = g.labels[k] == far ? 0 : 1;
  std::vector<int> comp;
  label_components(mask, spec.nx, spec.ny, comp);

  const auto [pi, pj] = require_pixel(spec, {1.0, 0.0});
  const auto [zi, zj] = require_pixel(spec, {0.0, 0.0});
  const auto [mi, mj] = require_pixel(spec, {-1.0, 0.0});
  const int d = comp[spec.index(pi, pj)];
  if (d == 0) return rep;
  rep.pole_component_contains_zero = comp[spec.index(zi, zj)] == d;
  rep.pole_component_contains_minus_pole = comp[spec.index(mi, mj)] == d;

  const long long size = std::count(comp.begin(), comp.end(), d);
  bool zero_near_farfield = false;
  for (int j = std::max(0, zj - 2); j <= std::min(spec.ny - 1, zj + 2); ++j) {
    for (int i = std::max(0, zi - 2); i <= std::min(spec.nx - 1, zi + 2); ++i) {
      if (g.labels[spec.index(i, j)] == far) zero_near_farfield = true;
    }
  }
  if (size < 4 || zero_near_farfield) return rep;
  if (rep.pole_component_contains_zero && rep.pole_component_contains_minus_pole) {
    rep.verdict = ProbeVerdict::JordanEvidence;
  } else if (!rep.pole_component_contains_zero && !rep.pole_component_contains_minus_pole) {
    rep.verdict = ProbeVerdict::NonJordanEvidence;
  }
  return rep;
}

std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::CantorLocus:
      return "CantorLocus";
    case ProbeVerdict::JordanEvidence:
      return "JordanEvidence";
    case ProbeVerdict::NonJordanEvidence:
      return "NonJordanEvidence";
    case ProbeVerdict::Inconclusive:
      break;
  }
  return "Inconclusive";
}

std::string to_record(const ProbeReport& r) {
  return to_string(r.verdict) + " " + std::to_string(r.resolution) + " " +
         (r.pole_component_contains_zero ? "true" : "false") + " " +
         (r.pole_component_contains_minus_pole ? "true" : "false");
}

}  // namespace fdyn
