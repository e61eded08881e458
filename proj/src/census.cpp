#include <algorithm>
#include <climits>
#include <cmath>

#include "fdyn/cycles.hpp"
#include "fdyn/escape.hpp"

namespace fdyn {

long long hyperbolic_bound(int period) {
  if (period < 1 || period > 31) throw DomainError("hyperbolic_bound: period must be in 1..31");
  if (period == 1) return 1;
  return 2 * ((1LL << (2 * (period - 1))) - 1) / 3;
}

long long escape_bound(int level) {
  if (level < 0 || level > 30) throw DomainError("escape_bound: level must be in 0..30");
  if (level == 0) return 1;
  return 2 * ((1LL << (2 * level)) - 1) / 3;
}

std::string to_string(CensusKind kind) {
  return kind == CensusKind::Hyperbolic ? "hyperbolic" : "escape";
}

const CensusComponent* CensusResult::component_at(Complex t) const {
  const auto px = grid.pixel_of(t);
  if (!px) return nullptr;
  const int id = labels[grid.index(px->first, px->second)];
  return id < 0 ? nullptr : &components[static_cast<std::size_t>(id)];
}

const CensusRow* CensusResult::row(CensusKind kind, int index) const {
  for (const auto& r : rows) {
    if (r.kind == kind && r.index == index) return &r;
  }
  return nullptr;
}

CensusResult census(const GridSpec& grid, int period_max, int level_max, int max_iter, int workers) {
  if (period_max < 1 || level_max < 0) throw DomainError("census: bad period_max or level_max");
  if (period_max > 31 || level_max > 30) throw DomainError("census: bounds overflow past period 31 or level 30");
  const std::size_t n = grid.size();
  // Per pixel: escape level (>= 0), or -1 - period for an attracting cycle, or INT_MIN.
  std::vector<int> code(n, INT_MIN);
  for_each_row_band(grid.ny, workers, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const Complex t = grid.point(i, j);
        if (t == Complex{0.0, 0.0}) continue;
        const OrbitScan s = scan_critical_orbit(Parameter(t), max_iter);
        int c = INT_MIN;
        if (s.escape_level >= 0) {
          c = s.escape_level;
        } else if (s.cycle && std::abs(s.cycle->multiplier) < 1.0) {
          c = -1 - s.cycle->period;
        }
        code[grid.index(i, j)] = c;
      }
    }
  });

  // Classes: 1..period_max for hyperbolic periods, period_max + 1 for escape.
  const int escape_class = period_max + 1;
  std::vector<int> classes(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const int c = code[k];
    if (c >= 0) {
      classes[k] = escape_class;
    } else if (c != INT_MIN && -1 - c <= period_max) {
      classes[k] = -1 - c;
    }
  }
  std::vector<int> raw;
  const int count = label_components(classes, grid.nx, grid.ny, raw);

  CensusResult out;
  out.grid = grid;
  out.components.assign(static_cast<std::size_t>(count), CensusComponent{CensusKind::Hyperbolic, INT_MAX, 0, {}});
  out.labels.assign(n, -1);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t k = grid.index(i, j);
      if (raw[k] == 0) continue;
      const int id = raw[k] - 1;
      out.labels[k] = id;
      CensusComponent& comp = out.components[static_cast<std::size_t>(id)];
      const bool esc = classes[k] == escape_class;
      const int index = esc ? code[k] : classes[k];
      if (comp.pixels == 0 || index < comp.index) {
        comp.index = index;
        comp.representative = grid.point(i, j);
      }
      comp.kind = esc ? CensusKind::Escape : CensusKind::Hyperbolic;
      ++comp.pixels;
    }
  }
  for (int p = 1; p <= period_max; ++p) {
    out.rows.push_back({CensusKind::Hyperbolic, p, 0, hyperbolic_bound(p)});
  }
  for (int l = 0; l <= level_max; ++l) {
    out.rows.push_back({CensusKind::Escape, l, 0, escape_bound(l)});
  }
  for (const auto& comp : out.components) {
    for (auto& r : out.rows) {
      if (r.kind == comp.kind && r.index == comp.index) ++r.components_found;
    }
  }
  return out;
}

}  // namespace fdyn
