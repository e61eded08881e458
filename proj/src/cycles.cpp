#include "fdyn/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fdyn/detail/complex_ops.hpp"
#include "fdyn/escape.hpp"
#include "fdyn/exactmaps.hpp"

namespace fdyn {

using detail::norm2;

namespace {

// f^p(z) - z and (f^p)'(z) - 1; false when the orbit meets a pole.
bool periodic_residual(Complex t, Complex z, int p, Complex& residual, Complex& slope) {
  Complex w = z;
  Complex d{1.0, 0.0};
  for (int i = 0; i < p; ++i) {
    const Complex prev = w;
    if (!detail::map_step(t, w)) return false;
    d = detail::mul(d, detail::derivative_unchecked(t, prev));
  }
  residual = w - z;
  slope = d - 1.0;
  return true;
}

std::vector<Complex> cycle_points(Complex t, Complex z, int p) {
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(p));
  Complex w = z;
  for (int i = 0; i < p; ++i) {
    pts.push_back(w);
    if (!detail::map_step(t, w)) break;
  }
  return pts;
}

Complex multiplier_of(Complex t, const std::vector<Complex>& pts) {
  Complex m{1.0, 0.0};
  for (const Complex& w : pts) m = detail::mul(m, detail::derivative_unchecked(t, w));
  return m;
}

CycleInfo raw_cycle(Complex t, Complex z, int p) {
  CycleInfo c;
  c.period = p;
  c.representative = z;
  c.points = cycle_points(t, z, p);
  c.multiplier = multiplier_of(t, c.points);
  c.refined = false;
  return c;
}

}  // namespace

Complex cycle_multiplier(const Parameter& t, std::span<const Complex> points) {
  Complex m{1.0, 0.0};
  for (const Complex& w : points) m = detail::mul(m, eval_derivative(t, w));
  return m;
}

CycleInfo refine_cycle(const Parameter& t, Complex z, int period) {
  if (period < 1) throw DomainError("refine_cycle: period must be >= 1");
  if (!detail::finite(z)) throw DomainError("refine_cycle: z must be finite");
  const Complex tv = t.value();
  Complex res, slope;
  if (!periodic_residual(tv, z, period, res, slope)) {
    throw RefinementDiverged("refine_cycle: orbit meets a pole", raw_cycle(tv, z, period));
  }
  Complex zc = z;
  double r = std::abs(res);
  double damping = 1.0;
  for (int step = 0; step < kNewtonSteps; ++step) {
    if (r <= 1e-15 * (1.0 + std::abs(zc))) break;
    if (slope == Complex{0.0, 0.0}) break;
    const Complex dz = -detail::div(res, slope);
    const Complex trial = zc + damping * dz;
    Complex tres, tslope;
    if (!periodic_residual(tv, trial, period, tres, tslope) || !(std::abs(tres) <= r)) {
      damping *= 0.5;
      continue;
    }
    const bool tiny = std::abs(trial - zc) <= 1e-16 * (1.0 + std::abs(zc));
    zc = trial;
    res = tres;
    slope = tslope;
    r = std::abs(tres);
    damping = std::min(1.0, 2.0 * damping);
    if (tiny) break;
  }
  if (!(r <= 1e-10 * (1.0 + std::abs(zc)))) {
    throw RefinementDiverged("refine_cycle: Newton residual stayed above tolerance",
                             raw_cycle(tv, z, period));
  }
  for (int d = 1; d < period; ++d) {
    if (period % d != 0) continue;
    Complex dres, dslope;
    if (periodic_residual(tv, zc, d, dres, dslope) &&
        std::abs(dres) < kRepeatTolerance * (1.0 + std::abs(zc))) {
      return refine_cycle(t, zc, d);
    }
  }
  CycleInfo c;
  c.period = period;
  c.representative = zc;
  c.points = cycle_points(tv, zc, period);
  c.multiplier = multiplier_of(tv, c.points);
  c.refined = true;
  return c;
}

OrbitScan scan_critical_orbit(const Parameter& t, int max_iter, double bailout_constant) {
  if (max_iter < 0) throw DomainError("scan_critical_orbit: max_iter must be non-negative");
  const Complex tv = t.value();
  const double r = bailout_radius(t, bailout_constant);
  const double r2 = r * r;
  const double tol2 = kRepeatTolerance * kRepeatTolerance;
  OrbitScan out;
  Complex z = tv;
  // Reference points at k = 0, 1, 2, 4, ..., 64 and then every 64 steps:
  // early references catch orbits landing on a cycle after a short preperiod.
  Complex ref = z;
  int ref_k = 0;
  int next_ref = 1;
  for (int k = 0;; ++k) {
    const double n2 = norm2(z);
    if (n2 > r2) {
      out.escape_level = k;
      out.iterations = k;
      out.final_modulus = std::sqrt(n2);
      return out;
    }
    if (k > ref_k && k - ref_k <= kMaxDetectablePeriod && norm2(z - ref) < tol2) {
      const int p = k - ref_k;
      try {
        out.cycle = refine_cycle(t, z, p);
      } catch (const RefinementDiverged& e) {
        out.cycle = e.candidate();
      }
      out.iterations = k;
      out.final_modulus = std::sqrt(n2);
      return out;
    }
    if (k == next_ref) {
      ref = z;
      ref_k = k;
      next_ref = k < kMaxDetectablePeriod ? 2 * k : k + kMaxDetectablePeriod;
    }
    if (k == max_iter) {
      out.iterations = k;
      out.final_modulus = std::sqrt(n2);
      return out;
    }
    if (!detail::map_step(tv, z)) {
      out.escape_level = k + 1;
      out.iterations = k + 1;
      out.final_modulus = std::numeric_limits<double>::infinity();
      return out;
    }
  }
}

std::optional<CycleInfo> find_attracting_cycle(const Parameter& t, int max_iter) {
  OrbitScan scan = scan_critical_orbit(t, max_iter);
  if (scan.escape_level < 0 && scan.cycle && std::abs(scan.cycle->multiplier) < 1.0) {
    return scan.cycle;
  }
  return std::nullopt;
}

namespace {

void horner(const std::vector<Complex>& a, Complex z, Complex& p, Complex& dp) {
  p = a.back();
  dp = 0.0;
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
  }
}

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const double> coeffs, int max_iter, double tol) {
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == 0.0) --n;
  if (n == 0) throw DomainError("polynomial_roots: zero polynomial");
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(coeffs[k])) throw DomainError("polynomial_roots: non-finite coefficient");
  }
  const int deg = static_cast<int>(n) - 1;
  if (deg == 0) return {};
  std::vector<Complex> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = coeffs[k] / coeffs[n - 1];

  // Cauchy bound on the root moduli.
  double radius = 0.0;
  for (int k = 0; k < deg; ++k) radius = std::max(radius, std::abs(a[k]));
  radius += 1.0;
  std::vector<Complex> z(static_cast<std::size_t>(deg));
  for (int j = 0; j < deg; ++j) {
    z[j] = std::polar(radius, 2.0 * std::numbers::pi * j / deg + 0.4);
  }

  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    converged = true;
    for (int j = 0; j < deg; ++j) {
      Complex p, dp;
      horner(a, z[j], p, dp);
      if (p == Complex{0.0, 0.0}) continue;
      const Complex ratio = p / dp;
      Complex sum{0.0, 0.0};
      for (int i = 0; i < deg; ++i) {
        if (i != j) sum += 1.0 / (z[j] - z[i]);
      }
      const Complex w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[j] -= w;
      if (std::abs(w) > tol * (1.0 + std::abs(z[j]))) converged = false;
    }
  }
  if (!converged) throw RootFindingStalled("polynomial_roots: Aberth iteration did not settle");

  for (Complex& r : z) {
    for (int s = 0; s < 3; ++s) {
      Complex p, dp;
      horner(a, r, p, dp);
      if (dp == Complex{0.0, 0.0}) break;
      const Complex next = r - p / dp;
      Complex pn, dpn;
      horner(a, next, pn, dpn);
      if (!(std::abs(pn) < std::abs(p))) break;
      r = next;
    }
  }
  std::sort(z.begin(), z.end(), lex_less);
  return z;
}

std::vector<Complex> find_centers(int n, std::vector<Complex>* rejected) {
  if (n < 1) throw DomainError("find_centers: period must be >= 1");
  // The only period-1 critical orbit would need t = 0.
  if (n == 1) return {};
  const std::vector<double> c = center_polynomial(n).to_double();
  const std::vector<Complex> roots = polynomial_roots(c);
  std::vector<Complex> out;
  for (const Complex& r : roots) {
    bool ok = std::abs(r) > kRepeatTolerance;
    if (ok) {
      // Orbit of the critical point 0 must return at step n and not before.
      Complex w{0.0, 0.0};
      for (int k = 1; k <= n && ok; ++k) {
        if (!detail::map_step(r, w)) {
          ok = false;
          break;
        }
        const bool at_zero = std::abs(w) < kRepeatTolerance;
        if (k < n && n % k == 0 && at_zero) ok = false;
        if (k == n && !at_zero) ok = false;
      }
    }
    if (ok) {
      out.push_back(r);
    } else if (rejected) {
      rejected->push_back(r);
    }
  }
  return out;
}

std::vector<MisiurewiczPoint> find_misiurewicz(int j, int k) {
  if (j < 0 || k <= j) throw DomainError("find_misiurewicz: need 0 <= j < k");
  const std::vector<double> c = misiurewicz_polynomial(j, k).to_double();
  const std::vector<Complex> roots = polynomial_roots(c);
  std::vector<MisiurewiczPoint> out;
  for (const Complex& r : roots) {
    if (std::abs(r) <= kRepeatTolerance) continue;
    std::vector<Complex> orbit{r};
    bool finite = true;
    for (int s = 0; s < k && finite; ++s) {
      Complex w = orbit.back();
      finite = detail::map_step(r, w);
      if (finite) orbit.push_back(w);
    }
    if (!finite) continue;
    const double scale = 1.0 + std::abs(orbit[j]);
    if (std::abs(orbit[j] - orbit[k]) > 1e-6 * scale) continue;
    // Preperiod exactly j.
    if (j > 0 && std::abs(orbit[j - 1] - orbit[k - 1]) <= 1e-6 * scale) continue;
    int p = k - j;
    for (int d = 1; d < k - j; ++d) {
      if ((k - j) % d == 0 && std::abs(orbit[j + d] - orbit[j]) <= 1e-6 * scale) {
        p = d;
        break;
      }
    }
    const std::vector<Complex> pts(orbit.begin() + j, orbit.begin() + j + p);
    const Complex m = multiplier_of(r, pts);
    if (!(std::abs(m) > 1.0)) continue;
    if (find_attracting_cycle(Parameter(r))) continue;
    out.push_back({r, orbit[j], p, m});
  }
  return out;
}

}  // namespace fdyn
