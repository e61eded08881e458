#include "fdyn/escape.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "fdyn/detail/complex_ops.hpp"

namespace fdyn {

using detail::norm2;

double bailout_radius(const Parameter& t, double bailout_constant) {
  if (!(bailout_constant >= kMinBailoutConstant)) {
    throw DomainError("bailout_radius: constant must be at least 10");
  }
  const double m = t.modulus();
  // |z| > 3 is already inside the basin once |t| >= 3.
  if (m >= 3.0) return 3.0;
  return std::max(3.0, bailout_constant / m);
}

double escape_growth_floor(double t_modulus, double r) {
  const double r2 = r * r;
  return 0.25 * t_modulus * (r2 - 2.0) * (r2 - 2.0) / (r2 + 1.0);
}

namespace detail {

int escape_index(Complex t, Complex z, int max_iter, double r, bool* reached_infinity) {
  const double r2 = r * r;
  if (reached_infinity) *reached_infinity = false;
  for (int k = 0;; ++k) {
    if (norm2(z) > r2) return k;
    if (k == max_iter) return -1;
    if (!map_step(t, z)) {
      if (reached_infinity) *reached_infinity = true;
      return k + 1;
    }
  }
}

}  // namespace detail

Verdict classify_parameter(const Parameter& t, int max_iter, double bailout_constant) {
  if (max_iter < 0) throw DomainError("classify_parameter: max_iter must be non-negative");
  OrbitScan scan = scan_critical_orbit(t, max_iter, bailout_constant);
  Verdict v;
  v.iterations_used = scan.iterations;
  v.final_modulus = scan.final_modulus;
  if (scan.escape_level >= 0) {
    v.kind = VerdictKind::EscapeLevel;
    v.level = scan.escape_level;
  } else if (scan.cycle && std::abs(scan.cycle->multiplier) < 1.0) {
    v.kind = VerdictKind::AttractingCycle;
    v.cycle = std::move(scan.cycle);
  }
  return v;
}

Verdict classify_dynamical(const Parameter& t, const ExtendedComplex& z0, int max_iter,
                           const CycleInfo* cycle, double bailout_constant) {
  if (max_iter < 0) throw DomainError("classify_dynamical: max_iter must be non-negative");
  Verdict v;
  if (z0.is_infinity()) {
    v.kind = VerdictKind::EscapeLevel;
    v.level = 0;
    v.final_modulus = std::numeric_limits<double>::infinity();
    return v;
  }
  const Complex tv = t.value();
  const double r2 = std::pow(bailout_radius(t, bailout_constant), 2);
  const double cap2 = kCaptureRadius * kCaptureRadius;
  Complex z = z0.value();
  for (int k = 0;; ++k) {
    const double n2 = norm2(z);
    v.iterations_used = k;
    v.final_modulus = std::sqrt(n2);
    if (n2 > r2) {
      v.kind = VerdictKind::EscapeLevel;
      v.level = k;
      return v;
    }
    if (cycle) {
      const int p = static_cast<int>(cycle->points.size());
      for (int i = 0; i < p; ++i) {
        if (norm2(z - cycle->points[i]) < cap2) {
          v.kind = VerdictKind::AttractingCycle;
          v.cycle = *cycle;
          // z_k sits at points[i], so z_0 follows points[(phase + k) mod p].
          v.phase = ((i - k) % p + p) % p;
          return v;
        }
      }
    }
    if (k == max_iter) return v;
    if (!detail::map_step(tv, z)) {
      v.kind = VerdictKind::EscapeLevel;
      v.level = k + 1;
      v.iterations_used = k + 1;
      v.final_modulus = std::numeric_limits<double>::infinity();
      return v;
    }
  }
}

namespace {

// log|(y^2 - 2)^2 / (y^2 - 1)| without forming large powers.
double log_abs_quotient(Complex y) {
  const double ly = std::log(std::abs(y));
  if (ly > 1.0) {
    const Complex v = std::exp(-2.0 * std::log(y));
    const Complex a = 1.0 - 2.0 * v;
    return 2.0 * ly + std::log(std::norm(a)) - std::log(std::abs(1.0 - v));
  }
  const Complex w = y * y;
  return 2.0 * std::log(std::abs(w - 2.0)) - std::log(std::abs(w - 1.0));
}

bool hits_pole(Complex y) { return std::abs(y * y - 1.0) < kPoleThreshold; }

}  // namespace

PotentialValue green_relative(const Parameter& t, const ExtendedComplex& z0, int max_iter) {
  if (max_iter < 0) throw DomainError("green_relative: max_iter must be non-negative");
  const double inf = std::numeric_limits<double>::infinity();
  if (z0.is_infinity()) return {inf, 0};
  const Complex tv = t.value();
  const double log_t4 = std::log(t.modulus() / 4.0);
  const double r2 = std::pow(bailout_radius(t), 2);
  constexpr double kLarge = 1e100;
  Complex y = z0.value();
  double scale = 1.0;  // 2^-k
  bool escaped = false;
  // Extra steps allowed after escape to push |y| past kLarge; growth is at
  // least quadratic there, so this is never approached.
  const int cap = max_iter + 4000;
  for (int k = 0; k <= cap; ++k) {
    const double n2 = norm2(y);
    if (n2 > r2) escaped = true;
    if (!escaped && k >= max_iter) break;
    if (std::sqrt(n2) > kLarge) {
      // One more doubling in log form, then read off the limit.
      const double u = log_t4 + (log_t4 + log_abs_quotient(y));
      return {0.5 * scale * u, k + 1};
    }
    Complex next = y;
    if (!detail::map_step(tv, next)) {
      if (hits_pole(y)) return {inf, k + 1};
      // Overflowed: the next modulus is finite in log form.
      const double u = log_t4 + (log_t4 + log_abs_quotient(y));
      return {0.5 * scale * u, k + 1};
    }
    y = next;
    scale *= 0.5;
  }
  throw NotInBasin("green_relative: orbit did not escape within the iteration budget");
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::EscapeLevel:
      return "escape";
    case VerdictKind::AttractingCycle:
      return "cycle";
    case VerdictKind::Undecided:
      break;
  }
  return "undecided";
}

std::string to_record(Complex point, const Verdict& v) {
  const int period = v.cycle ? v.cycle->period : 0;
  const double mult = v.cycle ? std::abs(v.cycle->multiplier) : 0.0;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g %.17g %s %d %d %.17g %d", point.real(), point.imag(),
                to_string(v.kind).c_str(), v.level, period, mult, v.iterations_used);
  return buf;
}

}  // namespace fdyn
