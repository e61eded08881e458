#pragma once

// Escape-time classification of parameters and of points in the dynamical
// plane, and the Green function of the basin of infinity.

#include <optional>
#include <string>

#include "fdyn/cycles.hpp"
#include "fdyn/family.hpp"

namespace fdyn {

enum class VerdictKind { EscapeLevel, AttractingCycle, Undecided };

struct Verdict {
  VerdictKind kind = VerdictKind::Undecided;
  /// First k with |z_k| > R(t); -1 unless kind == EscapeLevel.
  int level = -1;
  std::optional<CycleInfo> cycle;
  /// For dynamical-plane verdicts: index of the cycle point the orbit locks onto.
  int phase = -1;
  int iterations_used = 0;
  /// |z| at the last iterate, +inf once the orbit reached infinity.
  double final_modulus = 0.0;
};

inline constexpr double kDefaultBailoutConstant = 10.0;
/// Values of c below this can break the growth guarantee outside R(t).
inline constexpr double kMinBailoutConstant = 10.0;

/// R(t) = 3 for |t| >= 3, else max(3, c/|t|). Outside this radius
/// |f_t(z)| > 1.2 |z|, so orbits that leave the disk never return.
double bailout_radius(const Parameter& t, double bailout_constant = kDefaultBailoutConstant);

/// Lower bound for |f_t(z)| on |z| = r > sqrt 2: (|t|/4)(r^2 - 2)^2 / (r^2 + 1).
double escape_growth_floor(double t_modulus, double r);

/// Follows the critical value orbit of f_t. EscapeLevel(n) at the first n
/// with |Q_n(t)| > R(t); AttractingCycle when the orbit settles on a cycle
/// with |multiplier| < 1; otherwise Undecided (including orbits that land
/// on a repelling or neutral cycle).
Verdict classify_parameter(const Parameter& t, int max_iter = kDefaultMaxIter,
                           double bailout_constant = kDefaultBailoutConstant);

/// Same test for an arbitrary starting point. An optional known attracting
/// cycle of f_t is used to stop early once the orbit comes within
/// kCaptureRadius of one of its points.
Verdict classify_dynamical(const Parameter& t, const ExtendedComplex& z, int max_iter = kDefaultMaxIter,
                           const CycleInfo* cycle = nullptr,
                           double bailout_constant = kDefaultBailoutConstant);

inline constexpr double kCaptureRadius = 1e-6;

struct PotentialValue {
  /// lim 2^-k log|(t/4) f^k(z)|; +inf at preimages of the poles.
  double g = 0.0;
  int converged_at = 0;
};

/// Green function of the basin of infinity relative to the normalization
/// -(t/4) z^2 at infinity. Throws NotInBasin when z does not escape within max_iter.
PotentialValue green_relative(const Parameter& t, const ExtendedComplex& z,
                              int max_iter = kDefaultMaxIter);

std::string to_string(VerdictKind kind);

/// "re im kind level period mult_abs iters" with %.17g reals.
std::string to_record(Complex point, const Verdict& v);

namespace detail {

/// Hot-loop escape test: first k <= max_iter with |f^k(z)| > r, or -1.
/// `reached_infinity` reports a pole hit or overflow.
int escape_index(Complex t, Complex z, int max_iter, double r, bool* reached_infinity = nullptr);

}  // namespace detail

}  // namespace fdyn
