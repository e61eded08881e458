#pragma once

// Böttcher coordinates on the basin of infinity, the parameter functions
// E_n(t) = -(t/4) Phi_t(Q_n(t)), the Q_n-Böttcher functions Xi_n and the
// kernel convergence check Xi_n -> sqrt(-4 E_0).

#include <complex>

#include "fdyn/cycles.hpp"
#include "fdyn/family.hpp"

namespace fdyn {

struct BoettcherValue {
  /// log|Phi|; +inf at preimages of the poles.
  double modulus_log = 0.0;
  /// arg Phi in (-pi, pi].
  double argument = 0.0;
  int k_used = 0;
  /// Set when some factor of the product sat more than pi/2 away from the
  /// positive axis; the value is still a solution of the functional equation
  /// but may not be the continuous branch.
  bool branch_ambiguous = false;

  Complex value() const;
};

/// Phi_t(z) = z prod_k r_k^(1/2^(k+1)), r_k = (1 - 2/y_k^2)^2 / (1 - 1/y_k^2),
/// y_k = f_t^k(z), principal powers. Satisfies Phi(f(z)) = -(t/4) Phi(z)^2
/// and Phi(z) ~ z at infinity. Throws NotInBasin unless z escapes within max_iter.
BoettcherValue phi(const Parameter& t, const ExtendedComplex& z, int max_iter = kDefaultMaxIter);

/// E_n(t) in log-polar form. Throws WrongStratum unless classify_parameter(t)
/// reports EscapeLevel(n).
BoettcherValue e_n_value(const Parameter& t, int n, int max_iter = kDefaultMaxIter);
Complex e_n(const Parameter& t, int n, int max_iter = kDefaultMaxIter);

struct XiValue {
  Complex value;
  int k_used = 0;
  bool branch_ambiguous = false;
};

/// Xi_n(t) = t prod_k rho_k^(1/alpha^(k+1)), alpha = 2^(n+1) - 1,
/// rho_k = Q_n(s_k) / (a_n s_k^alpha), s_{k+1} = Q_n(s_k), computed in log
/// form. Requires |t| >= 3 and n >= 1. Throws NotConverged when the last
/// correction at k_max exceeds 1e-8.
XiValue xi_n_value(const Parameter& t, int n, int k_max = 60);
Complex xi_n(const Parameter& t, int n, int k_max = 60);

/// The branch s of sqrt(-4 E_0(t)) with s ~ t, continued along the ray from
/// 1e4 t/|t| inward in steps of factor 0.9.
Complex sqrt_minus_4e0(const Parameter& t);

/// |Xi_n(t) - sqrt(-4 E_0(t))|. Requires |t| >= 3 and t in the Cantor locus.
double kernel_gap(const Parameter& t, int n);

}  // namespace fdyn
