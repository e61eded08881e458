#pragma once

// The family f_t(z) = -(t/4) (z^2 - 2)^2 / (z^2 - 1) on the Riemann sphere.
//
// Free critical orbit: +-sqrt(2) -> 0 -> t -> ...; infinity is a
// superattracting fixed point and +-1 are the two simple poles.

#include <complex>
#include <vector>

#include "fdyn/error.hpp"

namespace fdyn {

using Complex = std::complex<double>;

// |z^2 - 1| below this is treated as a pole hit.
inline constexpr double kPoleThreshold = 1e-300;
// Any intermediate above this modulus is promoted to infinity.
inline constexpr double kOverflowModulus = 1e150;

/// A point of the Riemann sphere: a finite complex number or infinity.
class ExtendedComplex {
 public:
  ExtendedComplex() = default;
  ExtendedComplex(Complex z);  // NOLINT: implicit by design of the sphere type
  ExtendedComplex(double re, double im = 0.0) : ExtendedComplex(Complex{re, im}) {}

  static ExtendedComplex infinity() {
    ExtendedComplex p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinity() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Finite value; throws DomainError on infinity.
  Complex value() const;
  /// |z|, or +inf for the point at infinity.
  double modulus() const;

  ExtendedComplex operator-() const;

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.z_ == b.z_;
  }

 private:
  Complex z_{0.0, 0.0};
  bool infinite_ = false;
};

/// A parameter t of the family; t = 0 is excluded.
class Parameter {
 public:
  explicit Parameter(Complex t);
  Parameter(double re, double im) : Parameter(Complex{re, im}) {}

  Complex value() const { return t_; }
  double modulus() const { return std::abs(t_); }
  Parameter operator-() const { return Parameter(-t_); }

 private:
  Complex t_;
};

/// f_t(z). Poles and overflow map to infinity; never returns NaN.
ExtendedComplex eval_map(const Parameter& t, const ExtendedComplex& z);

/// f_t'(z) = -(t/4) * 2 z^3 (z^2 - 2) / (z^2 - 1)^2. Throws DomainError at the poles.
Complex eval_derivative(const Parameter& t, Complex z);

/// The semi-conjugate (t^2/16) (w - 2)^4 / (w - 1)^2, i.e. f_t(sqrt w)^2.
ExtendedComplex eval_semiconjugate(const Parameter& t, const ExtendedComplex& w);

/// [z0, f(z0), ..., f^k_max(z0)]; infinity is absorbing.
std::vector<ExtendedComplex> orbit(const Parameter& t, const ExtendedComplex& z0, int k_max);

namespace detail {

/// One application of f_t to a finite point. Returns false when the image is
/// infinity (pole hit or overflow); z is then left unchanged.
bool map_step(Complex t, Complex& z);

/// f_t'(z) without domain checks; the caller guarantees z is not a pole.
Complex derivative_unchecked(Complex t, Complex z);

}  // namespace detail

}  // namespace fdyn
