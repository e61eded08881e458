#pragma once

// Hand-written complex arithmetic for the inner loops.
//
// Every routine is sign-symmetric: negating an argument negates the result
// bit for bit. The parameter-plane and dynamical-plane symmetries are
// asserted exactly in the tests, and std::complex division does not promise
// that.

#include <cmath>
#include <complex>

namespace fdyn::detail {

using Complex = std::complex<double>;

inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

inline Complex sq(Complex a) {
  return {a.real() * a.real() - a.imag() * a.imag(),
          2.0 * a.real() * a.imag()};
}

// Smith's algorithm; no overflow of |d|^2 for tiny or huge denominators.
inline Complex div(Complex a, Complex d) {
  const double dr = d.real();
  const double di = d.imag();
  if (std::fabs(dr) >= std::fabs(di)) {
    const double r = di / dr;
    const double den = dr + di * r;
    return {(a.real() + a.imag() * r) / den, (a.imag() - a.real() * r) / den};
  }
  const double r = dr / di;
  const double den = dr * r + di;
  return {(a.real() * r + a.imag()) / den, (a.imag() * r - a.real()) / den};
}

inline double norm2(Complex a) {
  return a.real() * a.real() + a.imag() * a.imag();
}

inline double max_abs_component(Complex a) {
  return std::fmax(std::fabs(a.real()), std::fabs(a.imag()));
}

inline bool finite(Complex a) {
  return std::isfinite(a.real()) && std::isfinite(a.imag());
}

}  // namespace fdyn::detail
