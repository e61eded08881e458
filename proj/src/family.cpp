#include "fdyn/family.hpp"

#include <cmath>
#include <string>

#include "fdyn/detail/complex_ops.hpp"

namespace fdyn {

using detail::div;
using detail::finite;
using detail::max_abs_component;
using detail::mul;
using detail::sq;

ExtendedComplex::ExtendedComplex(Complex z) : z_(z) {
  if (std::isnan(z.real()) || std::isnan(z.imag())) {
    throw DomainError("ExtendedComplex: NaN component");
  }
  if (std::isinf(z.real()) || std::isinf(z.imag())) {
    z_ = {0.0, 0.0};
    infinite_ = true;
  }
}

Complex ExtendedComplex::value() const {
  if (infinite_) throw DomainError("ExtendedComplex: value() of infinity");
  return z_;
}

double ExtendedComplex::modulus() const {
  return infinite_ ? INFINITY : std::abs(z_);
}

ExtendedComplex ExtendedComplex::operator-() const {
  if (infinite_) return *this;
  return ExtendedComplex(-z_);
}

Parameter::Parameter(Complex t) : t_(t) {
  if (!finite(t)) throw DomainError("Parameter: t must be finite");
  if (t == Complex{0.0, 0.0}) throw DomainError("Parameter: t = 0 is not in the family");
}

namespace {

bool is_pole(Complex d) {
  return max_abs_component(d) < kPoleThreshold && std::abs(d) < kPoleThreshold;
}

bool overflows(Complex z) {
  return !finite(z) || max_abs_component(z) > kOverflowModulus ||
         std::abs(z) > kOverflowModulus;
}

// (w - 2)^2 / (w - 1), with w = z^2 already formed. For large |w| the
// factored form keeps every intermediate at the size of w.
inline Complex g_of_square(Complex w) {
  if (detail::norm2(w) > 16.0) {
    const Complex inv = div(Complex{1.0, 0.0}, w);
    const Complex a = Complex{1.0, 0.0} - 2.0 * inv;
    return div(mul(w, sq(a)), Complex{1.0, 0.0} - inv);
  }
  return div(sq(w - 2.0), w - 1.0);
}

}  // namespace

namespace detail {

bool map_step(Complex t, Complex& z) {
  if (max_abs_component(z) > kOverflowModulus) return false;
  const Complex w = sq(z);
  if (overflows(w)) return false;
  const Complex d = w - 1.0;
  if (is_pole(d)) return false;
  const Complex q = g_of_square(w);
  const Complex r = mul(-0.25 * t, q);
  if (overflows(r)) return false;
  z = r;
  return true;
}

Complex derivative_unchecked(Complex t, Complex z) {
  const Complex w = sq(z);
  const Complex z3 = mul(w, z);
  const Complex num = mul(2.0 * z3, w - 2.0);
  return mul(-0.25 * t, div(num, sq(w - 1.0)));
}

}  // namespace detail

ExtendedComplex eval_map(const Parameter& t, const ExtendedComplex& z) {
  if (z.is_infinity()) return z;
  Complex v = z.value();
  if (!detail::map_step(t.value(), v)) return ExtendedComplex::infinity();
  return ExtendedComplex(v);
}

Complex eval_derivative(const Parameter& t, Complex z) {
  if (!finite(z)) throw DomainError("eval_derivative: z must be finite");
  if (is_pole(sq(z) - 1.0)) throw DomainError("eval_derivative: z is a pole of f_t");
  return detail::derivative_unchecked(t.value(), z);
}

ExtendedComplex eval_semiconjugate(const Parameter& t, const ExtendedComplex& w) {
  if (w.is_infinity()) return w;
  const Complex v = w.value();
  const Complex d = v - 1.0;
  if (is_pole(d)) return ExtendedComplex::infinity();
  const Complex t2 = sq(t.value());
  Complex r;
  if (detail::norm2(v) > 16.0) {
    // (t^2/16) w^2 (1 - 2/w)^4 / (1 - 1/w)^2
    const Complex inv = div(Complex{1.0, 0.0}, v);
    const Complex a = sq(Complex{1.0, 0.0} - 2.0 * inv);
    const Complex big = mul(sq(v), sq(a));
    if (overflows(big)) return ExtendedComplex::infinity();
    r = mul(t2 / 16.0, div(big, sq(Complex{1.0, 0.0} - inv)));
  } else {
    r = mul(t2 / 16.0, div(sq(sq(v - 2.0)), sq(d)));
  }
  if (overflows(r)) return ExtendedComplex::infinity();
  return ExtendedComplex(r);
}

std::vector<ExtendedComplex> orbit(const Parameter& t, const ExtendedComplex& z0, int k_max) {
  if (k_max < 0) throw DomainError("orbit: k_max must be non-negative");
  std::vector<ExtendedComplex> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  out.push_back(z0);
  for (int k = 0; k < k_max; ++k) out.push_back(eval_map(t, out.back()));
  return out;
}

}  // namespace fdyn
