#include "fdyn/boettcher.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fdyn/detail/complex_ops.hpp"
#include "fdyn/escape.hpp"
#include "fdyn/exactmaps.hpp"

namespace fdyn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

Complex wrap_imag(Complex l) { return {l.real(), wrap_angle(l.imag())}; }

// (1 - 2v)^2 / (1 - v) with v = 1/y^2, arranged for either size of y.
Complex boettcher_factor(Complex y) {
  const Complex w = detail::sq(y);
  if (detail::norm2(w) > 4.0) {
    const Complex v = detail::div(Complex{1.0, 0.0}, w);
    return detail::div(detail::sq(1.0 - 2.0 * v), 1.0 - v);
  }
  return detail::div(detail::sq(w - 2.0), detail::mul(w, w - 1.0));
}

double log_abs(const mpq_class& q) {
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(std::abs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::numbers::ln2;
}

}  // namespace

Complex BoettcherValue::value() const {
  if (std::isinf(modulus_log) && modulus_log > 0) return {kInf, 0.0};
  return std::polar(std::exp(modulus_log), argument);
}

BoettcherValue phi(const Parameter& t, const ExtendedComplex& z, int max_iter) {
  BoettcherValue out;
  if (z.is_infinity()) {
    out.modulus_log = kInf;
    return out;
  }
  const Verdict v = classify_dynamical(t, z, max_iter);
  if (v.kind != VerdictKind::EscapeLevel) {
    throw NotInBasin("phi: point does not escape within the iteration budget");
  }
  const Complex tv = t.value();
  Complex y = z.value();
  if (y == Complex{0.0, 0.0}) {
    // z * sqrt(r_0) has modulus 2 at z = 0 but no preferred direction.
    const BoettcherValue next = phi(t, ExtendedComplex(tv), max_iter);
    out.modulus_log = 0.5 * (std::log(4.0 / t.modulus()) + next.modulus_log);
    out.argument = wrap_angle(0.5 * (std::arg(-4.0 / tv) + next.argument));
    out.k_used = next.k_used + 1;
    out.branch_ambiguous = true;
    return out;
  }
  Complex acc = std::log(y);
  double weight = 0.5;
  const int cap = max_iter + 200;
  int k = 0;
  for (; k < cap; ++k) {
    if (std::abs(y) > 1e20) break;
    if (std::abs(detail::sq(y) - 1.0) < kPoleThreshold) {
      out.modulus_log = kInf;
      out.k_used = k;
      return out;
    }
    const Complex lr = std::log(boettcher_factor(y));
    if (std::abs(lr.imag()) > 0.5 * kPi) out.branch_ambiguous = true;
    acc += weight * lr;
    if (!detail::map_step(tv, y)) {
      // Poles were excluded above, so this is overflow: later factors are 1.
      ++k;
      break;
    }
    weight *= 0.5;
  }
  out.modulus_log = acc.real();
  out.argument = wrap_angle(acc.imag());
  out.k_used = k;
  return out;
}

BoettcherValue e_n_value(const Parameter& t, int n, int max_iter) {
  if (n < 0) throw DomainError("e_n: n must be non-negative");
  const Verdict v = classify_parameter(t, max_iter);
  if (v.kind != VerdictKind::EscapeLevel || v.level != n) {
    throw WrongStratum("e_n: parameter is not at escape level " + std::to_string(n));
  }
  const Complex tv = t.value();
  Complex q = tv;
  for (int k = 0; k < n; ++k) {
    if (!detail::map_step(tv, q)) {
      BoettcherValue inf;
      inf.modulus_log = kInf;
      return inf;
    }
  }
  BoettcherValue p = phi(t, ExtendedComplex(q), max_iter);
  p.modulus_log += std::log(t.modulus() / 4.0);
  p.argument = wrap_angle(p.argument + std::arg(-tv));
  return p;
}

Complex e_n(const Parameter& t, int n, int max_iter) { return e_n_value(t, n, max_iter).value(); }

namespace {

// Log rho = Log(Q_n(s) / (a_n s^alpha)) for s = exp(ls), via
// w_{j+1} = -(s/4) w_j^2 c(w_j) and u_{j+1} = u_j^2 c(w_j), rho = u_n.
// Returns false at a pole of Q_n.
bool log_rho(Complex ls, int n, Complex& out) {
  const Complex log_minus_quarter{-std::log(4.0), kPi};
  Complex lw = ls;
  Complex u{1.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const Complex e = -2.0 * lw;
    const Complex v = e.real() < -700.0 ? Complex{0.0, 0.0} : std::exp(e);
    const Complex one_minus_v = 1.0 - v;
    if (std::abs(one_minus_v) < 1e-300) return false;
    const Complex c = detail::div(detail::sq(1.0 - 2.0 * v), one_minus_v);
    if (c == Complex{0.0, 0.0}) return false;
    u = detail::mul(detail::sq(u), c);
    lw = wrap_imag(log_minus_quarter + ls + 2.0 * lw + std::log(c));
  }
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag()) || u == Complex{0.0, 0.0}) return false;
  out = std::log(u);
  return true;
}

}  // namespace

XiValue xi_n_value(const Parameter& t, int n, int k_max) {
  if (n < 1) throw DomainError("xi_n: n must be >= 1");
  if (n > 20) throw DomainError("xi_n: n too large");
  if (t.modulus() < 3.0) throw DomainError("xi_n: requires |t| >= 3");
  if (k_max < 1) throw DomainError("xi_n: k_max must be >= 1");
  const double alpha = std::ldexp(1.0, n + 1) - 1.0;
  const mpq_class a = asymptotic_coefficient(n);
  const Complex la{log_abs(a), a < 0 ? kPi : 0.0};
  const Complex tv = t.value();
  Complex ls = std::log(tv);
  Complex acc = ls;
  double weight = 1.0 / alpha;
  XiValue out;
  double last = kInf;
  int k = 0;
  for (; k < k_max; ++k) {
    Complex lr;
    if (!log_rho(ls, n, lr)) throw DomainError("xi_n: orbit of Q_n meets a pole");
    if (std::abs(lr.imag()) > 0.5 * kPi) out.branch_ambiguous = true;
    const Complex term = weight * lr;
    acc += term;
    last = std::abs(term);
    if (last <= 1e-17 * std::max(1.0, std::abs(acc))) {
      ++k;
      break;
    }
    ls = wrap_imag(la + alpha * ls + lr);
    weight /= alpha;
  }
  if (last > 1e-8) throw NotConverged("xi_n: product did not settle within k_max factors");
  out.value = std::exp(acc);
  out.k_used = k;
  return out;
}

Complex xi_n(const Parameter& t, int n, int k_max) { return xi_n_value(t, n, k_max).value; }

Complex sqrt_minus_4e0(const Parameter& t) {
  const double m = t.modulus();
  const Complex dir = t.value() / m;
  double r = std::max(1e4, m);
  auto root = [](double rr, Complex d) {
    return std::sqrt(-4.0 * e_n(Parameter(rr * d), 0));
  };
  Complex s = root(r, dir);
  if (std::abs(-s - r * dir) < std::abs(s - r * dir)) s = -s;
  while (r > m) {
    const double next = std::max(0.9 * r, m);
    const Complex predicted = s * (next / r);
    const Complex c = root(next, dir);
    s = std::abs(c - predicted) <= std::abs(-c - predicted) ? c : -c;
    r = next;
  }
  return s;
}

double kernel_gap(const Parameter& t, int n) {
  if (t.modulus() < 3.0) throw DomainError("kernel_gap: requires |t| >= 3");
  return std::abs(xi_n(t, n) - sqrt_minus_4e0(t));
}

}  // namespace fdyn
