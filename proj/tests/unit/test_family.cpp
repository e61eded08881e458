#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "fdyn/family.hpp"

using fdyn::Complex;
using fdyn::ExtendedComplex;
using fdyn::Parameter;

namespace {

// Direct evaluation of the defining formula, kept independent of the library path.
Complex oracle_map(Complex t, Complex z) {
  const Complex z2 = z * z;
  return -(t / 4.0) * (z2 - 2.0) * (z2 - 2.0) / (z2 - 1.0);
}

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("map at integer points") {
  // -(2/4) * 49 / 8
  auto v = fdyn::eval_map(Parameter(2.0, 0.0), ExtendedComplex(3.0));
  CHECK(v.value().real() == doctest::Approx(-49.0 / 16.0).epsilon(1e-15));
  CHECK(v.value().imag() == 0.0);
}

TEST_CASE("critical orbit and poles") {
  const Parameter t(1.3, -0.4);
  CHECK(std::abs(fdyn::eval_map(t, ExtendedComplex(std::sqrt(2.0))).value()) < 1e-14);
  CHECK(std::abs(fdyn::eval_map(t, ExtendedComplex(0.0)).value() - t.value()) < 1e-15);
  CHECK(fdyn::eval_map(t, ExtendedComplex(1.0)).is_infinity());
  CHECK(fdyn::eval_map(t, ExtendedComplex(-1.0)).is_infinity());
  CHECK(fdyn::eval_map(t, ExtendedComplex::infinity()).is_infinity());
  CHECK_THROWS_AS(fdyn::eval_derivative(t, Complex{1.0, 0.0}), fdyn::DomainError);
}

TEST_CASE("parameter zero is rejected") {
  CHECK_THROWS_AS(Parameter(0.0, 0.0), fdyn::DomainError);
  CHECK_THROWS_AS(Parameter(NAN, 0.0), fdyn::DomainError);
}

TEST_CASE("matches the direct formula on random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 2000; ++k) {
    const Complex t{u(rng), u(rng)}, z{u(rng), u(rng)};
    if (std::abs(t) < 1e-3) continue;
    const auto v = fdyn::eval_map(Parameter(t), ExtendedComplex(z));
    REQUIRE(v.is_finite());
    CHECK(rel_err(v.value(), oracle_map(t, z)) < 1e-12);
  }
}

TEST_CASE("even symmetry and parameter antisymmetry are exact") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 5000; ++k) {
    const Complex t{u(rng), u(rng)}, z{u(rng), u(rng)};
    const Parameter p(t);
    const auto a = fdyn::eval_map(p, ExtendedComplex(z));
    CHECK(a == fdyn::eval_map(p, ExtendedComplex(-z)));
    CHECK(fdyn::eval_map(-p, ExtendedComplex(z)) == -a);
  }
}

TEST_CASE("derivative agrees with a central difference") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const Complex t{u(rng), u(rng)}, z{u(rng), u(rng)};
    if (std::abs(z * z - 1.0) < 0.1 || std::abs(t) < 1e-3) continue;
    const double h = 1e-6;
    const Complex fd = (oracle_map(t, z + h) - oracle_map(t, z - h)) / (2.0 * h);
    const Complex d = fdyn::eval_derivative(Parameter(t), z);
    CHECK(std::abs(d - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("semiconjugacy: S(z^2) = f(z)^2") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const Complex t{u(rng), u(rng)}, z{u(rng), u(rng)};
    if (std::abs(z * z - 1.0) < 1e-3 || std::abs(t) < 1e-3) continue;
    const Parameter p(t);
    const Complex f = fdyn::eval_map(p, ExtendedComplex(z)).value();
    const Complex s = fdyn::eval_semiconjugate(p, ExtendedComplex(z * z)).value();
    CHECK(rel_err(s, f * f) < 1e-10);
  }
  CHECK(fdyn::eval_semiconjugate(Parameter(1.0, 0.0), ExtendedComplex(1.0)).is_infinity());
}

TEST_CASE("large arguments overflow to infinity, never NaN") {
  const Parameter t(3.0, 1.0);
  for (double r : {1e10, 1e70, 1e100, 1e200, 1e300}) {
    const auto v = fdyn::eval_map(t, ExtendedComplex(Complex{r, -r}));
    if (v.is_finite()) {
      CHECK(std::isfinite(v.value().real()));
      CHECK(std::isfinite(v.value().imag()));
    }
  }
  CHECK(fdyn::eval_map(t, ExtendedComplex(Complex{1e200, 0.0})).is_infinity());
  CHECK(fdyn::eval_map(t, ExtendedComplex(Complex{1e10, 0.0})).is_finite());
}

TEST_CASE("near t = 0 the fixed point tracks t with multiplier ~ t^4") {
  for (double s : {1e-2, 3e-3, 1e-3}) {
    const Parameter t(s, 0.5 * s);
    Complex z = t.value();
    for (int k = 0; k < 50; ++k) z = fdyn::eval_map(t, ExtendedComplex(z)).value();
    const Complex tv = t.value();
    const Complex predicted = tv + std::pow(tv, 5) / 4.0;
    // next term is t^7 / 4
    CHECK(std::abs(z - predicted) < std::pow(std::abs(tv), 7) + 1e-15 * std::abs(tv));
    const Complex lam = fdyn::eval_derivative(t, z);
    CHECK(std::abs(lam - std::pow(tv, 4)) < 2.0 * std::pow(std::abs(tv), 6));
  }
}

TEST_CASE("a repelling fixed point at t = -2 sqrt 3") {
  const Parameter t(-2.0 * std::sqrt(3.0), 0.0);
  const Complex z{2.0 / std::sqrt(3.0), 0.0};
  CHECK(std::abs(fdyn::eval_map(t, ExtendedComplex(z)).value() - z) < 1e-14);
  CHECK(std::abs(fdyn::eval_derivative(t, z) - Complex{-16.0, 0.0}) < 1e-12);
}

TEST_CASE("orbit starts at z0 and absorbs infinity") {
  const Parameter t(2.0, 0.0);
  const auto o = fdyn::orbit(t, ExtendedComplex(1.0), 3);
  REQUIRE(o.size() == 4);
  CHECK(o[0] == ExtendedComplex(1.0));
  CHECK(o[1].is_infinity());
  CHECK(o[3].is_infinity());
  CHECK_THROWS_AS(fdyn::orbit(t, ExtendedComplex(1.0), -1), fdyn::DomainError);
}
