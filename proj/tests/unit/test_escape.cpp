#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "fdyn/escape.hpp"
#include "fdyn/exactmaps.hpp"

using fdyn::Complex;
using fdyn::ExtendedComplex;
using fdyn::Parameter;
using fdyn::VerdictKind;

namespace {

const double kMisiurewicz = std::sqrt(4.0 + 2.0 * std::sqrt(2.0));

Complex oracle_map(Complex t, Complex z) {
  const Complex z2 = z * z;
  return -(t / 4.0) * (z2 - 2.0) * (z2 - 2.0) / (z2 - 1.0);
}

}  // namespace

TEST_CASE("bailout radius values") {
  CHECK(fdyn::bailout_radius(Parameter(5.0, 0.0)) == 3.0);
  CHECK(fdyn::bailout_radius(Parameter(0.5, 0.0)) == 20.0);
  CHECK(fdyn::bailout_radius(Parameter(10.0 / 3.0, 0.0)) == doctest::Approx(3.0));
  CHECK(fdyn::bailout_radius(Parameter(3.1, 0.0)) == 3.0);
  CHECK(fdyn::bailout_radius(Parameter(2.0, 0.0)) == 5.0);
  CHECK_THROWS_AS(fdyn::bailout_radius(Parameter(1.0, 0.0), 5.0), fdyn::DomainError);
}

TEST_CASE("outside R(t) moduli grow by a fixed factor") {
  // Lower bound of |f(z)|/|z| on |z| = r, minimized over r >= R(t).
  double worst = INFINITY;
  for (int a = 0; a <= 4000; ++a) {
    const double tm = std::pow(10.0, -3.0 + 5.0 * a / 4000.0);
    const double r0 = fdyn::bailout_radius(Parameter(tm, 0.0));
    for (int b = 0; b <= 200; ++b) {
      const double r = r0 * std::pow(10.0, 4.0 * b / 200.0);
      worst = std::min(worst, fdyn::escape_growth_floor(tm, r) / r);
    }
  }
  // Smallest at |t| = 3, |z| = 3: 0.75 * 49 / 30.
  CHECK(worst >= 1.2);
  CHECK(worst == doctest::Approx(0.75 * 49.0 / 30.0).epsilon(1e-3));
  // The doubling factor is not available for all |t|.
  CHECK(fdyn::escape_growth_floor(10.0 / 3.0, 3.0) / 3.0 < 2.0);
  // The floor really is a floor.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const Complex t{8 * u(rng), 8 * u(rng)};
    const double r = fdyn::bailout_radius(Parameter(t)) * (1.0 + 3.0 * std::abs(u(rng)));
    const Complex z = std::polar(r, 4.0 * u(rng));
    CHECK(std::abs(oracle_map(t, z)) >= fdyn::escape_growth_floor(std::abs(t), r) * (1 - 1e-12));
  }
}

TEST_CASE("classify parameter examples") {
  auto v5 = fdyn::classify_parameter(Parameter(5.0, 0.0));
  CHECK(v5.kind == VerdictKind::EscapeLevel);
  CHECK(v5.level == 0);

  auto v1 = fdyn::classify_parameter(Parameter(1.0, 0.0));
  CHECK(v1.kind == VerdictKind::EscapeLevel);
  CHECK(v1.level == 1);
  CHECK(std::isinf(v1.final_modulus));

  auto vs = fdyn::classify_parameter(Parameter(std::sqrt(2.0), 0.0));
  REQUIRE(vs.kind == VerdictKind::AttractingCycle);
  CHECK(vs.cycle->period == 2);
  CHECK(std::abs(vs.cycle->multiplier) < 1e-12);

  for (int budget : {10, 100, 1000, 10000, 50000}) {
    auto vm = fdyn::classify_parameter(Parameter(kMisiurewicz, 0.0), budget);
    CHECK(vm.kind == VerdictKind::Undecided);
    CHECK(vm.level == -1);
  }
}

TEST_CASE("classify dynamical examples") {
  auto a = fdyn::classify_dynamical(Parameter(5.0, 0.0), ExtendedComplex(4.0));
  CHECK(a.kind == VerdictKind::EscapeLevel);
  CHECK(a.level == 0);
  for (Complex t : {Complex{0.3, 0.2}, Complex{2.0, -1.0}, Complex{-7.0, 0.0}}) {
    auto b = fdyn::classify_dynamical(Parameter(t), ExtendedComplex(1.0));
    CHECK(b.kind == VerdictKind::EscapeLevel);
    CHECK(b.level == 1);
  }
  const Parameter ts(std::sqrt(2.0), 0.0);
  auto cyc = fdyn::find_attracting_cycle(ts);
  REQUIRE(cyc);
  auto c = fdyn::classify_dynamical(ts, ExtendedComplex(0.01), 1000, &*cyc);
  CHECK(c.kind == VerdictKind::AttractingCycle);
  CHECK(c.cycle->period == 2);
  CHECK(fdyn::classify_dynamical(ts, ExtendedComplex::infinity()).level == 0);
}

TEST_CASE("symmetry in z and in t is exact") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 3000; ++k) {
    const Complex t{u(rng), u(rng)};
    const Parameter p(t);
    const auto a = fdyn::classify_parameter(p, 2000);
    const auto b = fdyn::classify_parameter(-p, 2000);
    CHECK(a.kind == b.kind);
    CHECK(a.level == b.level);
    CHECK(a.iterations_used == b.iterations_used);
    if (a.cycle && b.cycle) {
      CHECK(a.cycle->period == b.cycle->period);
      CHECK(a.cycle->multiplier == b.cycle->multiplier);
    }
    const Complex z{u(rng), u(rng)};
    const auto c = fdyn::classify_dynamical(p, ExtendedComplex(z), 500);
    const auto d = fdyn::classify_dynamical(p, ExtendedComplex(-z), 500);
    CHECK(c.kind == d.kind);
    CHECK(c.level == d.level);
  }
}

TEST_CASE("escape level is the first index past R(t)") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const Complex t{u(rng), u(rng)};
    const auto v = fdyn::classify_parameter(Parameter(t), 500);
    if (v.kind != VerdictKind::EscapeLevel) continue;
    const double r = fdyn::bailout_radius(Parameter(t));
    // Same arithmetic as the classifier: long chaotic orbits amplify rounding.
    ExtendedComplex z(t);
    for (int j = 0; j < v.level; ++j) {
      CHECK(z.modulus() <= r);
      z = fdyn::eval_map(Parameter(t), z);
    }
    CHECK(z.modulus() > r);
  }
}

TEST_CASE("bounded critical orbits stay inside R(t)") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int seen = 0;
  for (int k = 0; k < 20000 && seen < 500; ++k) {
    const Complex t{u(rng), u(rng)};
    const auto v = fdyn::classify_parameter(Parameter(t));
    if (v.kind != VerdictKind::AttractingCycle) continue;
    ++seen;
    const double r = fdyn::bailout_radius(Parameter(t));
    Complex z = t;
    double sup = std::abs(z);
    for (int j = 0; j < 2000; ++j) {
      z = oracle_map(t, z);
      sup = std::max(sup, std::abs(z));
    }
    CHECK(sup <= r);
  }
  CHECK(seen == 500);
}

TEST_CASE("an attracting cycle reaching beyond 2 sqrt 2") {
  // attracting 12-cycle with a point of modulus ~3.356; confirmed at 50 digits
  const Complex t{0.88890307922744771, -0.11190179041259851};
  const auto v = fdyn::classify_parameter(Parameter(t));
  REQUIRE(v.kind == VerdictKind::AttractingCycle);
  CHECK(v.cycle->period == 12);
  CHECK(std::abs(v.cycle->multiplier) == doctest::Approx(0.519997).epsilon(1e-4));
  double sup = 0.0;
  for (const Complex& z : v.cycle->points) sup = std::max(sup, std::abs(z));
  CHECK(sup == doctest::Approx(3.3558611207921).epsilon(1e-9));
  CHECK(sup > 2.0 * std::sqrt(2.0));
}

TEST_CASE("floating Q_n agrees with exact evaluation") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 13);
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k < 60; ++k) {
      const mpq_class q(num(rng), den(rng));
      if (q == 0) continue;
      mpq_class tq = q;
      tq.canonicalize();
      const auto e = fdyn::eval_exact(fdyn::q_exact(n), tq);
      if (!std::holds_alternative<mpq_class>(e)) continue;
      const double exact = std::get<mpq_class>(e).get_d();
      const Parameter p(tq.get_d(), 0.0);
      ExtendedComplex z(tq.get_d());
      for (int j = 0; j < n; ++j) z = fdyn::eval_map(p, z);
      // Stay away from poles, where conditioning is unbounded.
      if (std::abs(exact) > 1e6) continue;
      CHECK(std::abs(z.value().real() - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("green function") {
  const Parameter t(1.0, 0.0);
  auto g = fdyn::green_relative(t, ExtendedComplex(Complex{1e8, 0.0}));
  CHECK(std::abs(g.g - std::log(2.5e7)) <= 1e-6 * std::log(2.5e7));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  int checked = 0;
  for (Complex tv : {Complex{2.0, 0.0}, Complex{5.0, 0.0}, Complex{1.0, 2.0}, Complex{0.3, 0.1}}) {
    const Parameter p(tv);
    for (int k = 0; k < 200; ++k) {
      const Complex z{u(rng), u(rng)};
      const auto v = fdyn::classify_dynamical(p, ExtendedComplex(z), 2000);
      if (v.kind != VerdictKind::EscapeLevel || std::isinf(v.final_modulus)) continue;
      const auto fz = fdyn::eval_map(p, ExtendedComplex(z));
      if (fz.is_infinity()) continue;
      const double g0 = fdyn::green_relative(p, ExtendedComplex(z)).g;
      const double g1 = fdyn::green_relative(p, fz).g;
      CHECK(g0 > 0.0);
      CHECK(std::abs(g1 - 2.0 * g0) <= 1e-10 * std::abs(g1));
      ++checked;
    }
  }
  CHECK(checked > 100);
  CHECK(std::isinf(fdyn::green_relative(t, ExtendedComplex(1.0)).g));
  CHECK_THROWS_AS(fdyn::green_relative(Parameter(std::sqrt(2.0), 0.0), ExtendedComplex(0.0)),
                  fdyn::NotInBasin);
}

TEST_CASE("verdict record") {
  const auto v = fdyn::classify_parameter(Parameter(5.0, 0.0));
  CHECK(fdyn::to_record({5.0, 0.0}, v) == "5 0 escape 0 0 0 0");
  const auto w = fdyn::classify_parameter(Parameter(std::sqrt(2.0), 0.0));
  const std::string rec = fdyn::to_record({std::sqrt(2.0), 0.0}, w);
  CHECK(rec.rfind("1.4142135623730951 0 cycle -1 2 ", 0) == 0);
}
