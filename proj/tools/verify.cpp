#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fdyn/atlas.hpp"
#include "fdyn/boettcher.hpp"
#include "fdyn/cycles.hpp"
#include "fdyn/escape.hpp"
#include "fdyn/exactmaps.hpp"
#include "fdyn/family.hpp"
#include "fdyn/topology.hpp"

namespace fdyn::cli {

namespace {

// A check returns an empty string on success, otherwise what went wrong.
struct Check {
  const char* stage;
  const char* name;
  std::function<std::string()> run;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const double kSqrt2 = std::sqrt(2.0);
const double kMisiurewicz = std::sqrt(4.0 + 2.0 * std::sqrt(2.0));

Complex random_in_annulus(std::mt19937_64& rng, double r0, double r1) {
  std::uniform_real_distribution<double> r(r0, r1), a(-M_PI, M_PI);
  return std::polar(r(rng), a(rng));
}

std::vector<Check> checks(int workers) {
  std::vector<Check> c;

  // exactmaps
  c.push_back({"exactmaps", "degree and leading coefficient of Q_0..Q_4", [] {
                 for (int n = 0; n <= 4; ++n) {
                   const auto& q = q_exact(n);
                   if (degree(q) != ((1 << (2 * n + 2)) - 1) / 3) return "degree of Q_" + std::to_string(n);
                   if (leading_coefficient(q) != asymptotic_coefficient(n)) return "leading coefficient of Q_" + std::to_string(n);
                 }
                 return std::string();
               }});
  c.push_back({"exactmaps", "pole polynomials squarefree for n <= 3", [] {
                 for (int n = 1; n <= 3; ++n) {
                   if (!is_squarefree(pole_polynomial(n))) return "n = " + std::to_string(n);
                 }
                 return std::string();
               }});
  c.push_back({"exactmaps", "Q_n odd in t", [] {
                 for (int n = 0; n <= 3; ++n) {
                   const auto& q = q_exact(n);
                   const auto& a = q.num().coeffs();
                   const auto& b = q.den().coeffs();
                   for (std::size_t k = 0; k < a.size(); k += 2) {
                     if (a[k] != 0) return "even term in numerator of Q_" + std::to_string(n);
                   }
                   for (std::size_t k = 1; k < b.size(); k += 2) {
                     if (b[k] != 0) return "odd term in denominator of Q_" + std::to_string(n);
                   }
                 }
                 return std::string();
               }});
  c.push_back({"exactmaps", "Q_1(2) = -2/3", [] {
                 const auto v = eval_exact(q_exact(1), mpq_class(2));
                 if (!std::holds_alternative<mpq_class>(v) || std::get<mpq_class>(v) != mpq_class(-2, 3)) {
                   return std::string("wrong value");
                 }
                 return std::string();
               }});

  // family
  c.push_back({"family", "critical orbit identities on 1000 parameters", [] {
                 std::mt19937_64 rng(1);
                 for (int k = 0; k < 1000; ++k) {
                   const Complex tv = random_in_annulus(rng, 1e-3, 50.0);
                   const Parameter t(tv);
                   for (double s : {kSqrt2, -kSqrt2}) {
                     const double v = eval_map(t, ExtendedComplex(s)).modulus();
                     if (v > 1e-14 * std::max(1.0, std::abs(tv))) return fmt("|f_t(+-sqrt2)| = %.3g", v);
                   }
                   const Complex f0 = eval_map(t, ExtendedComplex(0.0)).value();
                   if (std::abs(f0 - tv) > 1e-15 * std::abs(tv)) return fmt("|f_t(0) - t| = %.3g", std::abs(f0 - tv));
                 }
                 return std::string();
               }});
  c.push_back({"family", "f_t(-z) = f_t(z) and f_-t = -f_t bit for bit", [] {
                 std::mt19937_64 rng(2);
                 std::uniform_real_distribution<double> u(-4.0, 4.0);
                 for (int k = 0; k < 2000; ++k) {
                   const Parameter t(u(rng), u(rng));
                   const ExtendedComplex z(Complex{u(rng), u(rng)});
                   const auto a = eval_map(t, z);
                   if (!(a == eval_map(t, -z))) return std::string("even symmetry");
                   if (!(-a == eval_map(-t, z))) return std::string("parameter antisymmetry");
                 }
                 return std::string();
               }});
  c.push_back({"family", "derivative matches a central difference", [] {
                 std::mt19937_64 rng(3);
                 std::uniform_real_distribution<double> u(-3.0, 3.0);
                 for (int k = 0; k < 300; ++k) {
                   const Parameter t(u(rng), u(rng));
                   const Complex z{u(rng), u(rng)};
                   if (std::abs(z * z - 1.0) < 0.1) continue;
                   const double h = 1e-6;
                   const Complex fd = (eval_map(t, ExtendedComplex(z + h)).value() -
                                       eval_map(t, ExtendedComplex(z - h)).value()) / (2.0 * h);
                   const Complex d = eval_derivative(t, z);
                   if (std::abs(d - fd) > 1e-5 * std::max(1.0, std::abs(d))) return fmt("mismatch %.3g", std::abs(d - fd));
                 }
                 return std::string();
               }});
  c.push_back({"family", "z = 2/sqrt3 fixed with multiplier -16 at t = -2 sqrt3", [] {
                 const Parameter t(-2.0 * std::sqrt(3.0), 0.0);
                 const Complex z{2.0 / std::sqrt(3.0), 0.0};
                 const double moved = std::abs(eval_map(t, ExtendedComplex(z)).value() - z);
                 const double err = std::abs(eval_derivative(t, z) + 16.0);
                 if (moved > 1e-12 || err > 1e-10) return fmt("moved %.3g, multiplier error %.3g", moved, err);
                 return std::string();
               }});

  // escape
  c.push_back({"escape", "1000 parameters with |t| in [3, 50] are level 0", [] {
                 std::mt19937_64 rng(4);
                 for (int k = 0; k < 1000; ++k) {
                   const Complex tv = random_in_annulus(rng, 3.0, 50.0);
                   const Verdict v = classify_parameter(Parameter(tv));
                   if (v.kind != VerdictKind::EscapeLevel || v.level != 0) return fmt("t = %.17g%+.17gi", tv.real(), tv.imag());
                 }
                 return std::string();
               }});
  c.push_back({"escape", "1000 attracting critical orbits stay inside R(t)", [] {
                 std::mt19937_64 rng(5);
                 std::uniform_real_distribution<double> u(-3.0, 3.0);
                 int seen = 0;
                 for (int k = 0; k < 100000 && seen < 1000; ++k) {
                   const Complex tv{u(rng), u(rng)};
                   if (tv == Complex{0.0, 0.0}) continue;
                   const Parameter t(tv);
                   if (classify_parameter(t).kind != VerdictKind::AttractingCycle) continue;
                   ++seen;
                   const double r = bailout_radius(t);
                   ExtendedComplex z(tv);
                   for (int j = 0; j < 2000; ++j) {
                     if (z.modulus() > r) return fmt("|orbit| = %.17g", z.modulus());
                     z = eval_map(t, z);
                   }
                 }
                 return seen == 1000 ? std::string() : std::string("too few samples");
               }});
  c.push_back({"escape", "growth factor above 1.2 outside R(t)", [] {
                 for (double lt = std::log(1e-3); lt <= std::log(1e3); lt += 0.05) {
                   const double tm = std::exp(lt);
                   const double r0 = bailout_radius(Parameter(tm, 0.0));
                   for (double r = r0; r < 1e4 * r0; r *= 1.3) {
                     if (escape_growth_floor(tm, r) < 1.2 * r) return fmt("|t| = %.6g, r = %.6g", tm, r);
                   }
                 }
                 return std::string();
               }});
  c.push_back({"escape", "Misiurewicz parameter is Undecided", [] {
                 const Complex tv{kMisiurewicz, 0.0};
                 const Parameter t(tv);
                 const Complex q1 = eval_map(t, ExtendedComplex(tv)).value();
                 const Complex q2 = eval_map(t, ExtendedComplex(q1)).value();
                 if (std::abs(q1 + tv) > 1e-12 || std::abs(q2 - q1) > 1e-12) return std::string("not a landing point");
                 for (int budget : {100, 2000, 20000}) {
                   if (classify_parameter(t, budget).kind != VerdictKind::Undecided) return "budget " + std::to_string(budget);
                 }
                 return std::string();
               }});

  // boettcher
  c.push_back({"boettcher", "functional equation on 100 basin samples per t", [] {
                 for (Complex tv : {Complex{2.0, 0.0}, Complex{5.0, 0.0}, Complex{1.0, 2.0}}) {
                   const Parameter t(tv);
                   std::mt19937_64 rng(6);
                   std::uniform_real_distribution<double> u(-4.0, 4.0);
                   int n = 0;
                   while (n < 100) {
                     const ExtendedComplex z(Complex{u(rng), u(rng)});
                     const Verdict v = classify_dynamical(t, z, 2000);
                     if (v.kind != VerdictKind::EscapeLevel || std::isinf(v.final_modulus)) continue;
                     const ExtendedComplex fz = eval_map(t, z);
                     if (fz.is_infinity()) continue;
                     ++n;
                     const auto p = phi(t, z);
                     const Complex lhs = phi(t, fz).value();
                     const Complex rhs = -(tv / 4.0) * std::polar(std::exp(2.0 * p.modulus_log), 2.0 * p.argument);
                     const double res = std::abs(lhs - rhs) / std::abs(lhs);
                     if (res > 1e-8) return fmt("residual %.3g", res);
                   }
                 }
                 return std::string();
               }});
  c.push_back({"boettcher", "E_0(100) close to -2500", [] {
                 const double rel = std::abs(e_n(Parameter(100.0, 0.0), 0) + 2500.0) / 2500.0;
                 return rel < 0.01 ? std::string() : fmt("relative error %.3g", rel);
               }});
  c.push_back({"boettcher", "Xi_n bounds for t in {4, 5i, -6}", [] {
                 for (Complex tv : {Complex{4.0, 0.0}, Complex{0.0, 5.0}, Complex{-6.0, 0.0}}) {
                   for (int n : {1, 2}) {
                     const Complex x = xi_n(Parameter(tv), n);
                     if (std::abs(x - tv) > 23.0 || std::abs(x) <= 2.0) return fmt("|Xi - t| = %.6g, |Xi| = %.6g", std::abs(x - tv), std::abs(x));
                   }
                 }
                 return std::string();
               }});
  c.push_back({"boettcher", "kernel gap at t = 5 shrinks from n = 1 to n = 3", [] {
                 const double g1 = kernel_gap(Parameter(5.0, 0.0), 1), g3 = kernel_gap(Parameter(5.0, 0.0), 3);
                 return g3 < g1 ? std::string() : fmt("gap(1) = %.6g, gap(3) = %.6g", g1, g3);
               }});
  c.push_back({"boettcher", "sqrt(-4 E_0) has no collisions on 200 Cantor-locus samples", [] {
                 std::mt19937_64 rng(7);
                 for (int k = 0; k < 200; ++k) {
                   const Complex a = random_in_annulus(rng, 3.0, 20.0), b = random_in_annulus(rng, 3.0, 20.0);
                   if (std::abs(a - b) < 1e-6) continue;
                   const Complex sa = sqrt_minus_4e0(Parameter(a)), sb = sqrt_minus_4e0(Parameter(b));
                   if (std::abs(sa - sb) < 1e-9) return std::string("collision");
                 }
                 return std::string();
               }});

  // cycles
  c.push_back({"cycles", "multiplier ~ t^4 near t = 0", [] {
                 for (Complex tv : {Complex{0.01, 0.0}, Complex{0.0, 0.02}, Complex{-0.015, 0.0}}) {
                   const auto cyc = find_attracting_cycle(Parameter(tv));
                   if (!cyc || cyc->period != 1) return std::string("no attracting fixed point");
                   const double m = std::abs(cyc->multiplier / std::pow(tv, 4) - 1.0);
                   const double d = std::abs(cyc->representative - tv);
                   if (m > 0.01 || d > 10.0 * std::pow(std::abs(tv), 3)) return fmt("|l/t^4 - 1| = %.3g, |z - t| = %.3g", m, d);
                 }
                 return std::string();
               }});
  c.push_back({"cycles", "centers of period 2 are +-sqrt2", [] {
                 const auto cs = find_centers(2);
                 if (cs.size() != 2) return "found " + std::to_string(cs.size());
                 for (const Complex& z : cs) {
                   if (std::abs(std::abs(z) - kSqrt2) > 1e-10 || std::abs(z.imag()) > 1e-10) return fmt("center %.17g%+.17gi", z.real(), z.imag());
                 }
                 return std::string();
               }});
  c.push_back({"cycles", "10 centers of exact period 3", [] {
                 const auto cs = find_centers(3);
                 return cs.size() == 10 ? std::string() : "found " + std::to_string(cs.size());
               }});
  c.push_back({"cycles", "Misiurewicz (1,2) contains +-sqrt(4 + 2 sqrt2)", [] {
                 const auto ms = find_misiurewicz(1, 2);
                 for (double s : {kMisiurewicz, -kMisiurewicz}) {
                   bool hit = false;
                   for (const auto& m : ms) hit = hit || std::abs(m.t - Complex{s, 0.0}) <= 1e-10;
                   if (!hit) return fmt("missing %.17g", s);
                 }
                 return std::string();
               }});
  c.push_back({"cycles", "census at 2048^2: one period-1, two level-1 components", [workers] {
                 const CensusResult r = census(GridSpec::centered_square(3.0, 2048), 1, 1, 2000, workers);
                 const CensusRow* p1 = r.row(CensusKind::Hyperbolic, 1);
                 const CensusRow* l1 = r.row(CensusKind::Escape, 1);
                 if (!p1 || !l1) return std::string("missing rows");
                 if (p1->components_found != 1 || l1->components_found != 2) {
                   return fmt("period 1: %.0f, level 1: %.0f", p1->components_found, l1->components_found);
                 }
                 const auto* a = r.component_at({1.0, 0.0});
                 const auto* b = r.component_at({-1.0, 0.0});
                 if (!a || !b || a == b || a->index != 1 || b->index != 1) return std::string("+-1 not in distinct level-1 components");
                 return std::string();
               }});

  // topology
  c.push_back({"topology", "probe verdicts", [workers] {
                 const GridSpec g = GridSpec::centered_square(3.0, 2048);
                 const auto far = sierpinski_probe(Parameter(5.0, 0.0), g, kProbeMaxIter, workers);
                 if (far.verdict != ProbeVerdict::CantorLocus) return "t = 5: " + to_string(far.verdict);
                 const auto land = sierpinski_probe(Parameter(kMisiurewicz, 0.0), g, kProbeMaxIter, workers);
                 if (land.verdict != ProbeVerdict::Inconclusive) return "Misiurewicz: " + to_string(land.verdict);
                 const auto near = sierpinski_probe(Parameter(kMisiurewicz - 1e-4, 0.0), g, kProbeMaxIter, workers);
                 if (near.verdict != ProbeVerdict::JordanEvidence) return "near Misiurewicz: " + to_record(near);
                 return std::string();
               }});

  // renders
  c.push_back({"atlas", "parameter render independent of worker count and symmetric", [] {
                 const GridSpec g = GridSpec::from_bounds(-3.0, 3.0, -2.0, 2.0, 512, 512);
                 const ImageBuffer a = render_parameter(g, kRenderMaxIter, kDefaultPeriodMax, 1);
                 const ImageBuffer b = render_parameter(g, kRenderMaxIter, kDefaultPeriodMax, 8);
                 if (encode_ppm(a) != encode_ppm(b)) return std::string("renders differ");
                 for (int j = 0; j < g.ny; ++j) {
                   for (int i = 0; i < g.nx; ++i) {
                     if (!(a.at(i, j) == a.at(g.nx - 1 - i, g.ny - 1 - j))) return std::string("not rotation symmetric");
                   }
                 }
                 return std::string();
               }});
  c.push_back({"atlas", "Julia render symmetric and PPM round trip", [workers] {
                 const GridSpec g = GridSpec::centered_square(3.0, 128);
                 const ImageBuffer a = render_julia(Parameter(kSqrt2, 0.0), g, kRenderMaxIter, workers);
                 for (int j = 0; j < g.ny; ++j) {
                   for (int i = 0; i < g.nx; ++i) {
                     if (!(a.at(i, j) == a.at(g.nx - 1 - i, g.ny - 1 - j))) return std::string("not rotation symmetric");
                   }
                 }
                 return decode_ppm(encode_ppm(a)) == a ? std::string() : std::string("round trip changed the image");
               }});
  return c;
}

}  // namespace

bool run_verify(std::ostream& out, int workers) {
  int passed = 0, total = 0;
  for (const Check& c : checks(workers)) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ++total;
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", secs);
    if (detail.empty()) {
      ++passed;
      out << "PASS " << c.stage << ": " << c.name << " (" << time << ")\n";
    } else {
      out << "FAIL " << c.stage << ": " << c.name << " (" << time << "): " << detail << "\n";
    }
    out.flush();
  }
  out << passed << "/" << total << " properties hold\n";
  return passed == total;
}

}  // namespace fdyn::cli
