#pragma once

// Exact rational algebra for the parameter-plane maps Q_n(t) = f_t^n(t)
// and the polynomials whose roots are poles, centers and Misiurewicz
// candidates.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "fdyn/error.hpp"

namespace fdyn {

/// Polynomial in t with exact rational coefficients; index = power of t.
/// The coefficient list never ends in a zero; the zero polynomial is empty.
class BigRatPoly {
 public:
  BigRatPoly() = default;
  explicit BigRatPoly(std::vector<mpq_class> coeffs);

  static BigRatPoly constant(const mpq_class& c);
  /// c * t^k
  static BigRatPoly monomial(const mpq_class& c, std::size_t k);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  /// Coefficient of t^k (zero beyond the degree).
  mpq_class coeff(std::size_t k) const;
  const mpq_class& leading() const;

  BigRatPoly operator-() const;
  friend BigRatPoly operator+(const BigRatPoly& a, const BigRatPoly& b);
  friend BigRatPoly operator-(const BigRatPoly& a, const BigRatPoly& b);
  friend BigRatPoly operator*(const BigRatPoly& a, const BigRatPoly& b);
  friend BigRatPoly operator*(const mpq_class& c, const BigRatPoly& a);
  friend bool operator==(const BigRatPoly& a, const BigRatPoly& b) { return a.coeffs_ == b.coeffs_; }

  BigRatPoly derivative() const;
  BigRatPoly monic() const;
  /// Multiplicity of the root t = 0.
  std::size_t trailing_zeros() const;

  mpq_class eval(const mpq_class& t) const;
  std::complex<double> eval(std::complex<double> t) const;
  /// Coefficients rounded to double.
  std::vector<double> to_double() const;

  /// Plain-text archival form: one line "degree k: numerator/denominator" per coefficient.
  std::string to_text() const;
  static BigRatPoly from_text(const std::string& text);

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

struct DivMod {
  BigRatPoly quotient;
  BigRatPoly remainder;
};

/// Euclidean division over Q. Throws DomainError when b is zero.
DivMod divmod(const BigRatPoly& a, const BigRatPoly& b);

/// Monic gcd over Q (gcd(0, 0) = 0).
BigRatPoly gcd(const BigRatPoly& a, const BigRatPoly& b);

/// p / gcd(p, p'), made monic.
BigRatPoly squarefree_part(const BigRatPoly& p);
bool is_squarefree(const BigRatPoly& p);

/// Reduced quotient num/den with gcd(num, den) = 1 and den monic.
class RationalFuncExact {
 public:
  /// Reduces and normalizes; throws DomainError for a zero denominator.
  RationalFuncExact(BigRatPoly num, BigRatPoly den);

  static RationalFuncExact identity();

  const BigRatPoly& num() const { return num_; }
  const BigRatPoly& den() const { return den_; }

  friend RationalFuncExact operator-(const RationalFuncExact& a, const RationalFuncExact& b);
  friend bool operator==(const RationalFuncExact& a, const RationalFuncExact& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_text() const;

 private:
  BigRatPoly num_;
  BigRatPoly den_;
};

/// Degree cap on the numerator of any composed map.
inline constexpr int kMaxComposedDegree = 100000;
/// Default largest n for which Q_n is built (deg Q_6 = 5461).
inline constexpr int kDefaultMaxLevel = 6;

/// -(t/4) (q^2 - 2)^2 / (q^2 - 1), reduced. Throws CapacityError past kMaxComposedDegree.
RationalFuncExact q_next(const RationalFuncExact& q_prev);

/// Q_n, memoized and shareable across threads. Throws CapacityError for n > max_level.
const RationalFuncExact& q_exact(int n, int max_level = kDefaultMaxLevel);

/// max(deg num, deg den).
int degree(const RationalFuncExact& q);
/// a in q(t) ~ a t^(deg num - deg den) as t -> infinity.
mpq_class leading_coefficient(const RationalFuncExact& q);

/// a_n = (-1/4)^(2^n - 1) by the recursion a_{n+1} = -a_n^2 / 4; equals
/// leading_coefficient(q_exact(n)) without building Q_n.
mpq_class asymptotic_coefficient(int n);

/// Squarefree monic numerator of Q_{n-1}^2 - 1; its roots are the finite poles of Q_n.
BigRatPoly pole_polynomial(int n);
/// Squarefree monic numerator of Q_{n-2}^2 - 2; its roots are the period-n center candidates.
BigRatPoly center_polynomial(int n);
/// Squarefree monic numerator of Q_j - Q_k, j < k.
BigRatPoly misiurewicz_polynomial(int j, int k);

struct PoleMarker {
  friend bool operator==(PoleMarker, PoleMarker) { return true; }
};
using ExactValue = std::variant<mpq_class, PoleMarker>;

ExactValue eval_exact(const RationalFuncExact& q, const mpq_class& t);

}  // namespace fdyn
