#include "fdyn/exactmaps.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <regex>
#include <sstream>

namespace fdyn {

// ---------------------------------------------------------------------------
// BigRatPoly

BigRatPoly::BigRatPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

BigRatPoly BigRatPoly::constant(const mpq_class& c) { return monomial(c, 0); }

BigRatPoly BigRatPoly::monomial(const mpq_class& c, std::size_t k) {
  std::vector<mpq_class> v(k + 1);
  v[k] = c;
  return BigRatPoly(std::move(v));
}

void BigRatPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

mpq_class BigRatPoly::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : mpq_class(0);
}

const mpq_class& BigRatPoly::leading() const {
  if (coeffs_.empty()) throw DomainError("BigRatPoly: zero polynomial has no leading coefficient");
  return coeffs_.back();
}

BigRatPoly BigRatPoly::operator-() const {
  BigRatPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

BigRatPoly operator+(const BigRatPoly& a, const BigRatPoly& b) {
  std::vector<mpq_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  BigRatPoly r;
  r.coeffs_ = std::move(v);
  r.trim();
  return r;
}

BigRatPoly operator-(const BigRatPoly& a, const BigRatPoly& b) { return a + (-b); }

namespace {

// Integer image L * p, with L the lcm of the coefficient denominators.
struct IntegerImage {
  std::vector<mpz_class> coeffs;
  mpz_class scale;
};

IntegerImage integer_image(const std::vector<mpq_class>& p) {
  IntegerImage img;
  img.scale = 1;
  for (const auto& c : p) mpz_lcm(img.scale.get_mpz_t(), img.scale.get_mpz_t(), c.get_den_mpz_t());
  img.coeffs.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    mpz_divexact(img.coeffs[i].get_mpz_t(), img.scale.get_mpz_t(), p[i].get_den_mpz_t());
    img.coeffs[i] *= p[i].get_num();
  }
  return img;
}

}  // namespace

BigRatPoly operator*(const BigRatPoly& a, const BigRatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // Multiply integer images so that no rational normalization happens in the
  // inner loop; canonicalize once per output coefficient.
  const IntegerImage ia = integer_image(a.coeffs_);
  const IntegerImage ib = integer_image(b.coeffs_);
  std::vector<mpz_class> prod(ia.coeffs.size() + ib.coeffs.size() - 1);
  for (std::size_t i = 0; i < ia.coeffs.size(); ++i) {
    if (sgn(ia.coeffs[i]) == 0) continue;
    for (std::size_t j = 0; j < ib.coeffs.size(); ++j) {
      mpz_addmul(prod[i + j].get_mpz_t(), ia.coeffs[i].get_mpz_t(), ib.coeffs[j].get_mpz_t());
    }
  }
  const mpz_class scale = ia.scale * ib.scale;
  std::vector<mpq_class> v(prod.size());
  for (std::size_t k = 0; k < prod.size(); ++k) {
    v[k] = mpq_class(prod[k], scale);
  }
  return BigRatPoly(std::move(v));
}

BigRatPoly operator*(const mpq_class& c, const BigRatPoly& a) {
  if (sgn(c) == 0) return {};
  BigRatPoly r = a;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

BigRatPoly BigRatPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpq_class> v(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return BigRatPoly(std::move(v));
}

BigRatPoly BigRatPoly::monic() const {
  if (is_zero()) return {};
  const mpq_class inv = 1 / leading();
  return inv * (*this);
}

std::size_t BigRatPoly::trailing_zeros() const {
  std::size_t k = 0;
  while (k < coeffs_.size() && sgn(coeffs_[k]) == 0) ++k;
  return k;
}

mpq_class BigRatPoly::eval(const mpq_class& t) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::complex<double> BigRatPoly::eval(std::complex<double> t) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

std::vector<double> BigRatPoly::to_double() const {
  std::vector<double> v(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k] = coeffs_[k].get_d();
  return v;
}

std::string BigRatPoly::to_text() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    os << "degree " << k << ": " << coeffs_[k].get_num().get_str() << '/'
       << coeffs_[k].get_den().get_str() << '\n';
  }
  return os.str();
}

BigRatPoly BigRatPoly::from_text(const std::string& text) {
  static const std::regex kLine(R"(^degree (\d+): (-?\d+)/(\d+)$)");
  std::istringstream is(text);
  std::string line;
  std::vector<mpq_class> v;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::smatch m;
    if (!std::regex_match(line, m, kLine)) {
      throw DomainError("BigRatPoly::from_text: bad line '" + line + "'");
    }
    const auto k = static_cast<std::size_t>(std::stoul(m[1].str()));
    const mpz_class d(m[3].str(), 10);
    if (sgn(d) == 0) throw DomainError("BigRatPoly::from_text: zero denominator");
    if (k >= v.size()) v.resize(k + 1);
    v[k] = mpq_class(mpz_class(m[2].str(), 10), d);
  }
  return BigRatPoly(std::move(v));
}

// ---------------------------------------------------------------------------
// Division and gcd

DivMod divmod(const BigRatPoly& a, const BigRatPoly& b) {
  if (b.is_zero()) throw DomainError("divmod: division by the zero polynomial");
  if (a.degree() < b.degree()) return {BigRatPoly{}, a};
  std::vector<mpq_class> rem = a.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  std::vector<mpq_class> quot(rem.size() - db);
  const mpq_class inv_lead = 1 / b.leading();
  for (std::size_t i = rem.size(); i-- > db;) {
    if (sgn(rem[i]) == 0) continue;
    const mpq_class q = rem[i] * inv_lead;
    quot[i - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coeffs()[j];
  }
  rem.resize(db);
  return {BigRatPoly(std::move(quot)), BigRatPoly(std::move(rem))};
}

namespace {

constexpr std::array<std::uint64_t, 4> kPrimes = {2147483629ULL, 2147483587ULL, 2147483579ULL,
                                                  2147483563ULL};

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// Image of p in F_prime, or empty when the prime divides a denominator or
// the numerator of the leading coefficient (inadmissible prime).
bool reduce_mod(const BigRatPoly& p, std::uint64_t prime, std::vector<std::uint64_t>& out) {
  out.resize(p.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const mpq_class& c = p.coeffs()[i];
    const std::uint64_t d = mpz_fdiv_ui(c.get_den_mpz_t(), prime);
    if (d == 0) return false;
    const std::uint64_t n = mpz_fdiv_ui(c.get_num_mpz_t(), prime);
    out[i] = n * pow_mod(d, prime - 2, prime) % prime;
  }
  return out.back() != 0;
}

int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b, std::uint64_t p) {
  auto trim = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const std::uint64_t inv = pow_mod(b.back(), p - 2, p);
    const std::size_t db = b.size() - 1;
    for (std::size_t i = a.size(); i-- > db;) {
      if (a[i] == 0) continue;
      const std::uint64_t q = a[i] * inv % p;
      for (std::size_t j = 0; j <= db; ++j) {
        a[i - db + j] = (a[i - db + j] + (p - q) * b[j]) % p;
      }
    }
    a.resize(db);
    trim(a);
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

BigRatPoly shift_down(const BigRatPoly& p, std::size_t k) {
  if (k == 0) return p;
  return BigRatPoly(std::vector<mpq_class>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(k),
                                           p.coeffs().end()));
}

BigRatPoly shift_up(const BigRatPoly& p, std::size_t k) {
  if (k == 0 || p.is_zero()) return p;
  std::vector<mpq_class> v(k);
  v.insert(v.end(), p.coeffs().begin(), p.coeffs().end());
  return BigRatPoly(std::move(v));
}

BigRatPoly euclid_gcd(BigRatPoly a, BigRatPoly b) {
  a = a.monic();
  b = b.monic();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    BigRatPoly r = divmod(a, b).remainder.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

BigRatPoly gcd(const BigRatPoly& a, const BigRatPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const std::size_t k = std::min(a.trailing_zeros(), b.trailing_zeros());
  const BigRatPoly t_k = BigRatPoly::monomial(1, k);
  const BigRatPoly as = shift_down(a, k);
  const BigRatPoly bs = shift_down(b, k);
  if (as.degree() == 0 || bs.degree() == 0) return t_k;

  // A constant gcd modulo an admissible prime certifies a constant gcd over Q:
  // reduction can only raise the degree of the gcd.
  std::vector<std::uint64_t> ma;
  std::vector<std::uint64_t> mb;
  for (const std::uint64_t p : kPrimes) {
    if (!reduce_mod(as, p, ma) || !reduce_mod(bs, p, mb)) continue;
    if (gcd_degree_mod(ma, mb, p) == 0) return t_k;
    break;
  }
  return shift_up(euclid_gcd(as, bs), k);
}

BigRatPoly squarefree_part(const BigRatPoly& p) {
  if (p.degree() <= 0) return p.monic();
  const BigRatPoly g = gcd(p, p.derivative());
  if (g.degree() == 0) return p.monic();
  return divmod(p, g).quotient.monic();
}

bool is_squarefree(const BigRatPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

// ---------------------------------------------------------------------------
// RationalFuncExact

RationalFuncExact::RationalFuncExact(BigRatPoly num, BigRatPoly den) {
  if (den.is_zero()) throw DomainError("RationalFuncExact: zero denominator");
  if (num.is_zero()) {
    den_ = BigRatPoly::constant(1);
    return;
  }
  const BigRatPoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = divmod(num, g).quotient;
    den = divmod(den, g).quotient;
  }
  const mpq_class inv = 1 / den.leading();
  num_ = inv * num;
  den_ = inv * den;
}

RationalFuncExact RationalFuncExact::identity() {
  return RationalFuncExact(BigRatPoly::monomial(1, 1), BigRatPoly::constant(1));
}

RationalFuncExact operator-(const RationalFuncExact& a, const RationalFuncExact& b) {
  return RationalFuncExact(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

std::string RationalFuncExact::to_text() const {
  return "numerator\n" + num_.to_text() + "denominator\n" + den_.to_text();
}

RationalFuncExact q_next(const RationalFuncExact& q_prev) {
  const int predicted = 1 + 4 * std::max(q_prev.num().degree(), q_prev.den().degree());
  if (predicted > kMaxComposedDegree) {
    throw CapacityError("q_next: composed numerator degree " + std::to_string(predicted) +
                        " exceeds the cap " + std::to_string(kMaxComposedDegree));
  }
  const BigRatPoly& n = q_prev.num();
  const BigRatPoly& d = q_prev.den();
  const BigRatPoly n2 = n * n;
  const BigRatPoly d2 = d * d;
  const BigRatPoly a = n2 - mpq_class(2) * d2;
  // -(t/4) (N^2 - 2 D^2)^2 / (D^2 (N^2 - D^2))
  BigRatPoly num = BigRatPoly::monomial(mpq_class(-1, 4), 1) * (a * a);
  BigRatPoly den = d2 * (n2 - d2);
  return RationalFuncExact(std::move(num), std::move(den));
}

const RationalFuncExact& q_exact(int n, int max_level) {
  if (n < 0) throw DomainError("q_exact: n must be non-negative");
  if (n > max_level) {
    throw CapacityError("q_exact: n = " + std::to_string(n) + " exceeds the level cap " +
                        std::to_string(max_level));
  }
  static std::mutex mu;
  // unique_ptr keeps references stable while the cache grows.
  static std::vector<std::unique_ptr<RationalFuncExact>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.empty()) cache.push_back(std::make_unique<RationalFuncExact>(RationalFuncExact::identity()));
  while (static_cast<int>(cache.size()) <= n) {
    cache.push_back(std::make_unique<RationalFuncExact>(q_next(*cache.back())));
  }
  return *cache[static_cast<std::size_t>(n)];
}

int degree(const RationalFuncExact& q) { return std::max(q.num().degree(), q.den().degree()); }

mpq_class leading_coefficient(const RationalFuncExact& q) {
  if (q.num().is_zero()) return 0;
  return q.num().leading() / q.den().leading();
}

mpq_class asymptotic_coefficient(int n) {
  if (n < 0 || n > 20) throw DomainError("asymptotic_coefficient: n must be in 0..20");
  mpq_class a = 1;
  for (int k = 0; k < n; ++k) a = -a * a / 4;
  return a;
}

BigRatPoly pole_polynomial(int n) {
  if (n < 1) throw DomainError("pole_polynomial: n must be >= 1");
  const RationalFuncExact& q = q_exact(n - 1);
  return squarefree_part(q.num() * q.num() - q.den() * q.den());
}

BigRatPoly center_polynomial(int n) {
  if (n < 2) throw DomainError("center_polynomial: n must be >= 2");
  const RationalFuncExact& q = q_exact(n - 2);
  return squarefree_part(q.num() * q.num() - mpq_class(2) * (q.den() * q.den()));
}

BigRatPoly misiurewicz_polynomial(int j, int k) {
  if (j < 0 || j >= k) throw DomainError("misiurewicz_polynomial: need 0 <= j < k");
  const RationalFuncExact diff = q_exact(j) - q_exact(k);
  return squarefree_part(diff.num());
}

ExactValue eval_exact(const RationalFuncExact& q, const mpq_class& t) {
  const mpq_class d = q.den().eval(t);
  if (sgn(d) == 0) return PoleMarker{};
  return mpq_class(q.num().eval(t) / d);
}

}  // namespace fdyn
