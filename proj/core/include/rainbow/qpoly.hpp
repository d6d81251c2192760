#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

/// Integer polynomial in the formal variable q. coeffs()[i] multiplies q^i.
/// Canonical form: no trailing zeros; zero is the empty sequence.
class QPoly {
 public:
  QPoly() = default;
  QPoly(long c);  // NOLINT: constants convert implicitly
  explicit QPoly(const mpz_class& c);
  explicit QPoly(std::vector<mpz_class> coeffs);

  static QPoly monomial(const mpz_class& c, unsigned e);
  static QPoly q_pow(unsigned e) { return monomial(1, e); }
  static QPoly q() { return q_pow(1); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
  /// Smallest exponent with nonzero coefficient; -1 for zero.
  int valuation() const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  QPoly& operator*=(const mpz_class& s);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const mpz_class& s) { return a *= s; }
  friend QPoly operator*(QPoly a, long s) { return a *= mpz_class(s); }
  QPoly operator-() const;
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  /// Multiplies by q^e.
  QPoly shifted(unsigned e) const;
  /// Divides by q^e; throws std::domain_error if some coefficient below q^e is nonzero.
  QPoly unshifted(unsigned e) const;
  QPoly pow(unsigned e) const;

  mpz_class eval(const mpz_class& q) const;
  mpq_class eval(const mpq_class& q) const;
  mpz_class eval(long q) const { return eval(mpz_class(q)); }

  /// Sparse descending form, e.g. "q^5 - q^3 - q^2 + 1".
  std::string to_string() const;
  /// Inverse of to_string; accepts any sum of terms c*q^e with integer c.
  static QPoly parse(const std::string& text);

 private:
  void trim();
  std::vector<mpz_class> c_;
};

/// Quotient of two polynomials. Reduction is lazy: only equality compares.
struct QRational {
  QPoly num;
  QPoly den{1};

  QRational() = default;
  QRational(QPoly n) : num(std::move(n)) {}  // NOLINT
  QRational(QPoly n, QPoly d);

  friend QRational operator+(const QRational& a, const QRational& b);
  friend QRational operator-(const QRational& a, const QRational& b);
  friend QRational operator*(const QRational& a, const QRational& b);
  friend QRational operator/(const QRational& a, const QRational& b);
  friend bool operator==(const QRational& a, const QRational& b) {
    return a.num * b.den == b.num * a.den;
  }
  mpq_class eval(long q) const;
};

/// q^{lo} * poly with possibly negative lo. Used to accumulate closed forms whose
/// individual terms carry negative powers of q that cancel in the total.
class QLaurent {
 public:
  QLaurent() = default;
  QLaurent(const QPoly& p) : p_(p) { normalize(); }  // NOLINT
  static QLaurent monomial(const mpz_class& c, long e);

  QLaurent& operator+=(const QLaurent& o);
  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
  bool is_zero() const { return p_.is_zero(); }
  long low() const { return lo_; }
  /// Throws std::domain_error when a negative power survives.
  QPoly to_poly() const;

 private:
  void normalize();
  long lo_ = 0;
  QPoly p_;
};

QPoly qint(long n);
QPoly qfactorial(long n);
/// Gaussian binomial by memoized Pascal recurrence; 0 outside 0 <= k <= n.
QPoly qbinom(long n, long k);
/// q-multinomial [n]! / prod [k_i]! with n = sum k_i; 0 if some k_i < 0.
QPoly qmultinom(const std::vector<long>& parts);
/// phi^n_k = prod_{j<k} (q^{n-j} - 1). Throws std::invalid_argument for k > n or k < 0.
QPoly qphi(long n, long k);
/// Ordinary binomial coefficient, 0 outside range.
mpz_class binomial(long n, long k);
inline long choose2(long x) { return x >= 2 ? x * (x - 1) / 2 : 0; }

class InterpolationError : public std::runtime_error {
 public:
  enum class Kind { DuplicateAbscissa, NonIntegral };
  InterpolationError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

/// Exact Newton interpolation. With require_integer, a non-integral coefficient
/// raises InterpolationError{NonIntegral}.
QPoly interpolate(const std::vector<std::pair<mpz_class, mpq_class>>& points, bool require_integer = true);
/// Rational-coefficient variant (coefficients little-endian).
std::vector<mpq_class> interpolate_rational(const std::vector<std::pair<mpz_class, mpq_class>>& points);

/// The primes 2, 3, 5, ... (first count of them).
std::vector<long> sample_primes(std::size_t count);

}  // namespace rainbow
