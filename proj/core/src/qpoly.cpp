#include "rainbow/qpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace rainbow {

QPoly::QPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

QPoly::QPoly(const mpz_class& c) {
  if (c != 0) c_.push_back(c);
}

QPoly::QPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(const mpz_class& c, unsigned e) {
  QPoly p;
  if (c == 0) return p;
  p.c_.assign(e + 1, 0);
  p.c_[e] = c;
  return p;
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int QPoly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(r));
}

QPoly& QPoly::operator*=(const QPoly& o) { return *this = *this * o; }

QPoly& QPoly::operator*=(const mpz_class& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QPoly QPoly::shifted(unsigned e) const {
  if (is_zero()) return {};
  std::vector<mpz_class> r(e, 0);
  r.insert(r.end(), c_.begin(), c_.end());
  return QPoly(std::move(r));
}

QPoly QPoly::unshifted(unsigned e) const {
  for (std::size_t i = 0; i < std::min<std::size_t>(e, c_.size()); ++i)
    if (c_[i] != 0) throw std::domain_error("unshifted: not divisible by q^" + std::to_string(e));
  if (e >= c_.size()) return {};
  return QPoly(std::vector<mpz_class>(c_.begin() + e, c_.end()));
}

QPoly QPoly::pow(unsigned e) const {
  QPoly r(1), b = *this;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

mpz_class QPoly::eval(const mpz_class& q) const {
  mpz_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + *it;
  return r;
}

mpq_class QPoly::eval(const mpq_class& q) const {
  mpq_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r = r * q + mpq_class(*it);
    r.canonicalize();
  }
  return r;
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int e = degree(); e >= 0; --e) {
    const mpz_class& c = c_[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str();
    os << "q";
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

QPoly QPoly::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  QPoly r;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    mpz_class c = j > i ? mpz_class(s.substr(i, j - i)) : mpz_class(1);
    i = j;
    if (i < s.size() && s[i] == '*') ++i;
    unsigned e = 0;
    if (i < s.size() && s[i] == 'q') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t k = i;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i) throw std::invalid_argument("bad exponent in '" + text + "'");
        e = static_cast<unsigned>(std::stoul(s.substr(i, k - i)));
        i = k;
      }
    } else if (j == i && i < s.size()) {
      throw std::invalid_argument("bad polynomial '" + text + "'");
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw std::invalid_argument("bad polynomial '" + text + "'");
    r += monomial(c * sign, e);
  }
  return r;
}

QRational::QRational(QPoly n, QPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw std::domain_error("QRational: zero denominator");
}

QRational operator+(const QRational& a, const QRational& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}
QRational operator-(const QRational& a, const QRational& b) {
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}
QRational operator*(const QRational& a, const QRational& b) { return {a.num * b.num, a.den * b.den}; }
QRational operator/(const QRational& a, const QRational& b) { return {a.num * b.den, a.den * b.num}; }

mpq_class QRational::eval(long q) const {
  mpq_class r(num.eval(q), den.eval(q));
  r.canonicalize();
  return r;
}

QLaurent QLaurent::monomial(const mpz_class& c, long e) {
  QLaurent r;
  if (c == 0) return r;
  r.p_ = QPoly(c);
  r.lo_ = e;
  return r;
}

void QLaurent::normalize() {
  if (p_.is_zero()) {
    lo_ = 0;
    return;
  }
  int v = p_.valuation();
  if (v > 0) {
    p_ = p_.unshifted(static_cast<unsigned>(v));
    lo_ += v;
  }
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  long lo = std::min(lo_, o.lo_);
  p_ = p_.shifted(static_cast<unsigned>(lo_ - lo)) + o.p_.shifted(static_cast<unsigned>(o.lo_ - lo));
  lo_ = lo;
  normalize();
  return *this;
}

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
  QLaurent r;
  r.p_ = a.p_ * b.p_;
  r.lo_ = r.p_.is_zero() ? 0 : a.lo_ + b.lo_;
  r.normalize();
  return r;
}

QPoly QLaurent::to_poly() const {
  if (is_zero()) return {};
  if (lo_ < 0) throw std::domain_error("QLaurent: negative power q^" + std::to_string(lo_) + " survives");
  return p_.shifted(static_cast<unsigned>(lo_));
}

QPoly qint(long n) {
  if (n < 0) throw std::invalid_argument("qint: negative argument");
  return QPoly(std::vector<mpz_class>(static_cast<std::size_t>(n), 1));
}

QPoly qfactorial(long n) {
  QPoly r(1);
  for (long i = 2; i <= n; ++i) r *= qint(i);
  return r;
}

QPoly qbinom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return {};
  if (k == 0 || k == n) return QPoly(1);
  static std::mutex mu;
  static std::map<std::pair<long, long>, QPoly> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({n, k});
    if (it != memo.end()) return it->second;
  }
  QPoly r = qbinom(n - 1, k - 1) + qbinom(n - 1, k).shifted(static_cast<unsigned>(k));
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(n, k), r);
  return r;
}

QPoly qmultinom(const std::vector<long>& parts) {
  for (long k : parts)
    if (k < 0) return {};
  // Product of binomials keeps everything division-free.
  QPoly r(1);
  long acc = 0;
  for (long k : parts) {
    acc += k;
    r *= qbinom(acc, k);
  }
  return r;
}

QPoly qphi(long n, long k) {
  if (k < 0 || k > n) throw std::invalid_argument("qphi: need 0 <= k <= n");
  QPoly r(1);
  for (long j = 0; j < k; ++j) r *= QPoly::q_pow(static_cast<unsigned>(n - j)) - QPoly(1);
  return r;
}

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::vector<mpq_class> interpolate_rational(const std::vector<std::pair<mpz_class, mpq_class>>& points) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i].first == points[j].first)
        throw InterpolationError(InterpolationError::Kind::DuplicateAbscissa, "interpolate: repeated abscissa");
  // Newton divided differences.
  std::vector<mpq_class> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = points[i].second;
  for (std::size_t lvl = 1; lvl < n; ++lvl)
    for (std::size_t i = n - 1; i >= lvl; --i) {
      d[i] = (d[i] - d[i - 1]) / mpq_class(points[i].first - points[i - lvl].first);
      if (i == lvl) break;
    }
  // Horner expansion into the monomial basis.
  std::vector<mpq_class> c(1, d[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    std::vector<mpq_class> nc(c.size() + 1, 0);
    const mpq_class x(points[i].first);
    for (std::size_t j = 0; j < c.size(); ++j) {
      nc[j + 1] += c[j];
      nc[j] -= c[j] * x;
    }
    nc[0] += d[i];
    c = std::move(nc);
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

QPoly interpolate(const std::vector<std::pair<mpz_class, mpq_class>>& points, bool require_integer) {
  auto c = interpolate_rational(points);
  std::vector<mpz_class> z(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i].canonicalize();
    if (c[i].get_den() != 1) {
      if (require_integer)
        throw InterpolationError(InterpolationError::Kind::NonIntegral,
                                 "interpolate: coefficient of q^" + std::to_string(i) + " is " + c[i].get_str());
      z[i] = c[i].get_num() / c[i].get_den();
    } else {
      z[i] = c[i].get_num();
    }
  }
  return QPoly(std::move(z));
}

std::vector<long> sample_primes(std::size_t count) {
  std::vector<long> ps;
  for (long x = 2; ps.size() < count; ++x) {
    bool prime = true;
    for (long p : ps) {
      if (p * p > x) break;
      if (x % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) ps.push_back(x);
  }
  return ps;
}

}  // namespace rainbow
