#include "weaktile/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace weaktile {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(n, d);
}

Rational Rational::from_wide(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n == 0) d = 1;
  if (!fits64(n) || !fits64(d)) throw OverflowError("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("rational overflow");
  }
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    std::int64_t s;
    if (__builtin_add_overflow(num_, o.num_, &s)) throw OverflowError("rational overflow");
    num_ = s;
    return *this;
  }
  if (den_ == o.den_) {
    *this = from_wide(static_cast<i128>(num_) + o.num_, den_);
    return *this;
  }
  *this = from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                    static_cast<i128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    std::int64_t s;
    if (__builtin_mul_overflow(num_, o.num_, &s)) throw OverflowError("rational overflow");
    num_ = s;
    return *this;
  }
  *this = from_wide(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  *this = from_wide(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 l = static_cast<i128>(a.num_) * b.den_;
  i128 r = static_cast<i128>(b.num_) * a.den_;
  return l <=> r;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational Rational::approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize non-finite value");
  if (max_den < 1) throw std::invalid_argument("max_den must be positive");
  // Continued-fraction convergents p_k/q_k; the best bounded approximation is
  // the last convergent or the largest admissible semiconvergent.
  long double v = x;
  i128 p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  long double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    long double a_ld = std::floor(frac);
    if (std::fabs(a_ld) > 9.0e18L) break;
    auto a = static_cast<i128>(a_ld);
    i128 p2 = a * p1 + p0;
    i128 q2 = a * q1 + q0;
    if (q2 > max_den) {
      i128 k = (max_den - q0) / q1;
      i128 ps = k * p1 + p0;
      i128 qs = k * q1 + q0;
      long double e1 = std::fabs(v - static_cast<long double>(p1) / static_cast<long double>(q1));
      long double e2 = std::fabs(v - static_cast<long double>(ps) / static_cast<long double>(qs));
      if (k > 0 && e2 < e1) return from_wide(ps, qs);
      return from_wide(p1, q1);
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    long double rem = frac - a_ld;
    if (rem < 1e-18L) break;
    frac = 1.0L / rem;
  }
  return from_wide(p1, q1);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace weaktile
