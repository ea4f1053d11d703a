#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "turnover/errors.hpp"

namespace turnover {

// Exact rational arithmetic on int64 numerator/denominator.  All discrete
// invariants (chi, e, tau, e/chi) live here so that no floating-point noise
// enters them.  Denominators stay tiny (products of cone orders <= 3*20^3),
// but intermediates go through __int128 and overflow is checked anyway.
class Rational {
 public:
  constexpr Rational() : p_(0), q_(1) {}
  constexpr Rational(std::int64_t integer) : p_(integer), q_(1) {}
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  static Rational from_i128(__int128 num, __int128 den) {
    if (den == 0) raise(Err::DegenerateInput, "rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    __int128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      raise(Err::NumericalInstability, "rational overflow");
    Rational r;
    r.p_ = static_cast<std::int64_t>(num);
    r.q_ = static_cast<std::int64_t>(den);
    return r;
  }

  std::int64_t num() const { return p_; }
  std::int64_t den() const { return q_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(i128(a.p_) * b.q_ + i128(b.p_) * a.q_, i128(a.q_) * b.q_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(i128(a.p_) * b.q_ - i128(b.p_) * a.q_, i128(a.q_) * b.q_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.p_) * b.p_, i128(a.q_) * b.q_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.p_ == 0) raise(Err::DegenerateInput, "rational division by zero");
    return from_i128(i128(a.p_) * b.q_, i128(a.q_) * b.p_);
  }
  Rational operator-() const { return from_i128(-i128(p_), q_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.p_) * b.q_ < i128(b.p_) * a.q_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return static_cast<double>(p_) / static_cast<double>(q_); }

  bool is_integer() const { return q_ == 1; }

  // Nearest integer; exact halves round away from zero (only used on values
  // that are provably not near half-integers when consistency holds).
  std::int64_t round_nearest() const {
    const std::int64_t quot = p_ / q_, rem = p_ % q_;
    const std::int64_t mag = rem < 0 ? -rem : rem;
    if (2 * mag >= q_) return quot + (p_ >= 0 ? 1 : -1);
    return quot;
  }

  // Reduce modulo 2 into the half-open interval (-1, 1].
  Rational mod2_symmetric() const {
    std::int64_t two_q = 2 * q_;
    std::int64_t r = ((p_ % two_q) + two_q) % two_q;  // in [0, 2q)
    if (r > q_) r -= two_q;                           // in (-q, q]
    return Rational(r, q_);
  }

  // Serialized as exact "p/q"; integers still carry the "/1" so that the
  // column type is uniform and the parser is trivial.
  std::string str() const {
    return std::to_string(p_) + "/" + std::to_string(q_);
  }

  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s), 1);
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }
  void assign(std::int64_t num, std::int64_t den) {
    *this = from_i128(num, den);
  }

  std::int64_t p_;
  std::int64_t q_;
};

}  // namespace turnover
