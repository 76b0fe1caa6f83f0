#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bellforge {

/// Exact rational number on 64-bit numerator/denominator.
///
/// Always stored normalized: denominator > 0, gcd(|num|, den) == 1.
/// Intermediate products use 128-bit arithmetic; results that do not fit
/// back into 64 bits throw std::overflow_error. The coefficient and
/// probability arithmetic in this library stays far below that limit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

  /// Renders "num/den", or just "num" when the denominator is 1.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "a/b", plain integers, and decimal literals such as "0.9" or "-3.25".
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 num = w(a.num_) * b.den_ + w(b.num_) * a.den_;
    __int128 den = w(a.den_) * b.den_;
    return from_wide(num, den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 num = w(a.num_) * b.den_ - w(b.num_) * a.den_;
    __int128 den = w(a.den_) * b.den_;
    return from_wide(num, den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(w(a.num_) * b.num_, w(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(w(a.num_) * b.den_, w(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return w(a.num_) * b.den_ < w(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  static __int128 w(std::int64_t v) { return static_cast<__int128>(v); }

  static std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
  }

  static Rational from_wide(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 g = gcd_wide(a, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    Rational r;
    r.num_ = narrow(num);
    r.den_ = narrow(den);
    return r;
  }

  static __int128 gcd_wide(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    Rational r = from_wide(num_, den_);
    num_ = r.num_;
    den_ = r.den_;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("cannot parse rational: '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  auto slash = text.find('/');
  auto to_int = [&](std::string_view s) {
    if (s.empty()) fail();
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(std::string(s), &pos);
    } catch (const std::exception&) {
      fail();
    }
    if (pos != s.size()) fail();
    return static_cast<std::int64_t>(v);
  };
  if (slash != std::string_view::npos) {
    return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(to_int(text));
  std::string_view head = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 18) fail();
  bool negative = !head.empty() && head.front() == '-';
  std::int64_t whole = head.empty() || head == "-" ? 0 : to_int(head);
  std::int64_t den = 1;
  for (char c : frac) {
    if (c < '0' || c > '9') fail();
    den *= 10;
  }
  std::int64_t frac_num = to_int(frac);
  Rational magnitude = Rational(whole < 0 ? -whole : whole) + Rational(frac_num, den);
  return negative || whole < 0 ? -magnitude : magnitude;
}

/// Binomial coefficient, exact; used for the subtraction weights of the families.
inline std::int64_t choose(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

}  // namespace bellforge
