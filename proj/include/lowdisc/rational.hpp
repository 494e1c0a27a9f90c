#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "lowdisc/errors.hpp"

namespace lowdisc {

/// Exact rational with 128-bit numerator and denominator, always reduced and
/// with a positive denominator. Sized for the quantities in this library
/// (counts over N times prime powers); overflow is not checked beyond that.
class Rational {
 public:
  using Int = __int128;

  constexpr Rational() = default;
  constexpr Rational(Int num) : num_(num), den_(1) {}  // NOLINT(implicit)
  Rational(Int num, Int den) : num_(num), den_(den) {
    if (den_ == 0) throw DomainError("rational with zero denominator");
    normalize();
  }

  [[nodiscard]] constexpr Int num() const { return num_; }
  [[nodiscard]] constexpr Int den() const { return den_; }
  [[nodiscard]] double to_double() const {
    return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  [[nodiscard]] Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const Int lhs = a.num_ * b.den_;
    const Int rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  [[nodiscard]] std::string to_string() const {
    return int_to_string(num_) + (den_ == 1 ? std::string() : "/" + int_to_string(den_));
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const Int t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static std::string int_to_string(Int v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    std::string s;
    while (v != 0) {
      const int digit = static_cast<int>(v % 10);
      s.insert(s.begin(), static_cast<char>('0' + (digit < 0 ? -digit : digit)));
      v /= 10;
    }
    return neg ? "-" + s : s;
  }
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const Int g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace lowdisc
