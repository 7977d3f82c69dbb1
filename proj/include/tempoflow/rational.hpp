#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace tempoflow {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; arithmetic never rounds.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                // NOLINT(google-explicit-constructor)
  Rational(long long n) : v_(n) {}          // NOLINT(google-explicit-constructor)
  Rational(const BigInt& n) : v_(n) {}      // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "p", "-p", or "p/q" (q > 0 after normalization). Throws
  /// std::invalid_argument on malformed input.
  static Rational parse(const std::string& text);

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }
  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_.sign(); }

  /// Canonical text form: "p" when integral, "p/q" otherwise.
  std::string str() const;

  /// Largest integer <= value.
  BigInt floor() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  boost::multiprecision::cpp_rational v_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
Rational abs(const Rational& r);

/// Arc capacity: a non-negative rational or the distinct symbol "infinite".
/// Infinite compares greater than every finite value.
class Capacity {
 public:
  Capacity() : finite_(true), value_(0) {}
  Capacity(Rational v);                     // NOLINT(google-explicit-constructor)
  static Capacity infinite() { Capacity c; c.finite_ = false; return c; }

  /// Parses a rational literal or "inf".
  static Capacity parse(const std::string& text);

  bool is_infinite() const { return !finite_; }
  bool is_finite() const { return finite_; }
  /// Finite value; throws std::logic_error when infinite.
  const Rational& finite() const;

  std::string str() const;

  /// Capacity minus a rational, for residual capacities. Throws
  /// std::logic_error if the result would be negative.
  Capacity operator-(const Rational& r) const;

  friend Capacity min(const Capacity& a, const Capacity& b);
  friend bool operator==(const Capacity& a, const Capacity& b);
  friend bool operator!=(const Capacity& a, const Capacity& b) { return !(a == b); }
  friend bool operator<(const Capacity& a, const Capacity& b);

  bool exceeds(const Rational& r) const { return !finite_ || value_ > r; }

 private:
  bool finite_;
  Rational value_;
};

}  // namespace tempoflow
