#include "tempoflow/rational.hpp"

#include <cctype>
#include <ostream>

namespace tempoflow {

namespace mp = boost::multiprecision;

Rational::Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw std::invalid_argument("rational with zero denominator");
  if (den < 0)
    v_ = mp::cpp_rational(-num, -den);
  else
    v_ = mp::cpp_rational(num, den);
}

Rational Rational::parse(const std::string& text) {
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_int(text)) throw std::invalid_argument("malformed rational: '" + text + "'");
    return Rational(BigInt(text));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den))
    throw std::invalid_argument("malformed rational: '" + text + "'");
  BigInt d(den);
  if (d.is_zero()) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(BigInt(num), d);
}

std::string Rational::str() const {
  std::string s = numerator().str();
  if (!is_integer()) s += "/" + denominator().str();
  return s;
}

BigInt Rational::floor() const {
  BigInt q = numerator() / denominator();
  if (numerator() < 0 && q * denominator() != numerator()) --q;
  return q;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a > b ? a : b; }
Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Capacity::Capacity(Rational v) : finite_(true), value_(std::move(v)) {
  if (value_.sign() < 0) throw std::invalid_argument("negative capacity");
}

Capacity Capacity::parse(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinite();
  return Capacity(Rational::parse(text));
}

const Rational& Capacity::finite() const {
  if (!finite_) throw std::logic_error("capacity is infinite");
  return value_;
}

std::string Capacity::str() const { return finite_ ? value_.str() : "inf"; }

Capacity Capacity::operator-(const Rational& r) const {
  if (!finite_) return infinite();
  if (value_ < r) throw std::logic_error("negative residual capacity");
  return Capacity(value_ - r);
}

Capacity min(const Capacity& a, const Capacity& b) {
  if (a.is_infinite()) return b;
  if (b.is_infinite()) return a;
  return a.value_ < b.value_ ? a : b;
}

bool operator==(const Capacity& a, const Capacity& b) {
  if (a.finite_ != b.finite_) return false;
  return !a.finite_ || a.value_ == b.value_;
}

bool operator<(const Capacity& a, const Capacity& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  return a.value_ < b.value_;
}

}  // namespace tempoflow
