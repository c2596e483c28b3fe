#include "scorelint/rational.hpp"

#include <limits>
#include <ostream>

#include "scorelint/error.hpp"

namespace scorelint {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational::Rational(int_type numerator, int_type denominator) {
  if (denominator == 0) {
    throw Error(ErrorKind::InvalidArgument, "rational with zero denominator");
  }
  *this = from_wide(numerator, denominator);
}

Rational Rational::from_wide(__int128 numerator, __int128 denominator) {
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  __int128 g = gcd_wide(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  if (numerator > kMax || numerator < -kMax || denominator > kMax) {
    throw Error(ErrorKind::IllFormedDocument, "duration arithmetic overflow");
  }
  Rational r;
  r.num_ = static_cast<int_type>(numerator);
  r.den_ = static_cast<int_type>(denominator);
  return r;
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  return *this = from_wide(static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_,
                           static_cast<__int128>(den_) * rhs.den_);
}

Rational& Rational::operator-=(const Rational& rhs) {
  return *this = from_wide(static_cast<__int128>(num_) * rhs.den_ - static_cast<__int128>(rhs.num_) * den_,
                           static_cast<__int128>(den_) * rhs.den_);
}

Rational& Rational::operator*=(const Rational& rhs) {
  return *this = from_wide(static_cast<__int128>(num_) * rhs.num_, static_cast<__int128>(den_) * rhs.den_);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) {
    throw Error(ErrorKind::InvalidArgument, "rational division by zero");
  }
  return *this = from_wide(static_cast<__int128>(num_) * rhs.den_, static_cast<__int128>(den_) * rhs.num_);
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept {
  // Both denominators are positive and below 2^63, so the cross products fit.
  __int128 l = static_cast<__int128>(lhs.num_) * rhs.den_;
  __int128 r = static_cast<__int128>(rhs.num_) * lhs.den_;
  return l <=> r;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace scorelint
