#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace scorelint {

/**
 * Exact fraction, always stored in lowest terms with a positive denominator.
 *
 * All duration arithmetic goes through this type. Intermediate products are
 * computed in 128 bits; a result that does not fit back into 64 bits throws
 * Error(IllFormedDocument), since only absurd <divisions> values get there.
 */
class Rational {
 public:
  using int_type = std::int64_t;

  constexpr Rational() noexcept = default;
  constexpr Rational(int_type value) noexcept : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int_type numerator, int_type denominator);

  int_type numerator() const noexcept { return num_; }
  int_type denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  bool is_positive() const noexcept { return num_ > 0; }
  bool is_negative() const noexcept { return num_ < 0; }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational&, const Rational&) noexcept = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept;

  /// "2", "17/240", "-1/2".
  std::string to_string() const;

 private:
  static Rational from_wide(__int128 numerator, __int128 denominator);

  int_type num_ = 0;
  int_type den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace scorelint
