#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qbsep {

/// Exact rational number with plain value semantics.
///
/// Thin wrapper over GMP's mpq_class that keeps expression templates out of
/// user code, so `auto` and generic algorithms behave as they do for double.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  /// Parses "12", "-3.25", "1e-3", "2.5E2" or "7/4" with no rounding.
  /// Throws std::invalid_argument on anything else.
  static Rational parse(std::string_view text);

  /// The exact binary value of `value`. Throws on NaN/inf.
  static Rational from_double(double value);

  double to_double() const;
  bool is_integer() const;
  int sign() const;

  /// Decimal expansion when the denominator has only factors 2 and 5.
  /// Returns an empty string for non-terminating values.
  std::string to_decimal_string() const;
  /// Canonical "p" or "p/q" form.
  std::string to_string() const;

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

Rational abs(const Rational& value);

}  // namespace qbsep
