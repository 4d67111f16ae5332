#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>

#include "qbsep/rational.hpp"

namespace qbsep {

/// Absolute slack on weight comparisons in floating mode, scaled up by the
/// tree's total weight once that exceeds 1.
inline constexpr double kFloatTolerance = 1e-9;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static double slack(double scale) { return kFloatTolerance * std::max(1.0, std::abs(scale)); }
  static double from_rational(const Rational& r) { return r.to_double(); }
  static double from_int(std::int64_t v) { return static_cast<double>(v); }
  static double to_double(double v) { return v; }
  static bool is_finite(double v) { return std::isfinite(v); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
  static Rational slack(const Rational&) { return Rational(0); }
  static Rational from_rational(const Rational& r) { return r; }
  static Rational from_int(std::int64_t v) { return Rational(v); }
  static double to_double(const Rational& v) { return v.to_double(); }
  static bool is_finite(const Rational&) { return true; }
};

/// Weight scalar accepted by the library: double or Rational.
template <class S>
concept Scalar = requires { ScalarTraits<S>::exact; };

/// a <= b up to the mode's tolerance at magnitude `scale`.
template <Scalar S>
bool approx_le(const S& a, const S& b, const S& scale) {
  return a <= b + ScalarTraits<S>::slack(scale);
}

template <Scalar S>
bool approx_ge(const S& a, const S& b, const S& scale) {
  return approx_le(b, a, scale);
}

template <Scalar S>
S ratio(std::int64_t num, std::int64_t den) {
  if constexpr (ScalarTraits<S>::exact) {
    return Rational(num, den);
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

}  // namespace qbsep
