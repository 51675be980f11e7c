#pragma once

#include <string>

#include "narayana/bigint.hpp"

namespace narayana {

/// Closed interval with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Requires 0 outside b.
Interval operator/(const Interval& a, const Interval& b);

/// Largest multiple of 2^-bits not above x (floor) / not below x (ceil).
Rational dyadic_floor(const Rational& x, unsigned bits);
Rational dyadic_ceil(const Rational& x, unsigned bits);
Interval round_outward(const Interval& x, unsigned bits);

/// Enclosure of ln over [x.lo, x.hi], x.lo > 0, with endpoint error below
/// about 2^-bits.
Interval log_enclosure(const Interval& x, unsigned bits);

/// Decimal expansion of x truncated toward -inf (floor) or +inf (ceil) at
/// `digits` fractional digits.
std::string decimal_floor(const Rational& x, int digits);
std::string decimal_ceil(const Rational& x, int digits);

}  // namespace narayana
