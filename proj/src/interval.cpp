#include "narayana/interval.hpp"

#include <algorithm>

namespace narayana {

namespace {

BigInt floor_div(const BigInt& num, const BigInt& den) {
  // den > 0
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt floor_of(const Rational& x) {
  return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

BigInt ceil_of(const Rational& x) { return -floor_of(-x); }

Rational pow2(unsigned bits) { return Rational(BigInt(1) << bits); }

}  // namespace

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const Rational c[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  auto [mn, mx] = std::minmax_element(std::begin(c), std::end(c));
  return {*mn, *mx};
}

Interval operator/(const Interval& a, const Interval& b) {
  require(b.lo > 0 || b.hi < 0, "interval division by an interval containing 0");
  return a * Interval{1 / b.hi, 1 / b.lo};
}

Rational dyadic_floor(const Rational& x, unsigned bits) {
  return Rational(floor_of(x * pow2(bits))) / pow2(bits);
}

Rational dyadic_ceil(const Rational& x, unsigned bits) {
  return Rational(ceil_of(x * pow2(bits))) / pow2(bits);
}

Interval round_outward(const Interval& x, unsigned bits) {
  return {dyadic_floor(x.lo, bits), dyadic_ceil(x.hi, bits)};
}

namespace {

// Enclosure of atanh(z) = sum z^{2k+1}/(2k+1) for 0 <= z <= 1/2.
Interval atanh_enclosure(const Rational& z, unsigned bits) {
  const unsigned work = bits + 8;
  const Rational z2 = z * z;
  const Rational eps = 1 / pow2(bits + 4);
  Rational lo = 0;
  Rational hi = 0;
  // lower and upper bounds on z^{2k+1}
  Rational power_lo = z;
  Rational power_hi = z;
  for (long k = 0;; ++k) {
    lo += dyadic_floor(power_lo / (2 * k + 1), work);
    hi += dyadic_ceil(power_hi / (2 * k + 1), work);
    power_lo = dyadic_floor(power_lo * z2, 2 * work);
    power_hi = dyadic_ceil(power_hi * z2, 2 * work);
    // remaining terms sum to at most z^{2k+3} / ((2k+3)(1 - z^2))
    const Rational tail = power_hi / ((2 * k + 3) * (1 - z2));
    if (tail < eps) {
      hi += dyadic_ceil(tail, work);
      break;
    }
  }
  return {lo, hi};
}

// ln 2 = 2 atanh(1/3)
Interval ln2_enclosure(unsigned bits) {
  Interval a = atanh_enclosure(Rational(1, 3), bits + 4);
  return {2 * a.lo, 2 * a.hi};
}

// Enclosure of ln x for a single positive rational x.
Interval log_point(const Rational& x, unsigned bits) {
  require(x > 0, "log of a nonpositive number");
  // x = 2^e * m, m in [1, 2)
  long e = 0;
  Rational m = x;
  while (m >= 2) {
    m /= 2;
    ++e;
  }
  while (m < 1) {
    m *= 2;
    --e;
  }
  // m in [1,2): z = (m-1)/(m+1) in [0, 1/3)
  Interval lm = atanh_enclosure((m - 1) / (m + 1), bits + 4);
  lm = {2 * lm.lo, 2 * lm.hi};
  if (e == 0) return lm;
  const Interval l2 = ln2_enclosure(bits + 8);
  const Interval scaled = Interval{Rational(e), Rational(e)} * l2;
  return lm + scaled;
}

}  // namespace

Interval log_enclosure(const Interval& x, unsigned bits) {
  require(x.lo > 0 && x.lo <= x.hi, "log_enclosure requires 0 < lo <= hi");
  return {log_point(x.lo, bits).lo, log_point(x.hi, bits).hi};
}

namespace {

std::string format_scaled(const BigInt& scaled, int digits) {
  const bool neg = scaled < 0;
  std::string s = (neg ? BigInt(-scaled) : scaled).str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return (neg ? "-" : "") + s;
}

BigInt pow10(int digits) {
  BigInt p = 1;
  for (int i = 0; i < digits; ++i) p *= 10;
  return p;
}

}  // namespace

std::string decimal_floor(const Rational& x, int digits) {
  return format_scaled(floor_of(x * Rational(pow10(digits))), digits);
}

std::string decimal_ceil(const Rational& x, int digits) {
  return format_scaled(ceil_of(x * Rational(pow10(digits))), digits);
}

}  // namespace narayana
