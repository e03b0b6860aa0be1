#pragma once

// Certified natural logarithms. A positive rational is split as 2^e * u with
// u in [1, 2), log u = 2 atanh((u - 1)/(u + 1)) is summed in binary fixed
// point with floors for the lower sum and ceilings plus a geometric remainder
// for the upper sum, and log 2 = 2 atanh(1/3) the same way. The result is an
// exact rational interval; doubles are derived with outward rounding.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include "besicovitch/exact.hpp"

namespace besicovitch {

struct Enclosure {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  double lo_d() const { return std::nextafter(lo.get_d(), -std::numeric_limits<double>::infinity()); }
  double hi_d() const { return std::nextafter(hi.get_d(), std::numeric_limits<double>::infinity()); }
  double mid_d() const { return mid().get_d(); }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains(double v) const { return lo_d() <= v && v <= hi_d(); }
  /// Every point above / below the other interval.
  bool certainly_greater(const Rational& v) const { return lo > v; }
  bool certainly_less(const Rational& v) const { return hi < v; }

  static Enclosure exact(const Rational& v) { return {v, v}; }
};

inline Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Enclosure operator-(const Enclosure& a) { return {-a.hi, -a.lo}; }

inline Enclosure operator*(const Rational& k, const Enclosure& a) {
  if (k >= 0) return {k * a.lo, k * a.hi};
  return {k * a.hi, k * a.lo};
}

inline Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Enclosure out{c[0], c[0]};
  for (const auto& v : c) {
    if (v < out.lo) out.lo = v;
    if (v > out.hi) out.hi = v;
  }
  return out;
}

/// a / b for b bounded away from zero.
inline Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (b.lo <= 0 && b.hi >= 0) throw std::domain_error("interval division by an interval containing 0");
  Enclosure inv{1 / b.hi, 1 / b.lo};
  return a * inv;
}

namespace detail {

/// Bounds on 2^P atanh(a/b) * 2^-P for 0 <= a/b <= 1/3, as fixed-point
/// integers [L, U] with L <= 2^P atanh(a/b) <= U.
inline std::pair<Integer, Integer> atanh_fixed(const Integer& a, const Integer& b, std::size_t P) {
  if (a == 0) return {0, 0};
  Integer one = ipow(Integer(2), P);
  Integer a2 = a * a;
  Integer b2 = b * b;
  Integer lo_pow = floor_div(a * one, b);
  Integer hi_pow = ceil_div(a * one, b);
  Integer lo = lo_pow;
  Integer hi = hi_pow;
  for (unsigned long k = 1;; ++k) {
    lo_pow = floor_div(lo_pow * a2, b2);
    hi_pow = ceil_div(hi_pow * a2, b2);
    Integer d = 2 * k + 1;
    lo += floor_div(lo_pow, d);
    if (hi_pow <= 1) {
      // Remainder from this term on: sum_{i >= 0} hi_pow t^(2i) / (2k + 1 + 2i)
      // < hi_pow / ((2k + 1)(1 - t^2)).
      hi += ceil_div(hi_pow * b2, d * (b2 - a2));
      break;
    }
    hi += ceil_div(hi_pow, d);
  }
  return {lo, hi};
}

inline Enclosure log2_fixed(std::size_t P) {
  auto [lo, hi] = atanh_fixed(1, 3, P);
  Integer den = ipow(Integer(2), P);
  return {make_rational(2 * lo, den), make_rational(2 * hi, den)};
}

/// log of u = num/den in [1, 2).
inline Enclosure log_unit(const Integer& num, const Integer& den, std::size_t P) {
  auto [lo, hi] = atanh_fixed(num - den, num + den, P);
  Integer scale = ipow(Integer(2), P);
  return {make_rational(2 * lo, scale), make_rational(2 * hi, scale)};
}

inline Enclosure log_positive(const Rational& v, std::size_t P) {
  if (v <= 0) throw std::domain_error("log of nonpositive value " + to_string(v));
  // v = 2^e u with u in [1, 2)
  long e = static_cast<long>(bit_length(v.get_num())) - static_cast<long>(bit_length(v.get_den()));
  Integer num = v.get_num();
  Integer den = v.get_den();
  if (e > 0) den <<= static_cast<unsigned long>(e);
  if (e < 0) num <<= static_cast<unsigned long>(-e);
  if (num < den) {
    num <<= 1;
    --e;
  }
  Enclosure u = log_unit(num, den, P);
  if (e == 0) return u;
  return Rational(Integer(e)) * log2_fixed(P) + u;
}

}  // namespace detail

/// Enclosure of log v whose width is at most 2^-tolerance_bits * max(1, |log v|).
inline Enclosure log_enclosure(const Rational& v, unsigned tolerance_bits = 40) {
  std::size_t P = tolerance_bits + 16;
  for (int attempt = 0; attempt < 8; ++attempt, P *= 2) {
    Enclosure e = detail::log_positive(v, P);
    Rational scale = abs(e.lo) > 1 ? Rational(abs(e.lo)) : Rational(1);
    Rational tol = make_rational(1, ipow(Integer(2), tolerance_bits));
    if (e.width() <= tol * scale) return e;
  }
  throw std::runtime_error("log enclosure failed to reach tolerance");
}

inline Enclosure log_enclosure(const Integer& v, unsigned tolerance_bits = 40) {
  return log_enclosure(Rational(v), tolerance_bits);
}

inline std::string to_string(const Enclosure& e) {
  return "[" + to_string(e.lo) + ", " + to_string(e.hi) + "]";
}

}  // namespace besicovitch
