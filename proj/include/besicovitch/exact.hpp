#pragma once

// Exact integer and rational arithmetic on top of GMP, plus the small set of
// helpers every other module leans on (floor division, fractional parts,
// "num/den" formatting and parsing).

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace besicovitch {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// q * k for k >= 0, cancelling only the common factor of k and q's
// denominator (q is canonical, so that is all there is).
inline Rational scale(const Rational& q, const Integer& k) {
  if (k == 0) return Rational(0);
  Integer g;
  mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), q.get_den().get_mpz_t());
  Rational out;
  out.get_num() = q.get_num() * (k / g);
  out.get_den() = q.get_den() / g;
  return out;
}

inline int sign(const Integer& v) { return sgn(v); }
inline int sign(const Rational& v) { return sgn(v); }

// floor(a / b) for b > 0
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Nonnegative residue a mod b for b > 0.
inline Integer mod_floor(const Integer& a, const Integer& b) {
  Integer out;
  mpz_fdiv_r(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline Integer ifloor(const Rational& r) {
  return floor_div(r.get_num(), r.get_den());
}

inline Integer iceil(const Rational& r) {
  return ceil_div(r.get_num(), r.get_den());
}

// r - floor(r), always in [0, 1).
inline Rational frac(const Rational& r) {
  return make_rational(mod_floor(r.get_num(), r.get_den()), r.get_den());
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline std::size_t bit_length(const Integer& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline std::string to_string(const Integer& v) { return v.get_str(10); }

// Rationals always serialize as "numerator/denominator", even when the
// denominator is one.
inline std::string to_string(const Rational& v) {
  return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

// Accepts "p/q", a bare integer "p" or a terminating decimal "-1.25" (read
// exactly).
inline Rational parse_rational(std::string_view text) {
  auto dot = text.find('.');
  if (dot != std::string_view::npos && text.find('/') == std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string_view fraction = text.substr(dot + 1);
    if (fraction.empty() || fraction[0] == '-' || fraction[0] == '+') {
      throw std::invalid_argument("bad decimal literal: " + std::string(text));
    }
    digits += fraction;
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    return make_rational(parse_integer(digits), ipow(Integer(10), fraction.size()));
  }
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in " + std::string(text));
  return make_rational(num, den);
}

inline double to_double(const Rational& r) { return r.get_d(); }

// Natural log as a double, valid far beyond the double range of v itself.
// Diagnostics only; certified logs live in log_enclosure.hpp.
inline double approx_log(const Integer& v) {
  if (v <= 0) throw std::domain_error("log of nonpositive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace besicovitch
