#pragma once

// Exact evaluation of the level profiles f_n (trapezoid bumps, "main") and
// g_n (tents), the truncated cocycle phi = sum_l (f_l(. + alpha) - f_l), and
// its ergodic sums, either telescoped or summed along the orbit.
//
// alpha is replaced everywhere by one deep convergent alpha_hat = p_N/q_N, so
// every identity below is an exact rational identity. The price is tracked as
// an explicit budget: Lambda_l |m| |alpha - alpha_hat| per level, plus the
// truncation tail sum_{l > N_levels} |m| / l^2 < |m| / N_levels.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "besicovitch/cf_engine.hpp"
#include "besicovitch/exact.hpp"
#include "besicovitch/params.hpp"

namespace besicovitch {

/// One level profile: even, continuous, piecewise linear, period 1/cells.
///
/// main: 0 on [0, P/12], slope Lambda up to 5P/12, plateau Lambda P/3 up to
///       7P/12, slope -Lambda down to 11P/12, 0 up to P.
/// tent: slope Lambda up to P/2, then back down to 0 at P.
class LevelShape {
 public:
  LevelShape(const LevelParams& level, Variant variant)
      : variant_(variant),
        cells_(level.cells()),
        rise_num_(level.q_next),
        rise_den_(level.A * Integer(level.n * level.n)),
        lambda_(level.lambda()) {}

  Variant variant() const { return variant_; }
  const Integer& cells() const { return cells_; }
  Rational period() const { return make_rational(1, cells_); }
  const Rational& lipschitz() const { return lambda_; }
  Rational rise() const { return make_rational(rise_num_, rise_den_); }
  Rational peak() const { return variant_ == Variant::main ? rise() / 3 : rise() / 2; }

  /// Value at x = num/den, den > 0. Only num * cells mod den matters.
  Rational value(const Integer& num, const Integer& den) const {
    return make_rational(scaled_value(mod_floor(num * cells_, den), den), value_denominator(den));
  }

  /// With r = num * cells mod den, the value at num/den equals
  /// scaled_value(r, den) / value_denominator(den).
  Integer scaled_value(const Integer& r, const Integer& den) const {
    Integer folded = den - r;
    if (r < folded) folded = r;
    if (variant_ == Variant::tent) return rise_num_ * folded;
    Integer twelve = 12 * folded;
    if (twelve <= den) return 0;
    if (twelve <= 5 * den) return rise_num_ * (twelve - den);
    return 4 * rise_num_ * den;
  }

  Integer value_denominator(const Integer& den) const {
    return variant_ == Variant::tent ? Integer(rise_den_ * den) : Integer(12 * rise_den_ * den);
  }

  Rational value(const Rational& x) const { return value(x.get_num(), x.get_den()); }

  /// Breakpoints (position, value) on [0, P].
  std::vector<std::pair<Rational, Rational>> breakpoints() const {
    Rational P = period();
    if (variant_ == Variant::tent) {
      return {{0, 0}, {P / 2, value(P / 2)}, {P, 0}};
    }
    std::vector<std::pair<Rational, Rational>> out;
    for (int k : {0, 1, 5, 7, 11, 12}) {
      Rational at = P * make_rational(k, 12);
      out.emplace_back(at, value(at));
    }
    return out;
  }

 private:
  Variant variant_;
  Integer cells_;
  Integer rise_num_;
  Integer rise_den_;
  Rational lambda_;
};

inline Rational eval_level(const LevelParams& level, Variant variant, const Rational& x) {
  return LevelShape(level, variant).value(x);
}

/// f_l(x + shift) - f_l(x).
inline Rational term(const LevelParams& level, Variant variant, const Rational& x,
                     const Rational& shift) {
  LevelShape s(level, variant);
  return s.value(x + shift) - s.value(x);
}

/// Distance from s to the nearest multiple of `period`.
inline Rational lattice_distance(const Rational& s, const Rational& period) {
  Rational u = frac(s / period);
  Rational v = 1 - u;
  return (u < v ? u : v) * period;
}

struct CocycleOptions {
  /// Levels summed; defaults to n_max + 3.
  std::optional<std::size_t> truncation;
  /// Convergent index N with alpha_hat = p_N/q_N; chosen automatically if unset.
  std::optional<std::size_t> alpha_depth;
  /// q_N must exceed guard * max_l Lambda_l.
  Integer guard = 1000000;
};

class CocycleSpec {
 public:
  CocycleSpec(const Profile& profile, const CocycleOptions& opts = {}) {
    truncation_ = opts.truncation.value_or(profile.n_max + 3);
    profile_ = extend_profile(profile, std::max(truncation_, profile.n_max));
    guard_ = opts.guard;
    for (std::size_t l = 1; l <= truncation_; ++l) {
      shapes_.emplace_back(profile_.level(l), profile_.variant);
      if (l == 1 || shapes_.back().lipschitz() > max_lambda_) max_lambda_ = shapes_.back().lipschitz();
      lambda_sum_ += shapes_.back().lipschitz();
    }
    std::size_t min_depth = profile_.levels.empty() ? 2 : profile_.levels.back().k + 2;
    ConvergentSequence cf(profile_.alpha, min_depth + 8);
    std::size_t depth = opts.alpha_depth.value_or(0);
    if (depth == 0) {
      depth = min_depth;
      for (;; ++depth) {
        cf.extend_to(depth + 1);
        if (Rational(cf.q(depth)) > guard_ * max_lambda_) break;
      }
    } else {
      cf.extend_to(depth + 1);
      if (!(Rational(cf.q(depth)) > guard_ * max_lambda_)) {
        throw std::invalid_argument("alpha depth " + std::to_string(depth) +
                                    " violates the guard q_N > guard * max Lambda");
      }
    }
    alpha_depth_ = depth;
    alpha_hat_ = make_rational(cf.p(depth), cf.q(depth));
    alpha_error_ = make_rational(1, cf.q(depth) * cf.q(depth + 1));
    bracket_ = alpha_bracket(cf, depth);
  }

  const Profile& profile() const { return profile_; }
  Variant variant() const { return profile_.variant; }
  std::size_t truncation() const { return truncation_; }
  std::size_t alpha_depth() const { return alpha_depth_; }
  const Rational& alpha_hat() const { return alpha_hat_; }
  /// Strict upper bound on |alpha - alpha_hat|.
  const Rational& alpha_error() const { return alpha_error_; }
  const RationalBracket& bracket() const { return bracket_; }
  const Integer& guard() const { return guard_; }
  const LevelShape& shape(std::size_t l) const {
    if (l < 1 || l > shapes_.size()) throw std::out_of_range("level outside truncation");
    return shapes_[l - 1];
  }
  const LevelParams& level(std::size_t l) const { return profile_.level(l); }
  const Rational& lambda_sum() const { return lambda_sum_; }

  /// Bound on the change of level l's term when alpha_hat replaces alpha in an
  /// m-step shift.
  Rational substitution_error(std::size_t l, long m) const {
    return shape(l).lipschitz() * std::labs(m) * alpha_error_;
  }
  Rational substitution_budget(long m) const { return lambda_sum_ * std::labs(m) * alpha_error_; }
  /// sum_{l > N} |m| / l^2 < |m| / N (or < 2|m| when nothing is summed).
  Rational truncation_budget(long m) const {
    Rational per = truncation_ == 0 ? Rational(2) : make_rational(1, Integer(truncation_));
    return per * std::labs(m);
  }
  Rational budget(long m) const { return substitution_budget(m) + truncation_budget(m); }
  /// Tail bound reported alongside phi: sum_{l > N} 1/l^2 < 1/N.
  Rational phi_tail_bound() const { return truncation_budget(1); }

 private:
  Profile profile_;
  std::size_t truncation_ = 0;
  std::size_t alpha_depth_ = 0;
  Integer guard_;
  Rational alpha_hat_;
  Rational alpha_error_;
  RationalBracket bracket_;
  std::vector<LevelShape> shapes_;
  Rational max_lambda_;
  Rational lambda_sum_;
};

/// f_l(x + shift) - f_l(x) for level l of the cocycle.
inline Rational term(const CocycleSpec& c, std::size_t l, const Rational& x, const Rational& shift) {
  const auto& s = c.shape(l);
  return s.value(x + shift) - s.value(x);
}

inline Rational phi(const CocycleSpec& c, const Rational& x) {
  Rational sum = 0;
  Rational y = x + c.alpha_hat();
  for (std::size_t l = 1; l <= c.truncation(); ++l) {
    const auto& s = c.shape(l);
    sum += s.value(y) - s.value(x);
  }
  return sum;
}

/// Ergodic sums phi^(m)(x) at a fixed x for many m, via the telescoped form
/// sum_l f_l(x + m alpha_hat) - f_l(x). Every point x + m alpha_hat shares the
/// denominator of x times that of alpha_hat, so each level keeps its residues
/// of x and of alpha_hat and only integer arithmetic depends on m.
class ErgodicSums {
 public:
  ErgodicSums(const CocycleSpec& c, const Rational& x) : c_(&c), x_(x) {
    const Rational& a = c.alpha_hat();
    den_ = x.get_den() * a.get_den();
    Integer base_num = x.get_num() * a.get_den();
    Integer step_num = a.get_num() * x.get_den();
    common_den_ = 1;
    for (std::size_t l = 1; l <= c.truncation(); ++l) {
      const auto& s = c.shape(l);
      Level lv;
      lv.base = mod_floor(base_num * s.cells(), den_);
      lv.step = mod_floor(step_num * s.cells(), den_);
      lv.at_x = s.scaled_value(lv.base, den_);
      lv.den = s.value_denominator(den_);
      mpz_lcm(common_den_.get_mpz_t(), common_den_.get_mpz_t(), lv.den.get_mpz_t());
      at_x_.push_back(make_rational(lv.at_x, lv.den));
      levels_.push_back(std::move(lv));
    }
    for (auto& lv : levels_) lv.cofactor = common_den_ / lv.den;
  }

  const Rational& x() const { return x_; }
  const Rational& at_x(std::size_t l) const { return at_x_.at(l - 1); }
  std::size_t levels() const { return levels_.size(); }

  /// Per-level terms f_l(x + m alpha_hat) - f_l(x), l = 1..N.
  std::vector<Rational> terms(long m) const {
    std::vector<Rational> out;
    out.reserve(levels_.size());
    Integer r;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      out.push_back(make_rational(scaled_difference(i, m, r), levels_[i].den));
    }
    return out;
  }

  /// Terms f_l(x + m alpha_hat) - f_l(x) as numerators over common_den().
  std::vector<Integer> scaled_terms(long m) const {
    std::vector<Integer> out;
    out.reserve(levels_.size());
    Integer r;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      out.push_back(scaled_difference(i, m, r) * levels_[i].cofactor);
    }
    return out;
  }

  const Integer& common_den() const { return common_den_; }

  Rational total(long m) const {
    Integer sum = 0;
    Integer r;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      sum += scaled_difference(i, m, r) * levels_[i].cofactor;
    }
    return make_rational(sum, common_den_);
  }

 private:
  struct Level {
    Integer base;      // x num * cells mod den
    Integer step;      // alpha_hat num * cells mod den
    Integer at_x;      // scaled f_l(x)
    Integer den;       // value denominator
    Integer cofactor;  // common_den / den
  };

  Integer scaled_difference(std::size_t i, long m, Integer& r) const {
    const Level& lv = levels_[i];
    r = lv.step * m;
    r += lv.base;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), den_.get_mpz_t());
    return c_->shape(i + 1).scaled_value(r, den_) - lv.at_x;
  }

  const CocycleSpec* c_;
  Rational x_;
  Integer den_;
  Integer common_den_;
  std::vector<Level> levels_;
  std::vector<Rational> at_x_;
};

inline Rational phi_m(const CocycleSpec& c, const Rational& x, long m) {
  if (m == 0) return 0;
  return ErgodicSums(c, x).total(m);
}

/// Direct orbit sum: phi(x) + ... + phi(T^{m-1}x) for m > 0,
/// -phi(T^{-1}x) - ... - phi(T^m x) for m < 0.
inline Rational birkhoff(const CocycleSpec& c, const Rational& x, long m) {
  Rational sum = 0;
  if (m > 0) {
    for (long i = 0; i < m; ++i) sum += phi(c, x + i * c.alpha_hat());
  } else {
    for (long i = 1; i <= -m; ++i) sum -= phi(c, x - i * c.alpha_hat());
  }
  return sum;
}

}  // namespace besicovitch
