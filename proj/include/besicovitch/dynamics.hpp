#pragma once

// Orbits of the cylinder map T(x, t) = (x + alpha_hat mod 1, t + phi(x)) in
// binary fixed point, and the diagnostics built on them: grid coverage, the
// eps-nonrecurrence test, a seeded sensitivity search and a coarse orbit
// classifier.
//
// A state is a pair of integers (X, T) meaning (X / 2^p, T / 2^p). With
// G = sum_l f_l evaluated by rounding to the nearest 2^-p, a step is
// X' = X + a mod 2^p and T' = T + G(X') - G(X), and G(X') is reused as G(X)
// by the next step. The t coordinate therefore telescopes exactly:
// T_i = T_0 + G(X_i) - G(X_0). Relative to the exact orbit of the truncated
// cocycle at alpha_hat this gives, at step i,
//
//   |t_i - t_i exact| <= 2^-p-1                    (rounding t_0)
//                      + N 2^-p                    (two rounded G values)
//                      + sum_l Lambda_l 2^-p-1 (i + 2)  (x_0, a and x_i offsets)
//
// The model error against the true alpha and the untruncated cocycle is the
// cocycle budget at m = i and is reported separately; probes decide only on
// the rounding bound, i.e. about the simulated cylinder itself.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "besicovitch/cocycle.hpp"
#include "besicovitch/exact.hpp"
#include "besicovitch/params.hpp"
#include "besicovitch/targets.hpp"

namespace besicovitch {

class ErrorBudgetBlown : public std::runtime_error {
 public:
  explicit ErrorBudgetBlown(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-point evaluation of G = sum_l f_l at precision p.
class FixedPointCocycle {
 public:
  FixedPointCocycle(const CocycleSpec& c, unsigned precision_bits) : c_(&c), p_(precision_bits) {
    if (precision_bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
    one_ = ipow(Integer(2), p_);
    for (std::size_t l = 1; l <= c.truncation(); ++l) {
      const auto& s = c.shape(l);
      const auto& lv = c.level(l);
      Level L;
      L.cells = s.cells();
      L.num = lv.q_next;
      L.den = lv.A * Integer(l * l);
      if (s.variant() == Variant::main) L.den *= 12;
      L.tent = s.variant() == Variant::tent;
      levels_.push_back(std::move(L));
    }
    a_ = round_scaled(c.alpha_hat());
    a_ = mod_floor(a_, one_);
  }

  unsigned precision() const { return p_; }
  const Integer& one() const { return one_; }
  const Integer& step() const { return a_; }
  const CocycleSpec& cocycle() const { return *c_; }

  /// round(v 2^p)
  Integer round_scaled(const Rational& v) const {
    Integer num = v.get_num() * one_ * 2 + v.get_den();
    return floor_div(num, 2 * v.get_den());
  }

  /// G(X / 2^p) in units of 2^-p, each level rounded to nearest.
  Integer G(const Integer& X) const {
    Integer sum = 0;
    for (const auto& L : levels_) {
      mpz_mul(r_.get_mpz_t(), X.get_mpz_t(), L.cells.get_mpz_t());
      mpz_fdiv_r_2exp(r_.get_mpz_t(), r_.get_mpz_t(), p_);
      mpz_sub(f_.get_mpz_t(), one_.get_mpz_t(), r_.get_mpz_t());
      if (mpz_cmp(r_.get_mpz_t(), f_.get_mpz_t()) < 0) mpz_set(f_.get_mpz_t(), r_.get_mpz_t());
      if (L.tent) {
        mpz_mul(v_.get_mpz_t(), L.num.get_mpz_t(), f_.get_mpz_t());
      } else {
        mpz_mul_ui(f_.get_mpz_t(), f_.get_mpz_t(), 12);
        if (mpz_cmp(f_.get_mpz_t(), one_.get_mpz_t()) <= 0) continue;
        mpz_mul_ui(v_.get_mpz_t(), one_.get_mpz_t(), 5);
        if (mpz_cmp(f_.get_mpz_t(), v_.get_mpz_t()) <= 0) {
          mpz_sub(f_.get_mpz_t(), f_.get_mpz_t(), one_.get_mpz_t());
        } else {
          mpz_mul_2exp(f_.get_mpz_t(), one_.get_mpz_t(), 2);
        }
        mpz_mul(v_.get_mpz_t(), L.num.get_mpz_t(), f_.get_mpz_t());
      }
      // round(v / den) = floor((2v + den) / (2 den))
      mpz_mul_2exp(v_.get_mpz_t(), v_.get_mpz_t(), 1);
      mpz_add(v_.get_mpz_t(), v_.get_mpz_t(), L.den.get_mpz_t());
      mpz_mul_2exp(d_.get_mpz_t(), L.den.get_mpz_t(), 1);
      mpz_fdiv_q(v_.get_mpz_t(), v_.get_mpz_t(), d_.get_mpz_t());
      sum += v_;
    }
    return sum;
  }

  /// Rounding bound on t_i, see the header comment.
  Rational rounding_bound(std::size_t i) const {
    Rational half_ulp = make_rational(1, 2 * one_);
    Rational n_levels(Integer(levels_.size()));
    return half_ulp + 2 * n_levels * half_ulp + c_->lambda_sum() * half_ulp * Integer(i + 2);
  }

  /// Bound on |x_i - x_i exact| on the circle.
  Rational x_bound(std::size_t i) const { return make_rational(Integer(i + 1), 2 * one_); }

  /// Error of the simulated cylinder against the true one after i steps.
  Rational model_bound(std::size_t i) const {
    return i == 0 ? Rational(0) : c_->budget(static_cast<long>(i));
  }

 private:
  struct Level {
    Integer cells;
    Integer num;  // value = num * g / den with g the folded residue term
    Integer den;
    bool tent = false;
  };
  const CocycleSpec* c_;
  unsigned p_;
  Integer one_;
  Integer a_;
  std::vector<Level> levels_;
  mutable Integer r_, f_, v_, d_;
};

/// Raw stepping of one orbit.
class OrbitStepper {
 public:
  OrbitStepper(const FixedPointCocycle& fp, const Rational& x0, const Rational& t0) : fp_(&fp) {
    if (x0 < 0 || x0 >= 1) throw std::invalid_argument("x0 must lie in [0, 1)");
    X_ = mod_floor(fp.round_scaled(x0), fp.one());
    T_ = fp.round_scaled(t0);
    G_ = fp.G(X_);
  }

  void advance() {
    X_ += fp_->step();
    if (X_ >= fp_->one()) X_ -= fp_->one();
    Integer g = fp_->G(X_);
    T_ += g;
    T_ -= G_;
    G_ = std::move(g);
    ++i_;
  }

  std::size_t index() const { return i_; }
  const Integer& X() const { return X_; }
  const Integer& T() const { return T_; }
  double x() const { return to_unit(X_); }
  double t() const { return to_unit(T_); }

  double to_unit(const Integer& v) const {
    long e = 0;
    double m = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::ldexp(m, static_cast<int>(e) - static_cast<int>(fp_->precision()));
  }

 private:
  const FixedPointCocycle* fp_;
  Integer X_, T_, G_;
  std::size_t i_ = 0;
};

struct OrbitPoint {
  double x = 0;
  double t = 0;
};

struct OrbitCheckpoint {
  std::size_t step = 0;
  Integer X;  // x = X / 2^p
  Integer T;  // t = T / 2^p
};

struct OrbitOptions {
  /// Steps whose raw state is kept exactly; 0 and the last step always are.
  std::vector<std::size_t> checkpoints;
  /// Largest rounding bound tolerated at the last step.
  Rational error_cap = Rational(1, 1000);
};

struct OrbitRecord {
  std::size_t steps = 0;
  unsigned precision_bits = 0;
  std::vector<OrbitPoint> points;  // points[i] after i steps
  std::vector<OrbitCheckpoint> checkpoints;
  Rational rounding_bound;  // at the last step
  Rational model_bound;     // at the last step
  std::vector<Rational> rounding_bounds;  // per checkpoint

  /// Exact t at a checkpointed step.
  Rational t_at(std::size_t step) const {
    for (const auto& c : checkpoints)
      if (c.step == step) return make_rational(c.T, ipow(Integer(2), precision_bits));
    throw std::out_of_range("step " + std::to_string(step) + " not checkpointed");
  }
  Rational x_at(std::size_t step) const {
    for (const auto& c : checkpoints)
      if (c.step == step) return make_rational(c.X, ipow(Integer(2), precision_bits));
    throw std::out_of_range("step " + std::to_string(step) + " not checkpointed");
  }
  Rational bound_at(std::size_t step) const {
    for (std::size_t i = 0; i < checkpoints.size(); ++i)
      if (checkpoints[i].step == step) return rounding_bounds[i];
    throw std::out_of_range("step " + std::to_string(step) + " not checkpointed");
  }
};

inline OrbitRecord orbit(const CocycleSpec& c, const Rational& x0, const Rational& t0, std::size_t steps,
                         unsigned precision_bits, const OrbitOptions& opts = {}) {
  if (steps < 1) throw std::invalid_argument("orbit needs at least one step");
  FixedPointCocycle fp(c, precision_bits);
  Rational final_bound = fp.rounding_bound(steps);
  if (final_bound > opts.error_cap) {
    throw ErrorBudgetBlown("rounding bound " + std::to_string(final_bound.get_d()) + " after " +
                           std::to_string(steps) + " steps exceeds cap " +
                           std::to_string(opts.error_cap.get_d()));
  }
  std::set<std::size_t> keep(opts.checkpoints.begin(), opts.checkpoints.end());
  keep.insert(0);
  keep.insert(steps);

  OrbitRecord rec;
  rec.steps = steps;
  rec.precision_bits = precision_bits;
  rec.rounding_bound = final_bound;
  rec.model_bound = fp.model_bound(steps);
  rec.points.reserve(steps + 1);
  OrbitStepper st(fp, x0, t0);
  for (std::size_t i = 0;; ++i) {
    rec.points.push_back({st.x(), st.t()});
    if (keep.count(i)) {
      rec.checkpoints.push_back({i, st.X(), st.T()});
      rec.rounding_bounds.push_back(fp.rounding_bound(i));
    }
    if (i == steps) break;
    st.advance();
  }
  return rec;
}

/// Fraction of the cells of a grid x grid partition of [0, 1) x [-H, H]
/// visited by points 0..upto of the record.
inline double coverage(const OrbitRecord& rec, double H, std::size_t grid, std::optional<std::size_t> upto = {}) {
  if (grid == 0 || !(H > 0)) throw std::invalid_argument("coverage needs grid >= 1 and H > 0");
  std::size_t last = std::min(upto.value_or(rec.steps), rec.steps);
  std::vector<bool> seen(grid * grid, false);
  std::size_t count = 0;
  for (std::size_t i = 0; i <= last; ++i) {
    const auto& p = rec.points[i];
    if (!(p.t >= -H && p.t < H)) continue;
    auto cx = static_cast<std::size_t>(std::floor(p.x * static_cast<double>(grid)));
    auto ct = static_cast<std::size_t>(std::floor((p.t + H) / (2 * H) * static_cast<double>(grid)));
    cx = std::min(cx, grid - 1);
    ct = std::min(ct, grid - 1);
    std::size_t idx = cx * grid + ct;
    if (!seen[idx]) {
      seen[idx] = true;
      ++count;
    }
  }
  return static_cast<double>(count) / static_cast<double>(grid * grid);
}

enum class ProbeKind { sensitivity, nonrecurrence, coverage, classification };

inline std::string to_string(ProbeKind k) {
  switch (k) {
    case ProbeKind::sensitivity: return "sensitivity";
    case ProbeKind::nonrecurrence: return "nonrecurrence";
    case ProbeKind::coverage: return "coverage";
    case ProbeKind::classification: return "classification";
  }
  return "?";
}

struct ProbeWitness {
  std::size_t step = 0;
  Rational x;                 // perturbed start (sensitivity) or the start point
  Rational t;
  double distance = 0;        // taxicab distance at `step`
  std::string source;         // "family:pp", "random", ...
  bool reverified = false;    // survived re-simulation at doubled precision
};

struct ProbeResult {
  ProbeKind kind = ProbeKind::sensitivity;
  // parameters
  double eps = 0;
  double delta = 0;
  std::size_t horizon = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned precision_bits = 0;
  // outcome
  std::string outcome;  // "pass", "fail", "found", "not-found", "undecided"
  std::optional<ProbeWitness> witness;
  double min_distance = 0;
  std::size_t argmin = 0;
  double error_bound = 0;
};

namespace detail {

/// Taxicab distance between raw states, in units of 2^-p.
inline Integer raw_distance(const Integer& X1, const Integer& T1, const Integer& X2, const Integer& T2,
                            const Integer& one) {
  Integer dx = X1 - X2;
  if (dx < 0) dx = -dx;
  Integer wrap = one - dx;
  if (wrap < dx) dx = wrap;
  Integer dt = T1 - T2;
  if (dt < 0) dt = -dt;
  return dx + dt;
}

}  // namespace detail

/// min over 0 < k <= horizon of d(p, T^k p) against eps. The t coordinate
/// cancels, so the result does not depend on t.
inline ProbeResult nonrecurrence_test(const CocycleSpec& c, const Rational& x, const Rational& t,
                                      const Rational& eps, std::size_t horizon, unsigned precision_bits = 128) {
  if (horizon == 0) throw std::invalid_argument("horizon 0 makes the nonrecurrence test vacuous");
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  FixedPointCocycle fp(c, precision_bits);
  Rational bound = fp.rounding_bound(horizon) + fp.rounding_bound(0) + fp.x_bound(horizon);
  if (bound >= eps) {
    throw ErrorBudgetBlown("error bound " + std::to_string(bound.get_d()) + " reaches eps " +
                           std::to_string(eps.get_d()));
  }
  ProbeResult out;
  out.kind = ProbeKind::nonrecurrence;
  out.eps = eps.get_d();
  out.horizon = horizon;
  out.precision_bits = precision_bits;
  out.error_bound = bound.get_d();

  OrbitStepper st(fp, x, t);
  Integer X0 = st.X(), T0 = st.T();
  Integer best;
  for (std::size_t k = 1; k <= horizon; ++k) {
    st.advance();
    Integer d = detail::raw_distance(st.X(), st.T(), X0, T0, fp.one());
    if (k == 1 || d < best) {
      best = d;
      out.argmin = k;
    }
  }
  Rational min_d = make_rational(best, fp.one());
  out.min_distance = min_d.get_d();
  if (min_d - bound >= eps) out.outcome = "pass";
  else if (min_d + bound < eps) out.outcome = "fail";
  else out.outcome = "undecided";
  out.witness = ProbeWitness{out.argmin, x, t, out.min_distance, "start", false};
  return out;
}

struct SensitivityOptions {
  std::size_t samples = 32;
  std::uint64_t seed = 1;
  unsigned precision_bits = 128;
  /// Try points of the four families near x before random perturbations.
  bool family_candidates = true;
};

namespace detail {

/// First step k <= horizon at which the two orbits are more than eps plus
/// the rounding bounds apart; the distance in units of 2^-p.
inline std::optional<std::pair<std::size_t, Integer>> separation(const FixedPointCocycle& fp, const Rational& x,
                                                                  const Rational& t, const Rational& y,
                                                                  const Rational& s, const Rational& eps,
                                                                  std::size_t horizon) {
  OrbitStepper a(fp, x, t);
  OrbitStepper b(fp, y, s);
  for (std::size_t k = 1; k <= horizon; ++k) {
    a.advance();
    b.advance();
    Integer d = raw_distance(a.X(), a.T(), b.X(), b.T(), fp.one());
    Rational need = eps + 2 * fp.rounding_bound(k) + 2 * fp.x_bound(k);
    if (make_rational(d, fp.one()) > need) return std::make_pair(k, d);
  }
  return std::nullopt;
}

/// Center of the nearest depth-d interval of the family, if that center is
/// in every level up to d and within delta of x.
inline std::optional<Rational> family_point_near(const Profile& prof, SignPair pair, const Rational& x,
                                                 const Rational& delta) {
  std::size_t d = prof.depth();
  Integer cells = prof.level(d).cells();
  auto [lo, hi] = pair.offsets();
  Rational mid = (lo + hi) / 2;
  Integer j = mod_floor(ifloor(x * cells - mid + Rational(1, 2)), cells);
  Rational c = frac((j + mid) / cells);
  Rational dist = abs(c - x);
  if (1 - dist < dist) dist = 1 - dist;
  if (dist >= delta) return std::nullopt;
  if (!member(prof, pair, c, d).member) return std::nullopt;
  return c;
}

}  // namespace detail

/// Searches for y with d((x, t), y) < delta whose orbit separates from that of
/// (x, t) by more than eps within `horizon` steps. A witness is kept only if
/// re-simulation at doubled precision confirms it. not-found is not a proof
/// of anything.
inline ProbeResult sensitivity_probe(const CocycleSpec& c, const Rational& x, const Rational& t,
                                     const Rational& delta, const Rational& eps, std::size_t horizon,
                                     const SensitivityOptions& opts = {}) {
  if (delta <= 0 || eps <= 0) throw std::invalid_argument("delta and eps must be positive");
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
  FixedPointCocycle fp(c, opts.precision_bits);
  FixedPointCocycle fp2(c, 2 * opts.precision_bits);
  ProbeResult out;
  out.kind = ProbeKind::sensitivity;
  out.eps = eps.get_d();
  out.delta = delta.get_d();
  out.horizon = horizon;
  out.samples = opts.samples;
  out.seed = opts.seed;
  out.precision_bits = opts.precision_bits;
  out.error_bound = Rational(2 * fp.rounding_bound(horizon) + 2 * fp.x_bound(horizon)).get_d();
  out.outcome = "not-found";

  struct Candidate {
    Rational y, s;
    std::string source;
  };
  std::vector<Candidate> cands;
  if (opts.family_candidates) {
    for (auto pair : {SignPair::pp(), SignPair::mm(), SignPair::pm(), SignPair::mp()}) {
      if (auto y = detail::family_point_near(c.profile(), pair, x, delta / 2)) {
        cands.push_back({*y, t, "family:" + pair.code()});
      }
    }
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  for (std::size_t i = 0; i < opts.samples; ++i) {
    // |dx| + |dt| < delta
    Rational dx(unit(rng)), dt(unit(rng));
    dx *= delta * Rational(99, 100);
    dt *= delta * Rational(99, 100);
    cands.push_back({frac(x + dx), t + dt, "random"});
  }

  for (const auto& cand : cands) {
    auto hit = detail::separation(fp, x, t, cand.y, cand.s, eps, horizon);
    if (!hit) continue;
    // Confirm at doubled precision at the same step.
    OrbitStepper a(fp2, x, t), b(fp2, cand.y, cand.s);
    for (std::size_t k = 0; k < hit->first; ++k) {
      a.advance();
      b.advance();
    }
    Integer d2 = detail::raw_distance(a.X(), a.T(), b.X(), b.T(), fp2.one());
    Rational need = eps + 2 * fp2.rounding_bound(hit->first) + 2 * fp2.x_bound(hit->first);
    if (!(make_rational(d2, fp2.one()) > need)) continue;
    out.outcome = "found";
    out.witness = ProbeWitness{hit->first, cand.y, cand.s, make_rational(hit->second, fp.one()).get_d(),
                               cand.source, true};
    return out;
  }
  return out;
}

struct LadderRung {
  double eps = 0;
  ProbeResult result;
};

/// Sensitivity for each eps of a finite ladder; the limit over all eps is not
/// something a finite search can see.
inline std::vector<LadderRung> sensitivity_ladder(const CocycleSpec& c, const Rational& x, const Rational& t,
                                                  const Rational& delta, const std::vector<Rational>& eps_ladder,
                                                  std::size_t horizon, const SensitivityOptions& opts = {}) {
  std::vector<LadderRung> out;
  for (const auto& e : eps_ladder) {
    out.push_back({e.get_d(), sensitivity_probe(c, x, t, delta, e, horizon, opts)});
  }
  return out;
}

enum class OrbitLabel { escaping_plus, escaping_minus, oscillating, undetermined };

inline std::string to_string(OrbitLabel l) {
  switch (l) {
    case OrbitLabel::escaping_plus: return "escaping+";
    case OrbitLabel::escaping_minus: return "escaping-";
    case OrbitLabel::oscillating: return "oscillating";
    case OrbitLabel::undetermined: return "undetermined";
  }
  return "?";
}

struct ClassifyThresholds {
  /// escaping+/-: t - t0 stays beyond this level over the whole second half
  /// of the horizon.
  Rational escape = 1;
  /// oscillating: t - t0 exceeds +level and -level within the second half.
  Rational swing = 1;
  unsigned precision_bits = 128;
};

struct Classification {
  OrbitLabel label = OrbitLabel::undetermined;
  double min_late = 0;  // min of t - t0 over the second half
  double max_late = 0;
  double error_bound = 0;
};

inline Classification classify_orbit(const CocycleSpec& c, const Rational& x, std::size_t horizon,
                                     const ClassifyThresholds& th = {}, const Rational& t0 = 0) {
  if (horizon < 2) throw std::invalid_argument("classification needs a horizon of at least 2");
  FixedPointCocycle fp(c, th.precision_bits);
  OrbitStepper st(fp, x, t0);
  Integer T0 = st.T();
  Integer lo, hi;
  bool first = true;
  for (std::size_t k = 1; k <= horizon; ++k) {
    st.advance();
    if (k < (horizon + 1) / 2) continue;
    Integer d = st.T() - T0;
    if (first || d < lo) lo = d;
    if (first || d > hi) hi = d;
    first = false;
  }
  Rational bound = fp.rounding_bound(horizon) + fp.rounding_bound(0);
  Rational min_late = make_rational(lo, fp.one());
  Rational max_late = make_rational(hi, fp.one());
  Classification out;
  out.min_late = min_late.get_d();
  out.max_late = max_late.get_d();
  out.error_bound = bound.get_d();
  if (min_late - bound > th.escape) out.label = OrbitLabel::escaping_plus;
  else if (max_late + bound < -th.escape) out.label = OrbitLabel::escaping_minus;
  else if (max_late - bound > th.swing && min_late + bound < -th.swing) out.label = OrbitLabel::oscillating;
  return out;
}

}  // namespace besicovitch
