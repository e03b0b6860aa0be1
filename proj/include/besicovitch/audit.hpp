#pragma once

// Exact checks of the divergence estimates for points of the four families:
// the window index n(m), per-level sign and magnitude bounds, and certified
// lower bounds on |phi^(m)(x)|.
//
// Every term is evaluated at alpha_hat. A claim about the true alpha passes
// only if it holds with the substitution error (and, for totals, the
// truncation tail) subtracted; if it fails with the error added it is a
// failure; anything in between is indeterminate.

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "besicovitch/cocycle.hpp"
#include "besicovitch/exact.hpp"
#include "besicovitch/parallel.hpp"
#include "besicovitch/params.hpp"
#include "besicovitch/targets.hpp"

namespace besicovitch {

class BelowFirstWindow : public std::out_of_range {
 public:
  explicit BelowFirstWindow(long m)
      : std::out_of_range("m = " + std::to_string(m) + " lies below the first window"), m_(m) {}
  long m() const { return m_; }

 private:
  long m_;
};

class MarginTooThin : public std::runtime_error {
 public:
  explicit MarginTooThin(const std::string& what) : std::runtime_error(what) {}
};

enum class FamilyKind { aligned, mixed };

inline std::string to_string(FamilyKind k) { return k == FamilyKind::aligned ? "aligned" : "mixed"; }

inline FamilyKind kind_of(SignPair pair) { return pair.aligned() ? FamilyKind::aligned : FamilyKind::mixed; }

enum class Verdict { pass, indeterminate, fail };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::indeterminate: return "indeterminate";
    case Verdict::fail: return "fail";
  }
  return "?";
}

/// value > bound, where value is known only up to +-err.
inline Verdict verdict_greater(const Rational& value, const Rational& bound, const Rational& err) {
  if (bound == 0) {
    if (value > err) return Verdict::pass;
    if (value <= -err) return Verdict::fail;
    return Verdict::indeterminate;
  }
  if (value - err > bound) return Verdict::pass;
  if (value + err <= bound) return Verdict::fail;
  return Verdict::indeterminate;
}

/// value < bound, where value is known only up to +-err.
inline Verdict verdict_less(const Rational& value, const Rational& bound, const Rational& err) {
  if (value + err < bound) return Verdict::pass;
  if (value - err >= bound) return Verdict::fail;
  return Verdict::indeterminate;
}

inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::indeterminate || b == Verdict::indeterminate) return Verdict::indeterminate;
  return Verdict::pass;
}

struct WindowIndex {
  long m = 0;
  std::size_t n = 0;
  FamilyKind kind = FamilyKind::aligned;
  Rational lo;  // lo <= |m| < hi
  Rational hi;
};

/// Lower edge of window n.
///   aligned: q_{k_{n-1}+1} / (2 A_{n-1}),  n >= 2
///   mixed:   q_{k_n+1} / (12 A_n),          n >= 1
inline Rational window_lower(const Profile& prof, FamilyKind kind, std::size_t n) {
  if (kind == FamilyKind::aligned) {
    if (n < 2) throw std::invalid_argument("aligned windows start at n = 2");
    return prof.level(n - 1).growth_scale() / 2;
  }
  return prof.level(n).growth_scale() / 12;
}

inline Rational window_upper(const Profile& prof, FamilyKind kind, std::size_t n) {
  if (kind == FamilyKind::aligned) return prof.level(n).growth_scale() / 2;
  return prof.level(n + 1).growth_scale() / 12;
}

/// Last n whose window is fully described by the profile.
inline std::size_t last_window(const Profile& prof, FamilyKind kind) {
  return kind == FamilyKind::aligned ? prof.depth() : (prof.depth() == 0 ? 0 : prof.depth() - 1);
}

inline WindowIndex window(const Profile& prof, FamilyKind kind, long m) {
  Rational am(Integer(std::labs(m)));
  std::size_t first = kind == FamilyKind::aligned ? 2 : 1;
  std::size_t last = last_window(prof, kind);
  if (last < first) throw std::invalid_argument("profile too shallow for any window");
  if (am < window_lower(prof, kind, first)) throw BelowFirstWindow(m);
  for (std::size_t n = first; n <= last; ++n) {
    Rational hi = window_upper(prof, kind, n);
    if (am < hi) return {m, n, kind, window_lower(prof, kind, n), hi};
  }
  throw std::out_of_range("m = " + std::to_string(m) + " lies beyond the profile's last window");
}

/// Integer range [first, last] of |m| in window n; empty when first > last.
inline std::pair<Integer, Integer> window_integers(const Profile& prof, FamilyKind kind, std::size_t n) {
  return {iceil(window_lower(prof, kind, n)), iceil(window_upper(prof, kind, n)) - 1};
}

struct ReportRow {
  std::size_t l = 0;
  Rational term;
  int sign = 0;
  int required_sign = 0;                  // 0 when unconstrained
  std::optional<Rational> bound;          // required |term| > bound
  Rational error;                         // substitution error of this row
  Verdict verdict = Verdict::pass;
  bool checked = false;
};

struct DivergenceReport {
  FamilyKind kind = FamilyKind::aligned;
  SignPair pair;
  Rational x;
  DigitPath path;
  long m = 0;
  std::size_t n_of_m = 0;
  WindowIndex window;
  std::vector<ReportRow> rows;

  Rational head;   // sum over l <= n(m)
  Rational tail;   // sum over n(m) < l <= N
  Rational total;  // head + tail = phi_m(x, m) at alpha_hat

  Rational substitution_budget;
  Rational truncation_budget;
  Rational budget;  // substitution + truncation
  /// Truncation budget does not weaken the lower bound when every omitted
  /// term is known to carry the expected sign.
  bool one_sided_tail = false;
  int expected_sign = 0;

  /// Lower bound on expected_sign * phi^(m)(x) for the true alpha and the
  /// untruncated cocycle.
  Rational certified_lower;
  /// The level bound the proof targets (aligned: n(m)-row bound; mixed:
  /// asymptotic reference).
  Rational target_bound;
  /// expected_sign * total > target_bound - budget
  bool bound_consistent = false;

  // aligned only
  Verdict shift_verdict = Verdict::pass;
  Rational shift;  // |m (alpha_hat - p_{k_n}/q_{k_n})|

  // mixed only
  Rational head_upper;
  Rational tail_lower;
  bool tail_dominates = false;

  bool margin_too_thin = false;
  Verdict status = Verdict::pass;
};

/// Everything about one sample point that does not depend on m.
class AuditContext {
 public:
  AuditContext(const CocycleSpec& c, SignPair pair, SamplePoint sample)
      : c_(&c), pair_(pair), sample_(std::move(sample)), sums_(c, sample_.x) {
    if (sample_.depth() > c.truncation()) {
      throw std::invalid_argument("sample deeper than the cocycle truncation");
    }
    auto mem = member(c.profile(), pair, sample_.x, sample_.depth());
    if (!mem.member) throw std::invalid_argument("sample point not in the family to its depth");
    one_sided_ = pair.aligned() && pair.s_plus > 0 && sample_.x == 0;
    Rational peaks = 0;
    peak_prefix_.push_back(0);
    for (std::size_t l = 1; l <= c.truncation(); ++l) {
      const auto& lv = c.level(l);
      deltas_.push_back(c.alpha_hat() - make_rational(lv.p, lv.q));
      abs_deltas_.push_back(abs(deltas_.back()));
      error_units_.push_back(c.shape(l).lipschitz() * c.alpha_error());
      twelfths_.push_back(c.shape(l).period() / 12);
      peaks += 2 * c.shape(l).peak();
      peak_prefix_.push_back(peaks);
    }
    const auto& prof = c.profile();
    kind_ = kind_of(pair);
    std::size_t first = kind_ == FamilyKind::aligned ? 2 : 1;
    for (std::size_t n = first; n <= last_window(prof, kind_); ++n) {
      windows_.push_back({n, window_lower(prof, kind_, n), window_upper(prof, kind_, n)});
    }
    error_suffix_.assign(c.truncation() + 1, Rational(0));
    for (std::size_t l = c.truncation(); l >= 1; --l) {
      error_suffix_[l - 1] = error_suffix_[l] + error_units_[l - 1];
    }
  }

  const CocycleSpec& cocycle() const { return *c_; }
  SignPair pair() const { return pair_; }
  const SamplePoint& sample() const { return sample_; }
  const ErgodicSums& sums() const { return sums_; }
  /// x = 0 is in every ++ interval, so every term is >= 0 for every level.
  bool one_sided_tail() const { return one_sided_; }
  /// alpha_hat - p_{k_l}/q_{k_l}
  const Rational& delta(std::size_t l) const { return deltas_.at(l - 1); }
  const Rational& abs_delta(std::size_t l) const { return abs_deltas_.at(l - 1); }
  /// Lambda_l |alpha - alpha_hat| bound; times |m| gives the row error.
  const Rational& error_unit(std::size_t l) const { return error_units_.at(l - 1); }
  /// Sum over l > n of error_unit(l).
  const Rational& error_after(std::size_t n) const { return error_suffix_.at(n); }
  /// P_l / 12
  const Rational& twelfth_period(std::size_t l) const { return twelfths_.at(l - 1); }
  /// Sum over l <= n of twice the peak of f_l.
  const Rational& peak_sum(std::size_t n) const { return peak_prefix_.at(n); }

  /// Same result as window(profile, kind, m) with the bounds precomputed.
  WindowIndex window(long m) const {
    if (windows_.empty()) throw std::invalid_argument("profile too shallow for any window");
    Integer am = std::labs(m);
    if (am < windows_.front().lo) throw BelowFirstWindow(m);
    for (const auto& w : windows_) {
      if (am < w.hi) return {m, w.n, kind_, w.lo, w.hi};
    }
    throw std::out_of_range("m = " + std::to_string(m) + " lies beyond the profile's last window");
  }

 private:
  const CocycleSpec* c_;
  SignPair pair_;
  SamplePoint sample_;
  ErgodicSums sums_;
  bool one_sided_ = false;
  std::vector<Rational> deltas_;
  std::vector<Rational> abs_deltas_;
  std::vector<Rational> error_units_;
  std::vector<Rational> error_suffix_;
  std::vector<Rational> twelfths_;
  std::vector<Rational> peak_prefix_;
  struct Bounds {
    std::size_t n;
    Rational lo;
    Rational hi;
  };
  FamilyKind kind_ = FamilyKind::aligned;
  std::vector<Bounds> windows_;
};

namespace detail {

inline DivergenceReport start_report(const AuditContext& ctx, long m, FamilyKind kind) {
  if (kind_of(ctx.pair()) != kind) throw std::invalid_argument("family does not match audit kind");
  if (m == 0) throw std::invalid_argument("m = 0 is excluded");
  const auto& c = ctx.cocycle();
  DivergenceReport r;
  r.kind = kind;
  r.pair = ctx.pair();
  r.x = ctx.sample().x;
  r.path = ctx.sample().path;
  r.m = m;
  r.window = ctx.window(m);
  r.n_of_m = r.window.n;
  if (ctx.sample().depth() < r.n_of_m + 2) {
    throw std::invalid_argument("sample depth " + std::to_string(ctx.sample().depth()) +
                                " below n(m) + 2 = " + std::to_string(r.n_of_m + 2));
  }
  const auto scaled = ctx.sums().scaled_terms(m);
  const Integer& den = ctx.sums().common_den();
  const Integer am = std::labs(m);
  Integer head = 0;
  Integer tail = 0;
  r.rows.reserve(scaled.size());
  for (std::size_t l = 1; l <= scaled.size(); ++l) {
    ReportRow row;
    row.l = l;
    row.term = make_rational(scaled[l - 1], den);
    row.sign = sign(scaled[l - 1]);
    row.error = scale(ctx.error_unit(l), am);
    (l <= r.n_of_m ? head : tail) += scaled[l - 1];
    r.rows.push_back(std::move(row));
  }
  r.head = make_rational(head, den);
  r.tail = make_rational(tail, den);
  r.total = make_rational(head + tail, den);
  r.substitution_budget = scale(ctx.error_after(0), am);
  r.truncation_budget = c.truncation_budget(m);
  r.budget = r.substitution_budget + r.truncation_budget;
  return r;
}

inline void finish_status(DivergenceReport& r, Verdict extra) {
  Verdict v = extra;
  for (const auto& row : r.rows)
    if (row.checked) v = combine(v, row.verdict);
  r.status = v;
  r.margin_too_thin = v == Verdict::indeterminate;
}

}  // namespace detail

/// F^{++} / F^{--}: every row l <= depth has sign s_+ (the point sits on the
/// zero set or the plateau of f_l), and row n(m) exceeds
/// q_{k_n+1} / (75 A_n n^2) in absolute value.
inline DivergenceReport audit_aligned(const AuditContext& ctx, long m) {
  const auto& c = ctx.cocycle();
  if (c.variant() != Variant::main) {
    throw std::invalid_argument("aligned families need the plateau profile (variant main)");
  }
  DivergenceReport r = detail::start_report(ctx, m, FamilyKind::aligned);
  const int s = ctx.pair().s_plus;
  const std::size_t n = r.n_of_m;
  const auto& lv = c.level(n);
  r.expected_sign = s;
  r.one_sided_tail = ctx.one_sided_tail();
  r.target_bound = make_rational(lv.q_next, 75 * lv.A * Integer(n * n));

  for (auto& row : r.rows) {
    if (row.l > ctx.sample().depth()) continue;
    row.checked = true;
    row.required_sign = s;
    // Exact: the reduced point is on the minimum (++) or maximum (--) set of
    // f_l, so the sign holds for any shift, alpha_hat or alpha.
    row.verdict = s * row.term >= 0 ? Verdict::pass : Verdict::fail;
    if (row.l == n) {
      row.bound = r.target_bound;
      row.verdict = combine(row.verdict, verdict_greater(s * row.term, r.target_bound, row.error));
    }
  }

  // 9/(50 A_n q_{k_n}) < |m (alpha - p/q)| < 1/(2 A_n q_{k_n})
  r.shift = abs(Rational(Integer(m)) * ctx.delta(n));
  Rational err = std::labs(m) * c.alpha_error();
  Rational P = lv.period();
  r.shift_verdict = combine(verdict_greater(r.shift, Rational(9, 50) * P, err),
                            verdict_less(r.shift, P / 2, err));

  Rational lower_budget = r.substitution_budget + (r.one_sided_tail ? Rational(0) : r.truncation_budget);
  r.certified_lower = s * r.total - lower_budget;
  r.bound_consistent = s * r.total > r.target_bound - r.budget;
  Verdict final_claim = r.certified_lower > r.target_bound ? Verdict::pass : Verdict::indeterminate;
  detail::finish_status(r, combine(r.shift_verdict, final_claim));
  return r;
}

/// F^{+-} / F^{-+}: for every level l > n(m) up to the sample depth the term
/// has sign (-1)^{k_1} s_+ sign(m), magnitude above q_{k_n+1}/(24 A_n l^2),
/// and the shift moves the point by less than P_l / 12. The finite head is
/// bounded by twice the peaks and compared to the tail.
inline DivergenceReport audit_mixed(const AuditContext& ctx, long m) {
  DivergenceReport r = detail::start_report(ctx, m, FamilyKind::mixed);
  const auto& c = ctx.cocycle();
  const std::size_t n = r.n_of_m;
  const auto& lv = c.level(n);
  const int expected = c.profile().k1_parity() * ctx.pair().s_plus * (m > 0 ? 1 : -1);
  r.expected_sign = expected;
  r.target_bound = make_rational(lv.q_next, 50 * lv.A * Integer(n));

  const Integer am = std::labs(m);
  const Rational err = scale(c.alpha_error(), am);
  const Rational coeff = make_rational(lv.q_next, 24 * lv.A);
  const Rational tail_sub = scale(ctx.error_after(n), am);
  r.head_upper = ctx.peak_sum(n);
  for (auto& row : r.rows) {
    if (row.l <= n || row.l > ctx.sample().depth()) continue;
    row.checked = true;
    row.required_sign = expected;
    row.bound = coeff / Integer(row.l * row.l);
    Verdict sign_ok = verdict_greater(expected > 0 ? row.term : Rational(-row.term), 0, row.error);
    Verdict size_ok = verdict_greater(abs(row.term), *row.bound, row.error);
    Verdict disp_ok = verdict_less(scale(ctx.abs_delta(row.l), am), ctx.twelfth_period(row.l), err);
    row.verdict = combine(sign_ok, combine(size_ok, disp_ok));
  }

  r.tail_lower = abs(r.tail) - tail_sub - r.truncation_budget;
  r.tail_dominates = r.tail_lower - r.head_upper > 0;
  r.certified_lower = expected * r.total - r.budget;
  r.bound_consistent = expected * r.total > r.target_bound - r.budget;
  Verdict structure = r.tail_dominates && expected * r.tail > 0 ? Verdict::pass : Verdict::indeterminate;
  detail::finish_status(r, structure);
  return r;
}

inline DivergenceReport audit(const AuditContext& ctx, long m) {
  return ctx.pair().aligned() ? audit_aligned(ctx, m) : audit_mixed(ctx, m);
}

/// Throws MarginTooThin unless the report is a clean pass.
inline void require_certified(const DivergenceReport& r) {
  if (r.status != Verdict::pass) {
    throw MarginTooThin("report for m = " + std::to_string(r.m) + " is " + to_string(r.status));
  }
}

/// Reports for every m in [m_lo, m_hi] that lies in an audited window (m = 0
/// and sub-window m are skipped), ordered by m.
inline std::vector<DivergenceReport> audit_range(const AuditContext& ctx, long m_lo, long m_hi,
                                                 std::size_t threads = 0) {
  std::vector<long> ms;
  for (long m = m_lo; m <= m_hi; ++m) {
    if (m == 0) continue;
    try {
      auto w = ctx.window(m);
      if (ctx.sample().depth() < w.n + 2) continue;
    } catch (const std::out_of_range&) {
      continue;
    }
    ms.push_back(m);
  }
  return parallel_map(ms.size(), [&](std::size_t i) { return audit(ctx, ms[i]); }, threads);
}

/// Sum_{l > n} 1/l^2 > 24/(25 n), decided with a double partial sum up to
/// `terms`, an enclosure of the remainder beyond it, and a bound on the
/// accumulated rounding error.
struct TailCondition {
  std::size_t n = 0;
  double lower = 0;
  double upper = 0;
  double threshold = 0;
  std::optional<bool> holds;  // empty when the enclosure straddles the threshold
};

inline TailCondition tail_condition(std::size_t n, std::size_t terms = 1000000) {
  if (n < 1) throw std::invalid_argument("tail condition needs n >= 1");
  if (terms <= n) throw std::invalid_argument("partial sum must extend past n");
  double sum = 0;
  for (std::size_t l = terms; l > n; --l) {
    double ld = static_cast<double>(l);
    sum += 1.0 / (ld * ld);
  }
  // Each step adds at most one rounding of the running sum plus one for the
  // term itself; the running sum never exceeds 1/n.
  double eps = std::ldexp(1.0, -52);
  double rounding = static_cast<double>(terms - n) * 2 * eps * (1.0 / static_cast<double>(n) + 1.0);
  double M = static_cast<double>(terms);
  TailCondition out;
  out.n = n;
  out.lower = sum - rounding + 1.0 / (M + 1);
  out.upper = sum + rounding + 1.0 / M;
  out.threshold = 24.0 / (25.0 * static_cast<double>(n));
  double slack = 4 * eps * out.threshold;
  if (out.lower > out.threshold + slack) out.holds = true;
  else if (out.upper < out.threshold - slack) out.holds = false;
  return out;
}

struct WindowSummary {
  std::size_t n = 0;
  std::size_t count = 0;  // audited m in this window
  Rational min_abs;       // min |phi^(m)(x)| over audited m
  long argmin = 0;
  Rational reference;     // window-wise bound the proof targets
  std::size_t certified = 0;
};

struct DiscretenessScan {
  std::vector<WindowSummary> windows;
  bool references_nondecreasing = true;
  bool minima_positive = true;
};

/// Per-window minima of |phi^(m)(x)| over m in [m_lo, m_hi] (m = 0 and
/// sub-window m excluded), with the window-wise reference bounds.
inline DiscretenessScan discreteness_scan(const AuditContext& ctx, long m_lo, long m_hi,
                                          std::size_t threads = 0) {
  auto reports = audit_range(ctx, m_lo, m_hi, threads);
  std::map<std::size_t, WindowSummary> by_window;
  for (const auto& r : reports) {
    Rational mag = abs(r.total);
    auto [it, fresh] = by_window.try_emplace(r.n_of_m);
    auto& w = it->second;
    if (fresh) {
      w.n = r.n_of_m;
      w.min_abs = mag;
      w.argmin = r.m;
      w.reference = r.target_bound;
    } else if (mag < w.min_abs) {
      w.min_abs = mag;
      w.argmin = r.m;
    }
    ++w.count;
    if (r.status == Verdict::pass) ++w.certified;
  }
  DiscretenessScan out;
  for (auto& [n, w] : by_window) out.windows.push_back(std::move(w));
  for (std::size_t i = 0; i < out.windows.size(); ++i) {
    if (out.windows[i].min_abs <= 0) out.minima_positive = false;
    if (i > 0 && out.windows[i].reference < out.windows[i - 1].reference) {
      out.references_nondecreasing = false;
    }
  }
  return out;
}

}  // namespace besicovitch
