// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "besicovitch.hpp"

using namespace besicovitch;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

Rational random_point(std::mt19937_64& rng, long max_den) {
  std::uniform_int_distribution<long> den_dist(2, max_den);
  long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(1, den - 1);
  return make_rational(num_dist(rng), den);
}

Profile golden(Strategy s, Variant v, std::size_t n_max) {
  return select_levels(IrrationalSpec::golden(), s, v, n_max);
}

// 1. gap bounds for n = 1..40, golden and sqrt2m1, under one second.
Outcome convergent_law() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t passed = 0, total = 0;
  for (const auto& spec : {IrrationalSpec::golden(), IrrationalSpec::sqrt2m1()}) {
    for (std::size_t n = 1; n <= 40; ++n) {
      ++total;
      auto cert = gap_bounds_check(spec, n);
      if (cert.passed) ++passed;
      else o.details.push_back(spec.str() + " n=" + std::to_string(n) + " failed");
    }
  }
  double secs = seconds_since(t0);
  o.pass = passed == total && secs < 1.0;
  o.summary = std::to_string(passed) + "/" + std::to_string(total) + " certificates, " + fmt(secs, 3) + " s (limit 1 s)";
  return o;
}

// 2. phi_m == birkhoff for 5 random x (denominators <= 10^4), |m| <= 50,
//    greedy golden main and tent, under 30 s.
Outcome telescoping() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t checks = 0, mismatches = 0;
  for (auto v : {Variant::main, Variant::tent}) {
    CocycleSpec c(golden(Strategy::greedy, v, 4));
    for (int i = 0; i < 5; ++i) {
      Rational x = random_point(rng, 10000);
      for (long m = -50; m <= 50; ++m) {
        ++checks;
        if (phi_m(c, x, m) != birkhoff(c, x, m)) {
          ++mismatches;
          o.details.push_back(to_string(v) + " x=" + to_string(x) + " m=" + std::to_string(m));
        }
      }
    }
  }
  double secs = seconds_since(t0);
  o.pass = mismatches == 0 && secs < 30;
  o.summary = std::to_string(checks - mismatches) + "/" + std::to_string(checks) + " bit-exact, " + fmt(secs, 3) +
              " s (limit 30 s)";
  return o;
}

// 3. 1.1 < (q_{k_n+1}/A_n) / (q_{k_{n-1}+1}/A_{n-1}) < 25/18 for fixed n = 2..4 and greedy n = 2..6.
Outcome ratio_window() {
  Outcome o;
  auto t0 = Clock::now();
  bool ok = true;
  for (auto [s, depth] : {std::pair{Strategy::fixed, std::size_t(4)}, std::pair{Strategy::greedy, std::size_t(6)}}) {
    auto prof = golden(s, Variant::main, depth);
    std::string line = to_string(s) + ":";
    for (std::size_t n = 2; n <= depth; ++n) {
      const auto& cur = prof.level(n);
      const auto& prev = prof.level(n - 1);
      Rational ratio = make_rational(cur.q_next * prev.A, cur.A * prev.q_next);
      bool in = ratio > make_rational(11, 10) && ratio < make_rational(25, 18);
      ok = ok && in;
      line += " n=" + std::to_string(n) + " " + fmt(ratio.get_d(), 8) + (in ? "" : " (outside)");
    }
    o.details.push_back(line);
  }
  double secs = seconds_since(t0);
  o.pass = ok && secs < 10;
  o.summary = std::string(ok ? "all ratios inside (1.1, 25/18)" : "ratio outside window") + ", " + fmt(secs, 3) +
              " s (limit 10 s)";
  return o;
}

// 4. Every level-1 parent of the greedy golden main profile has >= 3 children,
//    counted by a containment scan, within [m_formula, mbar_formula + 1].
Outcome cantor_nesting() {
  Outcome o;
  auto prof = golden(Strategy::greedy, Variant::main, 2);
  auto stats = nesting_stats(prof, CountMode::formula);
  const auto& l2 = stats.level(2);
  const Integer parents = prof.level(1).cells();
  const Rational P2 = prof.level(2).period();
  bool ok = true;
  for (auto pair : {SignPair::pp(), SignPair::mm(), SignPair::pm(), SignPair::mp()}) {
    auto [lo, hi] = pair.offsets();
    Integer mn = -1, mx = -1;
    for (Integer j = 0; j < parents; ++j) {
      auto parent = interval(prof, pair, 1, j);
      Integer count = 0;
      for (Integer c = ifloor(parent.lo / P2) - 1; c <= iceil(parent.hi / P2) + 1; ++c) {
        if ((c + lo) * P2 >= parent.lo && (c + hi) * P2 <= parent.hi) ++count;
      }
      if (mn < 0 || count < mn) mn = count;
      if (count > mx) mx = count;
      bool in = count >= 3 && Rational(count) >= l2.m_formula && Rational(count) <= l2.mbar_formula + 1;
      if (!in) {
        ok = false;
        o.details.push_back(pair.code() + " parent " + to_string(j) + " has " + to_string(count) + " children");
      }
    }
    o.details.push_back(pair.code() + ": " + to_string(parents) + " parents, children " + to_string(mn) + ".." +
                        to_string(mx) + ", formula window [" + fmt(l2.m_formula.get_d()) + ", " +
                        fmt(Rational(l2.mbar_formula + 1).get_d()) + "]");
  }
  o.pass = ok;
  o.summary = ok ? "every parent has >= 3 children inside the formula window" : "count outside window";
  return o;
}

// 5. Depth-5 center samples of F^{++} and F^{--}, every m in the n = 2 and 3 windows.
Outcome aligned_divergence() {
  Outcome o;
  auto t0 = Clock::now();
  auto prof = golden(Strategy::greedy, Variant::main, 5);
  CocycleSpec c(prof);
  bool ok = true;
  std::size_t audited = 0;
  for (auto pair : {SignPair::pp(), SignPair::mm()}) {
    auto sample = sample_point(c.profile(), pair, SamplePolicy::center, 5);
    AuditContext ctx(c, pair, sample);
    for (std::size_t n : {2u, 3u}) {
      auto [first, last] = window_integers(c.profile(), FamilyKind::aligned, n);
      if (first > last) {
        o.details.push_back(pair.code() + " n=" + std::to_string(n) + ": window [" +
                            fmt(window_lower(c.profile(), FamilyKind::aligned, n).get_d()) + ", " +
                            fmt(window_upper(c.profile(), FamilyKind::aligned, n).get_d()) + ") holds no integer");
        continue;
      }
      for (long am = first.get_si(); am <= last.get_si(); ++am) {
        for (long m : {-am, am}) {
          auto r = audit(ctx, m);
          ++audited;
          const int s = pair.s_plus;
          bool signs = true;
          for (const auto& row : r.rows)
            if (row.l <= sample.depth() && s * row.term < 0) signs = false;
          // phi^(m) > q_{k_n+1} / (75 A_n n^2) - budget, in the direction s
          const auto& lv = c.level(n);
          Rational bound = make_rational(lv.q_next, 75 * lv.A * Integer(n * n));
          bool above = s * r.total > bound - r.budget;
          bool certified = r.status == Verdict::pass;
          ok = ok && signs && above && certified;
          o.details.push_back(pair.code() + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
                              ": terms l<=5 sign " + (signs ? "ok" : "VIOLATED") + ", s*phi=" +
                              fmt(Rational(s * r.total).get_d()) + " vs bound " + fmt(bound.get_d()) + " - budget " +
                              fmt(r.budget.get_d()) + (above ? "" : " (below)") + ", certified lower " +
                              fmt(r.certified_lower.get_d()) + " -> " + to_string(r.status));
        }
      }
    }
  }
  double secs = seconds_since(t0);
  o.pass = ok && audited > 0;
  o.summary = std::to_string(audited) + " shifts audited, " + (o.pass ? "all certified" : "failures") + ", " +
              fmt(secs, 3) + " s";
  return o;
}

// 6. Greedy golden tent profile, F^{+-} and F^{-+}, every m with n(m) = 2 or 3:
//    sign constancy for l in (n, n+3], |term| > q_{k_n}/(24 A_n l^2), and
//    tail_lower - head_upper > 0, under a minute.
Outcome mixed_divergence() {
  Outcome o;
  auto t0 = Clock::now();
  auto prof = golden(Strategy::greedy, Variant::tent, 4);
  CocycleOptions opts;
  opts.truncation = 6;
  CocycleSpec c(prof, opts);
  bool rows_ok = true, dominance_ok = true;
  std::size_t audited = 0;
  for (auto pair : {SignPair::pm(), SignPair::mp()}) {
    auto sample = sample_point(c.profile(), pair, SamplePolicy::center, 6);
    AuditContext ctx(c, pair, sample);
    for (std::size_t n : {2u, 3u}) {
      auto [first, last] = window_integers(c.profile(), FamilyKind::mixed, n);
      const auto& lv = c.level(n);
      std::vector<long> ms;
      for (long am = first.get_si(); am <= last.get_si(); ++am) {
        ms.push_back(-am);
        ms.push_back(am);
      }
      struct Tally {
        bool rows = true;
        bool dominates = false;
        Rational margin;
      };
      auto tallies = parallel_map(ms.size(), [&](std::size_t i) {
        auto r = audit(ctx, ms[i]);
        Tally t;
        for (const auto& row : r.rows) {
          if (row.l <= n || row.l > n + 3) continue;
          Rational bound = make_rational(lv.q, 24 * lv.A * Integer(row.l * row.l));
          bool sign_ok = row.sign == r.expected_sign && verdict_greater(r.expected_sign * row.term, 0, row.error) ==
                                                             Verdict::pass;
          bool size_ok = verdict_greater(abs(row.term), bound, row.error) == Verdict::pass;
          t.rows = t.rows && sign_ok && size_ok;
        }
        t.margin = r.tail_lower - r.head_upper;
        t.dominates = t.margin > 0;
        return t;
      });
      std::size_t row_fail = 0, dominated = 0;
      Rational best, worst;
      for (std::size_t i = 0; i < tallies.size(); ++i) {
        const auto& t = tallies[i];
        row_fail += !t.rows;
        dominated += t.dominates;
        if (i == 0 || t.margin > best) best = t.margin;
        if (i == 0 || t.margin < worst) worst = t.margin;
      }
      audited += ms.size();
      rows_ok = rows_ok && row_fail == 0;
      dominance_ok = dominance_ok && dominated == ms.size();
      o.details.push_back(pair.code() + " n=" + std::to_string(n) + ": |m| in [" + to_string(first) + ", " +
                          to_string(last) + "], " + std::to_string(ms.size()) + " shifts; sign+magnitude rows ok in " +
                          std::to_string(ms.size() - row_fail) + "; tail_lower - head_upper > 0 in " +
                          std::to_string(dominated) + " (margin range [" + fmt(worst.get_d()) + ", " +
                          fmt(best.get_d()) + "])");
    }
  }
  double secs = seconds_since(t0);
  o.pass = rows_ok && dominance_ok && secs < 60;
  o.summary = std::to_string(audited) + " shifts, rows " + (rows_ok ? "ok" : "FAIL") + ", tail dominance " +
              (dominance_ok ? "ok" : "FAIL") + ", " + fmt(secs, 3) + " s (limit 60 s)";
  if (!dominance_ok) {
    o.details.push_back(
        "tail dominance at desk-scale n: the head bound is twice the peaks of levels 1..n, dominated by the "
        "level-n tent peak q_{k_n+1}/(2 n^2), while the tail collects only levels n+1..N with the truncation "
        "budget |m|/N subtracted; at n = 2, 3 the head bound exceeds the tail for every shift, and raising N to 8 or 10 moves "
        "tail_lower by single units against a head bound in the hundreds");
  }
  return o;
}

// 7. |f_l(x + alpha_hat) - f_l(x)| < 1/l^2 + Lambda_l |alpha - alpha_hat| for l <= 5, 100 x.
Outcome uniform_bound() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::size_t checks = 0, violations = 0;
  Rational worst_ratio = 0;
  for (auto v : {Variant::main, Variant::tent}) {
    CocycleOptions opts;
    opts.truncation = 5;
    CocycleSpec c(golden(Strategy::greedy, v, 5), opts);
    for (int i = 0; i < 100; ++i) {
      Rational x = random_point(rng, 1000000);
      for (std::size_t l = 1; l <= 5; ++l) {
        ++checks;
        Rational d = abs(term(c, l, x, c.alpha_hat()));
        Rational bound = make_rational(1, Integer(l * l)) + c.substitution_error(l, 1);
        if (!(d < bound)) ++violations;
        Rational ratio = d * Integer(l * l);
        if (ratio > worst_ratio) worst_ratio = ratio;
      }
    }
  }
  o.pass = violations == 0;
  o.summary = std::to_string(checks - violations) + "/" + std::to_string(checks) +
              " exact checks, max l^2 |term| = " + fmt(worst_ratio.get_d());
  return o;
}

// 8. Fixed golden closed-form lower bound at n = 8 (q_257, q_258) above 0.9;
//    Falconer lower <= upper for every computed n; greedy trend reported.
Outcome dimension_bounds() {
  Outcome o;
  auto fixed = golden(Strategy::fixed, Variant::main, 9);
  auto [closed_lo, closed_hi] = closed_form_bounds(fixed, 8, 40);
  Rational tol = make_rational(1, ipow(Integer(2), 40));
  bool width_ok = closed_lo.width() <= tol;
  bool above = closed_lo.certainly_greater(make_rational(9, 10));
  o.details.push_back("fixed n=8: k=" + std::to_string(fixed.level(8).k) + ", closed-form lower in [" +
                      fmt(closed_lo.lo_d(), 15) + ", " + fmt(closed_lo.hi_d(), 15) + "], width " +
                      fmt(closed_lo.width().get_d(), 3) + " (tol 2^-40)");
  auto stats = nesting_stats(fixed, CountMode::formula);
  auto b = falconer_bounds(stats);
  for (const auto& r : b.rows) {
    o.details.push_back("fixed n=" + std::to_string(r.n) + ": lower " + fmt(r.lower.lo_d(), 10) + " <= upper " +
                        fmt(r.upper.hi_d(), 10) + ", closed forms " + fmt(r.closed_lower.lo_d(), 10) + " / " +
                        fmt(r.closed_upper.hi_d(), 10) + ", product-set 1 + lower = " +
                        fmt(1 + r.lower.lo_d(), 10));
  }
  auto greedy = golden(Strategy::greedy, Variant::main, 8);
  std::string trend = "greedy closed-form lower:";
  for (std::size_t n = 2; n <= 8; ++n) trend += " " + fmt(closed_form_bounds(greedy, n).first.mid_d(), 4);
  o.details.push_back(trend);
  o.pass = width_ok && above && b.ordered();
  o.summary = "closed-form lower at n=8 = " + fmt(closed_lo.mid_d(), 12) + (above ? " > 0.9" : " NOT > 0.9") +
              ", lower <= upper for " + std::to_string(b.rows.size()) + " rows" + (b.ordered() ? "" : " (VIOLATED)");
  return o;
}

// 9. sum_{l > n} 1/l^2 > 24/(25 n) true for n = 13..100, false for n = 1..12.
Outcome tail_side_condition() {
  Outcome o;
  bool ok = true;
  for (std::size_t n = 1; n <= 100; ++n) {
    auto tc = tail_condition(n, 1000000);
    bool expected = n >= 13;
    bool decided = tc.holds.has_value();
    if (!decided || *tc.holds != expected) {
      ok = false;
      o.details.push_back("n=" + std::to_string(n) + " " + (decided ? (*tc.holds ? "true" : "false") : "undecided"));
    }
    if (n == 12 || n == 13) {
      o.details.push_back("n=" + std::to_string(n) + ": tail in [" + fmt(tc.lower, 12) + ", " + fmt(tc.upper, 12) +
                          "] vs 24/(25n) = " + fmt(tc.threshold, 12));
    }
  }
  o.pass = ok;
  o.summary = ok ? "false for n = 1..12, true for n = 13..100" : "pattern mismatch";
  return o;
}

// 10. Fixed-point orbit t-coordinate vs exact phi_m at m = 10, 100, 1000, tent, 128 bits.
Outcome dynamics_cross_check() {
  Outcome o;
  CocycleSpec c(golden(Strategy::greedy, Variant::tent, 3));
  Rational x = make_rational(1, 4);
  OrbitOptions opts;
  opts.checkpoints = {10, 100, 1000};
  auto rec = orbit(c, x, 0, 1000, 128, opts);
  bool ok = true;
  for (std::size_t m : {10u, 100u, 1000u}) {
    Rational diff = abs(rec.t_at(m) - phi_m(c, x, static_cast<long>(m)));
    Rational bound = rec.bound_at(m);
    bool in = diff <= bound;
    ok = ok && in;
    o.details.push_back("m=" + std::to_string(m) + ": |t - phi_m| = " + fmt(diff.get_d(), 3) + " <= bound " +
                        fmt(bound.get_d(), 3) + (in ? "" : " (EXCEEDED)"));
  }
  o.pass = ok;
  o.summary = ok ? "orbit within the declared rounding bound at all three m" : "bound exceeded";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"convergent law", convergent_law},
      {"telescoping identity", telescoping},
      {"ratio window", ratio_window},
      {"Cantor nesting", cantor_nesting},
      {"aligned divergence", aligned_divergence},
      {"mixed divergence", mixed_divergence},
      {"uniform convergence bound", uniform_bound},
      {"dimension bounds", dimension_bounds},
      {"tail side condition", tail_side_condition},
      {"dynamics cross-check", dynamics_cross_check},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.summary.c_str());
    for (const auto& d : o.details) std::printf("         %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
