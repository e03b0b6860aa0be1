#pragma once

// Construction levels: the subsequence k_n, the scale factors A_n, and the
// derived exact quantities (Lipschitz constants, periods, plateau heights),
// together with a validator that certifies every growth condition the
// construction relies on.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "besicovitch/cf_engine.hpp"
#include "besicovitch/exact.hpp"

namespace besicovitch {

enum class Strategy { fixed, greedy };
enum class Variant { main, tent };

inline std::string to_string(Strategy s) { return s == Strategy::fixed ? "fixed" : "greedy"; }
inline std::string to_string(Variant v) { return v == Variant::main ? "main" : "tent"; }

inline Strategy parse_strategy(const std::string& s) {
  if (s == "fixed") return Strategy::fixed;
  if (s == "greedy") return Strategy::greedy;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

inline Variant parse_variant(const std::string& s) {
  if (s == "main") return Variant::main;
  if (s == "tent") return Variant::tent;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

/// One construction level. `q` is q_{k_n}, `q_next` is q_{k_n + 1}.
struct LevelParams {
  std::size_t n = 0;
  std::size_t k = 0;
  Integer p;
  Integer q;
  Integer q_next;
  Integer A;

  /// Number of periods in [0, 1): A_n q_{k_n}.
  Integer cells() const { return A * q; }
  Rational lambda() const { return make_rational(q * q_next, Integer(n * n)); }
  Rational period() const { return make_rational(1, cells()); }
  Rational plateau() const { return make_rational(q_next, 3 * A * Integer(n * n)); }
  /// Lambda_n * period: the rise over one full period at slope Lambda_n.
  Rational rise() const { return make_rational(q_next, A * Integer(n * n)); }
  /// Maximum of the level profile for the given variant.
  Rational peak(Variant v) const { return v == Variant::main ? plateau() : rise() / 2; }
  /// q_{k_n+1} / A_n, the scale that drives the window bounds.
  Rational growth_scale() const { return make_rational(q_next, A); }
};

struct LevelScalars {
  Rational lambda;
  Rational period;
  Rational plateau;
  Integer A;
};

inline LevelScalars level_scalars(const LevelParams& level) {
  return {level.lambda(), level.period(), level.plateau(), level.A};
}

struct Profile {
  IrrationalSpec alpha = IrrationalSpec::golden();
  Strategy strategy = Strategy::greedy;
  Variant variant = Variant::main;
  std::size_t n_max = 0;
  std::vector<LevelParams> levels;  // levels[i] is level n = i + 1

  const LevelParams& level(std::size_t n) const {
    if (n < 1 || n > levels.size()) {
      throw std::out_of_range("level " + std::to_string(n) + " outside profile");
    }
    return levels[n - 1];
  }
  std::size_t depth() const { return levels.size(); }
  int k1_parity() const { return levels.empty() ? 1 : (levels.front().k % 2 == 0 ? 1 : -1); }
};

namespace detail {

inline Integer scale_factor(Variant variant, std::size_t n, const Integer& q_next) {
  if (variant == Variant::tent) return 1;
  // floor((3/4)^n q_{k_n+1})
  return floor_div(ipow(Integer(3), n) * q_next, ipow(Integer(4), n));
}

inline LevelParams make_level(ConvergentSequence& cf, Variant variant, std::size_t n, std::size_t k) {
  cf.extend_to(k + 1);
  LevelParams lp;
  lp.n = n;
  lp.k = k;
  lp.p = cf.p(k);
  lp.q = cf.q(k);
  lp.q_next = cf.q(k + 1);
  lp.A = scale_factor(variant, n, lp.q_next);
  return lp;
}

}  // namespace detail

/// Picks k_1 < k_2 < ... < k_{n_max}.
///
/// fixed:  k_n = 4n^2 + 1.
/// greedy: k_1 is the first index with q_{k_1} >= 9 (so q_{k_1+1} >= 9 too);
///         each later k_n is the smallest index of the same parity with
///         q_{k_n} >= 5 q_{k_{n-1}} and q_{k_n+1} >= 5 q_{k_{n-1}+1} (main), or
///         q_{k_n} >= 18 q_{k_{n-1}} (tent).
/// The tent variant forces A_n = 1.
inline Profile select_levels(const IrrationalSpec& spec, Strategy strategy, Variant variant,
                             std::size_t n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  Profile prof;
  prof.alpha = spec;
  prof.strategy = strategy;
  prof.variant = variant;
  prof.n_max = n_max;
  ConvergentSequence cf(spec, 16);

  if (strategy == Strategy::fixed) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      prof.levels.push_back(detail::make_level(cf, variant, n, 4 * n * n + 1));
    }
    return prof;
  }

  std::size_t k = 1;
  for (;; ++k) {
    cf.extend_to(k + 1);
    if (cf.q(k) >= 9) break;
  }
  prof.levels.push_back(detail::make_level(cf, variant, 1, k));
  for (std::size_t n = 2; n <= n_max; ++n) {
    const LevelParams& prev = prof.levels.back();
    std::size_t cand = prev.k + 2;
    for (;; cand += 2) {
      cf.extend_to(cand + 1);
      bool ok = variant == Variant::main
                    ? (cf.q(cand) >= 5 * prev.q && cf.q(cand + 1) >= 5 * prev.q_next)
                    : cf.q(cand) >= 18 * prev.q;
      if (ok) break;
    }
    prof.levels.push_back(detail::make_level(cf, variant, n, cand));
  }
  return prof;
}

/// Same strategy and variant, more levels. Level values for n <= n_max are
/// unchanged because selection is sequential.
inline Profile extend_profile(const Profile& prof, std::size_t levels) {
  if (levels <= prof.levels.size()) return prof;
  Profile out = select_levels(prof.alpha, prof.strategy, prof.variant, levels);
  for (std::size_t i = 0; i < prof.levels.size(); ++i) out.levels[i] = prof.levels[i];
  out.n_max = prof.n_max;
  return out;
}

enum class Relation { greater, greater_equal, less, equal };

inline std::string to_string(Relation r) {
  switch (r) {
    case Relation::greater: return ">";
    case Relation::greater_equal: return ">=";
    case Relation::less: return "<";
    case Relation::equal: return "==";
  }
  return "?";
}

/// One checked inequality `value relation bound`, both exact.
struct Certificate {
  std::string name;
  std::size_t n = 0;
  Rational value;
  Relation relation = Relation::greater;
  Rational bound;
  bool passed = false;
  bool required = true;  // informational certificates never fail a profile

  std::string describe() const {
    return name + "[n=" + std::to_string(n) + "]: " + to_string(value) + " " +
           to_string(relation) + " " + to_string(bound);
  }
};

inline Certificate certify(std::string name, std::size_t n, Rational value, Relation rel,
                           Rational bound, bool required = true) {
  bool ok = false;
  switch (rel) {
    case Relation::greater: ok = value > bound; break;
    case Relation::greater_equal: ok = value >= bound; break;
    case Relation::less: ok = value < bound; break;
    case Relation::equal: ok = value == bound; break;
  }
  return Certificate{std::move(name), n, std::move(value), rel, std::move(bound), ok, required};
}

class ValidationFailure : public std::runtime_error {
 public:
  explicit ValidationFailure(const std::string& what) : std::runtime_error(what) {}
};

struct Validation {
  std::vector<Certificate> certificates;
  /// (1/n) log q_{k_n}; must tend to infinity for full dimension, which no
  /// finite prefix can certify, so it is reported only.
  std::vector<double> log_growth;

  bool passed() const {
    for (const auto& c : certificates)
      if (c.required && !c.passed) return false;
    return true;
  }
  std::optional<Certificate> first_failure() const {
    for (const auto& c : certificates)
      if (c.required && !c.passed) return c;
    return std::nullopt;
  }
};

inline Validation validate_levels(const Profile& prof) {
  Validation out;
  const auto& L = prof.levels;
  if (L.empty()) throw std::invalid_argument("empty profile");

  for (std::size_t i = 1; i < L.size(); ++i) {
    out.certificates.push_back(certify("parity", i + 1, Rational(Integer(L[i].k % 2)),
                                       Relation::equal, Rational(Integer(L[0].k % 2))));
  }
  for (const auto& lv : L) {
    out.certificates.push_back(certify("scale_positive", lv.n, Rational(lv.A),
                                       Relation::greater_equal, Rational(1)));
  }

  if (prof.variant == Variant::tent) {
    for (const auto& lv : L) {
      out.certificates.push_back(
          certify("unit_scale", lv.n, Rational(lv.A), Relation::equal, Rational(1)));
    }
    for (std::size_t i = 1; i < L.size(); ++i) {
      out.certificates.push_back(certify("tent_growth", i + 1, make_rational(L[i].q, L[i - 1].q),
                                         Relation::greater_equal, Rational(18)));
    }
  } else {
    out.certificates.push_back(
        certify("first_next_denominator", 1, Rational(L[0].q_next), Relation::greater_equal, Rational(9)));
    out.certificates.push_back(certify("first_denominator", 1, Rational(L[0].q),
                                       Relation::greater_equal, Rational(9), false));
    for (std::size_t i = 1; i < L.size(); ++i) {
      const auto& cur = L[i];
      const auto& prev = L[i - 1];
      std::size_t n = cur.n;
      out.certificates.push_back(certify("denominator_growth", n, make_rational(cur.q, prev.q),
                                         Relation::greater_equal, Rational(5)));
      out.certificates.push_back(certify("next_denominator_growth", n,
                                         make_rational(cur.q_next, prev.q_next),
                                         Relation::greater_equal, Rational(5)));
    }
    for (const auto& lv : L) {
      // A_n > (3/4)^n q_{k_n+1} - 1
      Rational target = make_rational(ipow(Integer(3), lv.n) * lv.q_next, ipow(Integer(4), lv.n)) - 1;
      out.certificates.push_back(
          certify("scale_floor", lv.n, Rational(lv.A), Relation::greater, target));
    }
    for (std::size_t i = 1; i < L.size(); ++i) {
      const auto& cur = L[i];
      const auto& prev = L[i - 1];
      std::size_t n = cur.n;
      Rational down = make_rational(cur.A * prev.q_next, prev.A * cur.q_next);
      Rational up = make_rational(prev.A * cur.q_next, cur.A * prev.q_next);
      out.certificates.push_back(
          certify("scale_ratio_lower", n, down, Relation::greater, Rational(18, 25)));
      out.certificates.push_back(
          certify("scale_ratio_upper", n, up, Relation::greater, Rational(11, 10)));
      Rational ratio = cur.growth_scale() / prev.growth_scale();
      out.certificates.push_back(
          certify("ratio_window_low", n, ratio, Relation::greater, Rational(11, 10)));
      out.certificates.push_back(
          certify("ratio_window_high", n, ratio, Relation::less, Rational(25, 18)));
      // q_{k_n+1}/A_n >= 1.1^(n-1) q_{k_1+1}/A_1
      Rational floor_rise = L[0].growth_scale() *
                            make_rational(ipow(Integer(11), n - 1), ipow(Integer(10), n - 1));
      out.certificates.push_back(
          certify("exponential_rise", n, cur.growth_scale(), Relation::greater_equal, floor_rise));
    }
  }

  for (const auto& lv : L) {
    double lg = approx_log(lv.q) / static_cast<double>(lv.n);
    out.log_growth.push_back(lg);
  }
  return out;
}

inline void ensure_valid(const Profile& prof) {
  auto v = validate_levels(prof);
  if (auto bad = v.first_failure()) throw ValidationFailure("violated " + bad->describe());
}

}  // namespace besicovitch
