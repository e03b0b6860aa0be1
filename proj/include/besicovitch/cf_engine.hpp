#pragma once

// Continued-fraction expansion of a quadratic irrational alpha in (0, 1),
// its convergents p_n/q_n, and exact rational enclosures of alpha.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "besicovitch/exact.hpp"

namespace besicovitch {

/// Raised when a rational enclosure of alpha is too coarse to decide a
/// comparison. Callers retry with a deeper bracket.
class IndecisiveBracket : public std::runtime_error {
 public:
  explicit IndecisiveBracket(const std::string& what) : std::runtime_error(what) {}
};

/// alpha = [0; a_1, a_2, ...] given by a finite head followed by a tail that
/// repeats forever. a_0 = 0 is implicit; `head` and `tail` hold a_1, a_2, ...
class IrrationalSpec {
 public:
  IrrationalSpec(std::vector<unsigned long> head, std::vector<unsigned long> tail,
                 std::string name = "periodic")
      : head_(std::move(head)), tail_(std::move(tail)), name_(std::move(name)) {
    if (tail_.empty()) throw std::invalid_argument("periodic tail must be nonempty");
    auto positive = [](unsigned long a) { return a >= 1; };
    if (!std::all_of(head_.begin(), head_.end(), positive) ||
        !std::all_of(tail_.begin(), tail_.end(), positive)) {
      throw std::invalid_argument("partial quotients a_i (i >= 1) must be >= 1");
    }
  }

  static IrrationalSpec golden() { return IrrationalSpec({}, {1}, "golden"); }
  static IrrationalSpec sqrt2m1() { return IrrationalSpec({}, {2}, "sqrt2m1"); }

  /// Parses "golden", "sqrt2m1", "quotients=a1,a2,..." (purely periodic) or
  /// "periodic=h1,h2,...;t1,t2,..." (a leading 0 in the head is taken as a_0).
  static IrrationalSpec parse(const std::string& text) {
    if (text == "golden") return golden();
    if (text == "sqrt2m1") return sqrt2m1();
    auto list = [](const std::string& s) {
      std::vector<unsigned long> out;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        unsigned long v = 0;
        try {
          v = std::stoul(item, &used);
        } catch (const std::exception&) {
          throw std::invalid_argument("bad partial quotient '" + item + "'");
        }
        if (used != item.size()) throw std::invalid_argument("bad partial quotient '" + item + "'");
        out.push_back(v);
      }
      return out;
    };
    const std::string quotients = "quotients=";
    const std::string periodic = "periodic=";
    if (text.rfind(quotients, 0) == 0) {
      return IrrationalSpec({}, list(text.substr(quotients.size())), text);
    }
    if (text.rfind(periodic, 0) == 0) {
      std::string body = text.substr(periodic.size());
      auto semi = body.find(';');
      if (semi == std::string::npos) throw std::invalid_argument("periodic= needs 'head;tail'");
      auto head = list(body.substr(0, semi));
      if (!head.empty() && head.front() == 0) head.erase(head.begin());
      return IrrationalSpec(std::move(head), list(body.substr(semi + 1)), text);
    }
    throw std::invalid_argument("unknown alpha '" + text + "'");
  }

  /// a_i; a_0 = 0.
  unsigned long quotient(std::size_t i) const {
    if (i == 0) return 0;
    if (i <= head_.size()) return head_[i - 1];
    return tail_[(i - 1 - head_.size()) % tail_.size()];
  }

  const std::vector<unsigned long>& head() const { return head_; }
  const std::vector<unsigned long>& tail() const { return tail_; }
  const std::string& name() const { return name_; }

  /// Canonical text that parse() maps back to an equal spec.
  std::string str() const {
    auto join = [](const std::vector<unsigned long>& v) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
      return out;
    };
    if (head_.empty() && tail_ == std::vector<unsigned long>{1}) return "golden";
    if (head_.empty() && tail_ == std::vector<unsigned long>{2}) return "sqrt2m1";
    if (head_.empty()) return "quotients=" + join(tail_);
    return "periodic=" + join(head_) + ";" + join(tail_);
  }

  bool operator==(const IrrationalSpec& o) const { return head_ == o.head_ && tail_ == o.tail_; }

 private:
  std::vector<unsigned long> head_;
  std::vector<unsigned long> tail_;
  std::string name_;
};

struct Convergent {
  std::size_t index = 0;
  Integer p;
  Integer q;

  /// (-1)^n, the side of alpha this convergent sits on.
  int parity() const { return index % 2 == 0 ? 1 : -1; }
  Rational value() const { return make_rational(p, q); }
};

/// Convergents p_0/q_0 ... p_N/q_N by the standard recurrence, seeded with
/// p_{-1} = 1, q_{-1} = 0, p_0 = 0, q_0 = 1.
class ConvergentSequence {
 public:
  explicit ConvergentSequence(IrrationalSpec spec, std::size_t upto = 32) : spec_(std::move(spec)) {
    p_.emplace_back(0);
    q_.emplace_back(1);
    extend_to(upto);
  }

  void extend_to(std::size_t n) {
    while (p_.size() <= n) {
      std::size_t i = p_.size();
      unsigned long a = spec_.quotient(i);
      Integer p_prev2 = i >= 2 ? p_[i - 2] : Integer(1);
      Integer q_prev2 = i >= 2 ? q_[i - 2] : Integer(0);
      p_.push_back(a * p_[i - 1] + p_prev2);
      q_.push_back(a * q_[i - 1] + q_prev2);
    }
  }

  std::size_t size() const { return p_.size(); }
  const IrrationalSpec& spec() const { return spec_; }

  const Integer& p(std::size_t n) const { return checked(p_, n); }
  const Integer& q(std::size_t n) const { return checked(q_, n); }

  Convergent at(std::size_t n) const { return Convergent{n, p(n), q(n)}; }

 private:
  static const Integer& checked(const std::vector<Integer>& v, std::size_t n) {
    if (n >= v.size()) throw std::out_of_range("convergent index beyond computed depth");
    return v[n];
  }

  IrrationalSpec spec_;
  std::vector<Integer> p_;
  std::vector<Integer> q_;
};

inline Convergent convergent(const IrrationalSpec& spec, std::size_t n) {
  return ConvergentSequence(spec, n).at(n);
}

/// lo < alpha < hi with both ends consecutive convergents.
struct RationalBracket {
  Rational lo;
  Rational hi;
  std::size_t depth = 0;

  Rational width() const { return hi - lo; }
  bool strictly_contains(const Rational& r) const { return lo < r && r < hi; }
};

inline RationalBracket alpha_bracket(const ConvergentSequence& cf, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("bracket depth must be >= 1");
  Rational a = make_rational(cf.p(depth), cf.q(depth));
  Rational b = make_rational(cf.p(depth + 1), cf.q(depth + 1));
  if (depth % 2 == 0) return {a, b, depth};
  return {b, a, depth};
}

inline RationalBracket alpha_bracket(const IrrationalSpec& spec, std::size_t depth) {
  return alpha_bracket(ConvergentSequence(spec, depth + 1), depth);
}

/// Sign of alpha - r, deciding with brackets of increasing depth starting at
/// `start_depth`; throws IndecisiveBracket past `max_depth`.
inline int compare_alpha(const IrrationalSpec& spec, const Rational& r, std::size_t start_depth,
                         std::size_t max_depth) {
  ConvergentSequence cf(spec, max_depth + 1);
  for (std::size_t d = std::max<std::size_t>(start_depth, 1); d <= max_depth; ++d) {
    auto b = alpha_bracket(cf, d);
    if (r <= b.lo) return 1;
    if (r >= b.hi) return -1;
  }
  throw IndecisiveBracket("alpha vs " + to_string(r) + " undecided up to depth " +
                          std::to_string(max_depth));
}

/// Outcome of checking 1/(2 q_n q_{n+1}) < (-1)^n (alpha - p_n/q_n) < 1/(q_n q_{n+1}).
struct GapCertificate {
  std::size_t n = 0;
  int sign = 0;  // sign of alpha - p_n/q_n
  Rational lower;
  Rational upper;
  Rational gap_lo;  // enclosure of (-1)^n (alpha - p_n/q_n)
  Rational gap_hi;
  std::size_t depth = 0;
  bool passed = false;
};

/// Decides both inequalities exactly. The enclosure starts at depth n + 3 and
/// deepens until decisive or `max_depth` is exceeded.
inline GapCertificate gap_bounds_check(const IrrationalSpec& spec, std::size_t n,
                                       std::size_t max_depth = 0) {
  if (n < 1) throw std::invalid_argument("gap check needs n >= 1");
  if (max_depth == 0) max_depth = n + 64;
  ConvergentSequence cf(spec, std::max(max_depth, n + 1) + 1);
  const Rational pq = make_rational(cf.p(n), cf.q(n));
  const Rational qq = Rational(cf.q(n) * cf.q(n + 1));
  GapCertificate cert;
  cert.n = n;
  cert.lower = 1 / (2 * qq);
  cert.upper = 1 / qq;
  const int s = n % 2 == 0 ? 1 : -1;
  for (std::size_t d = n + 3; d <= max_depth; ++d) {
    auto b = alpha_bracket(cf, d);
    Rational a = s * (b.lo - pq);
    Rational c = s * (b.hi - pq);
    if (a > c) std::swap(a, c);
    cert.gap_lo = a;
    cert.gap_hi = c;
    cert.depth = d;
    bool lower_ok = a > cert.lower;
    bool upper_ok = c < cert.upper;
    bool lower_fails = c <= cert.lower;
    bool upper_fails = a >= cert.upper;
    if ((lower_ok || lower_fails) && (upper_ok || upper_fails)) {
      // Both decided. The enclosure lies on one side of zero once decisive.
      cert.sign = a > 0 ? s : (c < 0 ? -s : 0);
      cert.passed = lower_ok && upper_ok;
      return cert;
    }
  }
  throw IndecisiveBracket("gap bounds for n = " + std::to_string(n) +
                          " undecided up to depth " + std::to_string(max_depth));
}

}  // namespace besicovitch
