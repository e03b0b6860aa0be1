#pragma once

// The four nested interval families F^{s- s+}: at level n, A_n q_{k_n}
// intervals of length P_n/6 repeated with period P_n = 1/(A_n q_{k_n}).
// Offsets inside one period, in units of P_n:
//
//   ++  [-1/12, 1/12]     -+  [1/6, 1/3]
//   --  [5/12, 7/12]      +-  [2/3, 5/6]
//
// Positions are kept "unwrapped" (the ++ interval at j = 0 starts below 0);
// a() and b() give the endpoints on the circle [0, 1).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "besicovitch/exact.hpp"
#include "besicovitch/params.hpp"

namespace besicovitch {

class IndexOutOfRange : public std::out_of_range {
 public:
  explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

class DepthExceedsProfile : public std::out_of_range {
 public:
  explicit DepthExceedsProfile(const std::string& what) : std::out_of_range(what) {}
};

struct SignPair {
  int s_minus = 1;
  int s_plus = 1;

  bool aligned() const { return s_minus == s_plus; }
  bool operator==(const SignPair&) const = default;

  /// Interval offsets inside one period, in units of the period.
  std::pair<Rational, Rational> offsets() const {
    if (s_minus > 0 && s_plus > 0) return {Rational(-1, 12), Rational(1, 12)};
    if (s_minus < 0 && s_plus > 0) return {Rational(1, 6), Rational(1, 3)};
    if (s_minus < 0 && s_plus < 0) return {Rational(5, 12), Rational(7, 12)};
    return {Rational(2, 3), Rational(5, 6)};
  }

  /// "pp", "mm", "pm", "mp": first letter is s-, second s+.
  std::string code() const {
    return std::string(s_minus > 0 ? "p" : "m") + (s_plus > 0 ? "p" : "m");
  }

  static SignPair parse(const std::string& code) {
    if (code.size() != 2) throw std::invalid_argument("family must be pp, mm, pm or mp");
    auto one = [&](char c) {
      if (c == 'p') return 1;
      if (c == 'm') return -1;
      throw std::invalid_argument("family must be pp, mm, pm or mp");
    };
    return {one(code[0]), one(code[1])};
  }

  static SignPair pp() { return {1, 1}; }
  static SignPair mm() { return {-1, -1}; }
  static SignPair pm() { return {1, -1}; }
  static SignPair mp() { return {-1, 1}; }
};

struct TargetInterval {
  std::size_t n = 0;
  Integer j;
  Rational lo;  // unwrapped
  Rational hi;

  Rational length() const { return hi - lo; }
  Rational center() const { return (lo + hi) / 2; }
  Rational a() const { return frac(lo); }
  Rational b() const { return hi == 1 ? Rational(1) : frac(hi); }
  bool wraps() const { return lo < 0; }
};

inline TargetInterval interval(const Profile& prof, SignPair pair, std::size_t n, const Integer& j) {
  const auto& lv = prof.level(n);
  Integer cells = lv.cells();
  if (j < 0 || j >= cells) {
    throw IndexOutOfRange("interval index " + to_string(j) + " outside [0, " + to_string(cells) + ")");
  }
  auto [lo, hi] = pair.offsets();
  Rational P = lv.period();
  return {n, j, (j + lo) * P, (j + hi) * P};
}

/// Indices of level n+1 intervals contained (closed containment) in the
/// parent, ordered by position.
inline std::vector<Integer> children(const Profile& prof, SignPair pair, const TargetInterval& parent) {
  std::size_t n = parent.n + 1;
  const auto& lv = prof.level(n);
  Integer cells = lv.cells();
  auto [lo, hi] = pair.offsets();
  // j P + lo P >= parent.lo  and  j P + hi P <= parent.hi
  Integer first = iceil(parent.lo * cells - lo);
  Integer last = ifloor(parent.hi * cells - hi);
  std::vector<Integer> out;
  for (Integer j = first; j <= last; ++j) out.push_back(mod_floor(j, cells));
  return out;
}

/// Number of children of parent (n, j); same result as children().size()
/// using integer arithmetic only.
inline Integer child_count(const Profile& prof, SignPair pair, std::size_t n, const Integer& j) {
  Integer c = prof.level(n).cells();
  Integer C = prof.level(n + 1).cells();
  auto [lo, hi] = pair.offsets();
  Integer a = ifloor(lo * 12);  // offsets are twelfths
  Integer b = ifloor(hi * 12);
  Integer first = ceil_div((12 * j + a) * C - a * c, 12 * c);
  Integer last = floor_div((12 * j + b) * C - b * c, 12 * c);
  Integer count = last - first + 1;
  return count > 0 ? count : Integer(0);
}

struct DigitPath {
  std::vector<Integer> j;  // j[0] is the level-1 index
};

enum class SamplePolicy { leftmost, center, path };

struct SamplePoint {
  Rational x;
  DigitPath path;
  /// x_l = x - j_l P_l, taken in the representative that lands inside the
  /// offset band of the family.
  std::vector<Rational> reductions;
  std::size_t depth() const { return path.j.size(); }
};

inline Rational reduce(const Profile& prof, SignPair pair, std::size_t l, const Integer& j,
                       const Rational& x) {
  Rational P = prof.level(l).period();
  Rational base = x - j * P;
  auto [lo, hi] = pair.offsets();
  for (int k : {0, -1, 1}) {
    Rational cand = base + k;
    if (cand >= lo * P && cand <= hi * P) return cand;
  }
  throw std::logic_error("point outside the interval it was assigned to");
}

/// Nested point of depth N. leftmost/center pick j_1 = 0 and then the first or
/// middle child at each level; `path` follows the given indices after
/// checking every step is a child of the previous one. x is the center of the
/// deepest interval, reduced mod 1.
inline SamplePoint sample_point(const Profile& prof, SignPair pair, SamplePolicy policy,
                                std::size_t depth, const DigitPath* given = nullptr) {
  if (depth < 1 || depth > prof.depth()) {
    throw DepthExceedsProfile("sample depth " + std::to_string(depth) + " exceeds profile depth " +
                              std::to_string(prof.depth()));
  }
  if (policy == SamplePolicy::path && (!given || given->j.size() < depth)) {
    throw std::invalid_argument("digit path shorter than requested depth");
  }
  SamplePoint out;
  TargetInterval cur = interval(prof, pair, 1, policy == SamplePolicy::path ? given->j[0] : Integer(0));
  out.path.j.push_back(cur.j);
  for (std::size_t n = 2; n <= depth; ++n) {
    auto kids = children(prof, pair, cur);
    if (kids.empty()) throw std::logic_error("interval without children");
    Integer next;
    if (policy == SamplePolicy::leftmost) {
      next = kids.front();
    } else if (policy == SamplePolicy::center) {
      next = kids[kids.size() / 2];
    } else {
      next = given->j[n - 1];
      bool found = false;
      for (const auto& k : kids) found = found || k == next;
      if (!found) {
        throw std::invalid_argument("digit path entry " + to_string(next) + " at level " +
                                    std::to_string(n) + " is not a child of the previous interval");
      }
    }
    cur = interval(prof, pair, n, next);
    out.path.j.push_back(next);
  }
  out.x = frac(cur.center());
  for (std::size_t l = 1; l <= depth; ++l) {
    out.reductions.push_back(reduce(prof, pair, l, out.path.j[l - 1], out.x));
  }
  return out;
}

struct Membership {
  bool member = true;
  std::optional<std::size_t> first_failing_level;
  std::vector<Integer> j;  // containing interval per level checked
};

/// x in [0, 1): true iff x lies in some level-l interval for every l <= up_to.
inline Membership member(const Profile& prof, SignPair pair, const Rational& x, std::size_t up_to) {
  if (up_to > prof.depth()) {
    throw DepthExceedsProfile("membership depth exceeds profile depth");
  }
  Membership out;
  auto [lo, hi] = pair.offsets();
  for (std::size_t l = 1; l <= up_to; ++l) {
    Integer cells = prof.level(l).cells();
    Rational pos = x * cells;  // position in units of the period
    Integer j = ifloor(pos - lo);
    Rational offset = pos - j;
    if (offset >= lo && offset <= hi) {
      out.j.push_back(mod_floor(j, cells));
    } else {
      out.member = false;
      out.first_failing_level = l;
      return out;
    }
  }
  return out;
}

}  // namespace besicovitch
