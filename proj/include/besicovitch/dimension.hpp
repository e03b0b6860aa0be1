#pragma once

// Nested-interval statistics of the four families and the resulting
// Hausdorff-dimension bounds
//
//   lower_n = log(m_2 ... m_n) / -log(m_{n+1} eps_{n+1})
//   upper_n = log(mbar_2 ... mbar_n) / -log(delta_n)
//
// with certified log enclosures, the closed forms
// 1 - n log 12 / log(A_n q_{k_n}) and 1 - n log 6 / log(A_n q_{k_n}), and a
// box-counting cross-check on a grid.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "besicovitch/exact.hpp"
#include "besicovitch/log_enclosure.hpp"
#include "besicovitch/params.hpp"
#include "besicovitch/targets.hpp"

namespace besicovitch {

class EnumerationCapExceeded : public std::runtime_error {
 public:
  explicit EnumerationCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

enum class CountMode { formula, measured };

inline std::string to_string(CountMode m) { return m == CountMode::formula ? "formula" : "measured"; }

inline CountMode parse_count_mode(const std::string& s) {
  if (s == "formula") return CountMode::formula;
  if (s == "measured") return CountMode::measured;
  throw std::invalid_argument("unknown count mode '" + s + "'");
}

struct LevelNesting {
  std::size_t n = 0;
  Integer cells;          // A_n q_{k_n}
  Rational delta;         // interval length 1/(6 cells)
  Rational epsilon;       // gap between neighbours 5/(6 cells)
  Rational epsilon_weak;  // 1/(2 cells), the rounder bound eps_n > 1/(2 cells)
  // children per level-(n-1) interval; set for n >= 2
  Rational m_formula;     // cells_n / (12 cells_{n-1})
  Rational mbar_formula;  // cells_n / (6 cells_{n-1})
  std::optional<Integer> m_measured;
  std::optional<Integer> mbar_measured;

  Rational m() const { return m_measured ? Rational(*m_measured) : m_formula; }
  Rational mbar() const { return mbar_measured ? Rational(*mbar_measured) : mbar_formula; }

  /// m_formula <= m <= mbar <= mbar_formula + 1 for measured counts.
  bool sandwiched() const {
    if (!m_measured || !mbar_measured) return true;
    Rational lo(*m_measured), hi(*mbar_measured);
    return m_formula <= lo && lo <= hi && hi <= mbar_formula + 1;
  }
};

struct NestingStats {
  SignPair pair;
  CountMode mode = CountMode::formula;
  std::vector<LevelNesting> levels;  // levels[i] is level i + 1

  const LevelNesting& level(std::size_t n) const {
    if (n < 1 || n > levels.size()) throw std::out_of_range("nesting level outside stats");
    return levels[n - 1];
  }
  std::size_t depth() const { return levels.size(); }
  bool sandwiched() const {
    for (const auto& l : levels)
      if (!l.sandwiched()) return false;
    return true;
  }
};

struct NestingOptions {
  /// Measured mode refuses to enumerate more than this many parents per level.
  Integer cap = 10000000;
  /// Levels to report; 0 means the whole profile.
  std::size_t levels = 0;
};

/// Min and max child counts over every level-(n-1) parent, by exact
/// containment.
inline std::pair<Integer, Integer> measure_children(const Profile& prof, SignPair pair, std::size_t n,
                                                    const Integer& cap) {
  if (n < 2) throw std::invalid_argument("child counts start at level 2");
  Integer parents = prof.level(n - 1).cells();
  if (parents > cap) {
    throw EnumerationCapExceeded("level " + std::to_string(n - 1) + " has " + to_string(parents) +
                                 " intervals, cap is " + to_string(cap));
  }
  Integer lo, hi;
  for (Integer j = 0; j < parents; ++j) {
    Integer c = child_count(prof, pair, n - 1, j);
    if (j == 0 || c < lo) lo = c;
    if (j == 0 || c > hi) hi = c;
  }
  return {lo, hi};
}

inline NestingStats nesting_stats(const Profile& prof, CountMode mode, SignPair pair = SignPair::pp(),
                                  const NestingOptions& opts = {}) {
  std::size_t depth = opts.levels == 0 ? prof.depth() : opts.levels;
  if (depth > prof.depth()) throw DepthExceedsProfile("nesting depth exceeds profile depth");
  NestingStats out;
  out.pair = pair;
  out.mode = mode;
  for (std::size_t n = 1; n <= depth; ++n) {
    LevelNesting ln;
    ln.n = n;
    ln.cells = prof.level(n).cells();
    ln.delta = make_rational(1, 6 * ln.cells);
    ln.epsilon = make_rational(5, 6 * ln.cells);
    ln.epsilon_weak = make_rational(1, 2 * ln.cells);
    if (n >= 2) {
      Integer prev = prof.level(n - 1).cells();
      ln.m_formula = make_rational(ln.cells, 12 * prev);
      ln.mbar_formula = make_rational(ln.cells, 6 * prev);
      if (mode == CountMode::measured) {
        auto [lo, hi] = measure_children(prof, pair, n, opts.cap);
        ln.m_measured = lo;
        ln.mbar_measured = hi;
      }
    }
    out.levels.push_back(std::move(ln));
  }
  return out;
}

struct DimensionRow {
  std::size_t n = 0;
  Enclosure lower;
  Enclosure upper;
  Enclosure closed_lower;
  Enclosure closed_upper;
};

struct DimensionBounds {
  CountMode mode = CountMode::formula;
  std::vector<DimensionRow> rows;  // n = 2 .. depth - 1

  /// lower_n <= upper_n for every row, decided on the enclosures (a row
  /// whose enclosures overlap counts as ordered only if lower.lo <= upper.hi).
  bool ordered() const {
    for (const auto& r : rows)
      if (r.lower.lo > r.upper.hi) return false;
    return true;
  }
};

struct FalconerOptions {
  unsigned tolerance_bits = 40;
  /// Use the weaker gap bound 1/(2 A_n q_{k_n}) instead of the true gap.
  bool weak_gap = false;
};

/// 1 - n log(base) / log(cells), both logs enclosed.
inline Enclosure closed_form(const Integer& cells, std::size_t n, unsigned base, unsigned tolerance_bits = 40) {
  Enclosure lc = log_enclosure(cells, tolerance_bits);
  Enclosure lb = log_enclosure(Integer(base), tolerance_bits);
  Enclosure one = Enclosure::exact(1);
  return one - (Rational(Integer(n)) * lb) / lc;
}

/// Closed-form pair at level n: (1 - n log 12 / log(A_n q_{k_n}), 1 - n log 6 / log(A_n q_{k_n})).
inline std::pair<Enclosure, Enclosure> closed_form_bounds(const Profile& prof, std::size_t n,
                                                          unsigned tolerance_bits = 40) {
  Integer cells = prof.level(n).cells();
  return {closed_form(cells, n, 12, tolerance_bits), closed_form(cells, n, 6, tolerance_bits)};
}

inline DimensionBounds falconer_bounds(const NestingStats& stats, const FalconerOptions& opts = {}) {
  if (stats.depth() < 3) throw std::invalid_argument("falconer bounds need at least three levels");
  DimensionBounds out;
  out.mode = stats.mode;
  Rational prod_m = 1;
  Rational prod_mbar = 1;
  for (std::size_t n = 2; n + 1 <= stats.depth(); ++n) {
    const auto& cur = stats.level(n);
    const auto& next = stats.level(n + 1);
    prod_m *= cur.m();
    prod_mbar *= cur.mbar();
    DimensionRow row;
    row.n = n;
    const Rational& eps = opts.weak_gap ? next.epsilon_weak : next.epsilon;
    Enclosure num_lo = log_enclosure(prod_m, opts.tolerance_bits);
    Enclosure den_lo = log_enclosure(1 / (next.m() * eps), opts.tolerance_bits);
    row.lower = num_lo / den_lo;
    Enclosure num_hi = log_enclosure(prod_mbar, opts.tolerance_bits);
    Enclosure den_hi = log_enclosure(1 / cur.delta, opts.tolerance_bits);
    row.upper = num_hi / den_hi;
    row.closed_lower = closed_form(cur.cells, n, 12, opts.tolerance_bits);
    row.closed_upper = closed_form(cur.cells, n, 6, opts.tolerance_bits);
    out.rows.push_back(std::move(row));
  }
  return out;
}

struct BoxCountOptions {
  /// Largest grid allowed (cells of the bitmap).
  std::uint64_t grid_cap = std::uint64_t(1) << 28;
  /// Largest number of level-n intervals enumerated.
  Integer interval_cap = 10000000;
  /// Grids g, g/2, ..., g/2^(ladder-1) for the slope.
  std::size_t ladder = 6;
};

/// Grid cells [k/g, (k+1)/g) of [0, 1) meeting the level-n union.
inline std::uint64_t occupied_cells(const Profile& prof, SignPair pair, std::size_t n, std::uint64_t g,
                                    const BoxCountOptions& opts = {}) {
  if (g == 0) throw std::invalid_argument("grid must be positive");
  if (g > opts.grid_cap) {
    throw EnumerationCapExceeded("grid " + std::to_string(g) + " exceeds cap " + std::to_string(opts.grid_cap));
  }
  Integer cells = prof.level(n).cells();
  if (cells > opts.interval_cap) {
    throw EnumerationCapExceeded("level " + std::to_string(n) + " has " + to_string(cells) +
                                 " intervals, cap is " + to_string(opts.interval_cap));
  }
  auto [lo, hi] = pair.offsets();
  Integer a = ifloor(lo * 12);
  Integer b = ifloor(hi * 12);
  Integer G(std::to_string(g));
  Integer den = 12 * cells;
  std::vector<bool> hit(g, false);
  std::uint64_t count = 0;
  for (Integer j = 0; j < cells; ++j) {
    // closed [ (12j + a)/(12 cells), (12j + b)/(12 cells) ]
    Integer k0 = floor_div((12 * j + a) * G, den);
    Integer k1 = floor_div((12 * j + b) * G, den);
    for (Integer k = k0; k <= k1; ++k) {
      Integer idx = mod_floor(k, G);
      auto i = static_cast<std::size_t>(idx.get_ui());
      if (!hit[i]) {
        hit[i] = true;
        ++count;
      }
    }
  }
  return count;
}

struct BoxCount {
  std::size_t n = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;  // (g, N(g)), g decreasing
  double slope = 0;  // least-squares slope of log N(g) against log g
};

inline BoxCount box_count(const Profile& prof, SignPair pair, std::size_t n, std::uint64_t g,
                          const BoxCountOptions& opts = {}) {
  if (opts.ladder < 2) throw std::invalid_argument("box counting needs at least two grids");
  BoxCount out;
  out.n = n;
  for (std::size_t i = 0; i < opts.ladder; ++i) {
    std::uint64_t gi = g >> i;
    if (gi < 1) break;
    out.counts.emplace_back(gi, occupied_cells(prof, pair, n, gi, opts));
  }
  if (out.counts.size() < 2) throw std::invalid_argument("grid too small for a slope");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double k = static_cast<double>(out.counts.size());
  for (auto [gi, ni] : out.counts) {
    double x = std::log(static_cast<double>(gi));
    double y = std::log(static_cast<double>(ni));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return out;
}

}  // namespace besicovitch
