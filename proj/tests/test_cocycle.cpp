#include <gtest/gtest.h>

#include <random>

#include "besicovitch/cocycle.hpp"

using namespace besicovitch;

namespace {

// Distance from x to the lattice P Z, by explicit rounding to the nearest multiple.
Rational distance_to_lattice(const Rational& x, const Integer& cells) {
  Rational s = x * cells;
  Integer below = ifloor(s);
  Rational up = Rational(below + 1) - s;
  Rational down = s - below;
  return (up < down ? up : down) / cells;
}

// Main shape: Lambda clamp(d - P/12, 0, P/3); tent: Lambda d.
Rational shape_oracle(const LevelParams& lv, Variant v, const Rational& x) {
  Integer cells = lv.A * lv.q;
  Rational lambda = make_rational(lv.q * lv.q_next, Integer(lv.n * lv.n));
  Rational d = distance_to_lattice(x, cells);
  if (v == Variant::tent) return lambda * d;
  Rational P = make_rational(1, cells);
  Rational clipped = d - P / 12;
  if (clipped < 0) clipped = 0;
  if (clipped > P / 3) clipped = P / 3;
  return lambda * clipped;
}

Rational random_point(std::mt19937_64& rng, long max_den) {
  std::uniform_int_distribution<long> den_dist(1, max_den);
  long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(0, den - 1);
  return make_rational(num_dist(rng), den);
}

CocycleSpec make_cocycle(Variant v, std::size_t n_max = 3, std::optional<std::size_t> trunc = {}) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, v, n_max);
  CocycleOptions opts;
  opts.truncation = trunc;
  return CocycleSpec(prof, opts);
}

}  // namespace

TEST(LevelShape, MatchesClampedLatticeDistance) {
  std::mt19937_64 rng(11);
  for (auto v : {Variant::main, Variant::tent}) {
    auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, v, 3);
    for (std::size_t n = 1; n <= 3; ++n) {
      LevelShape s(prof.level(n), v);
      for (int i = 0; i < 400; ++i) {
        Rational x = random_point(rng, 100000);
        EXPECT_EQ(s.value(x), shape_oracle(prof.level(n), v, x)) << to_string(x);
      }
      // exact breakpoints
      for (const auto& [at, val] : s.breakpoints()) EXPECT_EQ(val, shape_oracle(prof.level(n), v, at));
    }
  }
}

TEST(LevelShape, PeakAndPeriodicity) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, Variant::main, 2);
  LevelShape s(prof.level(2), Variant::main);
  Rational P = s.period();
  EXPECT_EQ(s.value(P / 2), s.peak());
  EXPECT_EQ(s.peak(), prof.level(2).plateau());
  EXPECT_EQ(s.value(Rational(0)), 0);
  EXPECT_EQ(s.value(P / 12), 0);
  Rational x(3, 1000);
  EXPECT_EQ(s.value(x), s.value(x + 7 * P));
  EXPECT_EQ(s.value(x), s.value(x - 1));
  LevelShape t(prof.level(2), Variant::tent);
  EXPECT_EQ(t.value(P / 2), prof.level(2).rise() / 2);
}

TEST(LevelShape, ValueIsLipschitz) {
  std::mt19937_64 rng(3);
  auto prof = select_levels(IrrationalSpec::sqrt2m1(), Strategy::greedy, Variant::main, 2);
  LevelShape s(prof.level(2), Variant::main);
  for (int i = 0; i < 200; ++i) {
    Rational x = random_point(rng, 50000);
    Rational y = random_point(rng, 50000);
    EXPECT_LE(abs(s.value(x) - s.value(y)), s.lipschitz() * abs(x - y));
  }
}

TEST(CocycleSpec, AlphaHatRespectsGuardAndBracket) {
  auto c = make_cocycle(Variant::main);
  EXPECT_EQ(c.truncation(), 6u);
  const auto& lv = c.level(c.truncation());
  Rational max_lambda = make_rational(lv.q * lv.q_next, Integer(lv.n * lv.n));
  EXPECT_GT(Rational(c.alpha_hat().get_den()), c.guard() * max_lambda);
  EXPECT_TRUE(c.bracket().lo <= c.alpha_hat() && c.alpha_hat() <= c.bracket().hi);
  EXPECT_LE(c.bracket().width(), c.alpha_error());
}

TEST(CocycleSpec, RejectsAlphaDepthBelowGuard) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, Variant::main, 2);
  CocycleOptions opts;
  opts.alpha_depth = 8;
  EXPECT_THROW(CocycleSpec(prof, opts), std::invalid_argument);
}

TEST(CocycleSpec, BudgetsScaleWithM) {
  auto c = make_cocycle(Variant::tent, 2, 4);
  EXPECT_EQ(c.truncation_budget(10), make_rational(10, 4));
  EXPECT_EQ(c.substitution_budget(-6), 6 * c.lambda_sum() * c.alpha_error());
  EXPECT_EQ(c.budget(3), c.substitution_budget(3) + c.truncation_budget(3));
}

TEST(ErgodicSums, TelescopedSumEqualsDirectOrbitSum) {
  std::mt19937_64 rng(2024);
  for (auto v : {Variant::main, Variant::tent}) {
    auto c = make_cocycle(v, 3);
    for (int trial = 0; trial < 3; ++trial) {
      Rational x = random_point(rng, 10000);
      for (long m = -20; m <= 20; ++m) {
        EXPECT_EQ(phi_m(c, x, m), birkhoff(c, x, m)) << to_string(x) << " m=" << m;
      }
    }
  }
}

TEST(ErgodicSums, TermsScaledTermsAndTotalAgree) {
  auto c = make_cocycle(Variant::main, 3);
  Rational x(5, 17);
  ErgodicSums sums(c, x);
  for (long m : {-300L, -7L, 1L, 2L, 999L}) {
    auto terms = sums.terms(m);
    auto scaled = sums.scaled_terms(m);
    Rational total = 0;
    for (std::size_t l = 1; l <= c.truncation(); ++l) {
      Rational direct = term(c, l, x, Rational(m) * c.alpha_hat());
      EXPECT_EQ(terms[l - 1], direct);
      EXPECT_EQ(make_rational(scaled[l - 1], sums.common_den()), direct);
      total += direct;
    }
    EXPECT_EQ(sums.total(m), total);
  }
  EXPECT_EQ(phi_m(c, x, 0), 0);
}

TEST(ErgodicSums, CocycleRelation) {
  // phi^(m+k)(x) = phi^(m)(x) + phi^(k)(x + m alpha_hat)
  auto c = make_cocycle(Variant::tent, 2);
  Rational x(2, 9);
  for (long m : {-5L, 3L, 12L}) {
    for (long k : {-4L, 1L, 9L}) {
      Rational shifted = frac(x + Rational(m) * c.alpha_hat());
      EXPECT_EQ(phi_m(c, x, m + k), phi_m(c, x, m) + phi_m(c, shifted, k));
    }
  }
}

TEST(Phi, TermsStayBelowInverseSquares) {
  std::mt19937_64 rng(5);
  for (auto v : {Variant::main, Variant::tent}) {
    auto c = make_cocycle(v, 3);
    for (int i = 0; i < 50; ++i) {
      Rational x = random_point(rng, 100000);
      for (std::size_t l = 1; l <= c.truncation(); ++l) {
        Rational bound = make_rational(1, Integer(l * l)) + c.substitution_error(l, 1);
        EXPECT_LT(abs(term(c, l, x, c.alpha_hat())), bound) << "l=" << l;
      }
    }
  }
}
