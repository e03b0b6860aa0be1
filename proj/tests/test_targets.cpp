#include <gtest/gtest.h>

#include <random>

#include "besicovitch/targets.hpp"

using namespace besicovitch;

namespace {

const SignPair kPairs[] = {SignPair::pp(), SignPair::mm(), SignPair::pm(), SignPair::mp()};

// Children of `parent` found by testing every candidate near it for closed containment.
std::vector<Integer> children_by_scan(const Profile& prof, SignPair pair, const TargetInterval& parent) {
  const auto& next = prof.level(parent.n + 1);
  Integer cells = next.cells();
  Rational P = next.period();
  auto [lo, hi] = pair.offsets();
  std::vector<Integer> out;
  for (Integer j = ifloor(parent.lo / P) - 2; j <= iceil(parent.hi / P) + 2; ++j) {
    Rational a = (j + lo) * P;
    Rational b = (j + hi) * P;
    if (a >= parent.lo && b <= parent.hi) out.push_back(mod_floor(j, cells));
  }
  return out;
}

}  // namespace

TEST(SignPair, CodesAndOffsets) {
  for (auto p : kPairs) EXPECT_EQ(SignPair::parse(p.code()), p);
  EXPECT_TRUE(SignPair::pp().aligned());
  EXPECT_FALSE(SignPair::pm().aligned());
  EXPECT_EQ(SignPair::mp().offsets().first, make_rational(1, 6));
  EXPECT_EQ(SignPair::pm().offsets().second, make_rational(5, 6));
  EXPECT_THROW(SignPair::parse("px"), std::invalid_argument);
  // every family occupies a sixth of each period
  for (auto p : kPairs) EXPECT_EQ(p.offsets().second - p.offsets().first, make_rational(1, 6));
}

TEST(Interval, PositionsAndBounds) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, Variant::main, 2);
  auto iv = interval(prof, SignPair::pp(), 1, 0);
  EXPECT_TRUE(iv.wraps());
  EXPECT_EQ(iv.lo, make_rational(-1, 12 * 195));
  EXPECT_EQ(iv.length(), make_rational(1, 6 * 195));
  EXPECT_EQ(iv.center(), 0);
  EXPECT_THROW(interval(prof, SignPair::pp(), 1, 195), IndexOutOfRange);
  EXPECT_THROW(interval(prof, SignPair::pp(), 1, -1), IndexOutOfRange);
}

TEST(Children, AgreeWithContainmentScanForEveryParent) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, Variant::main, 3);
  for (auto pair : kPairs) {
    for (Integer j = 0; j < prof.level(1).cells(); ++j) {
      auto parent = interval(prof, pair, 1, j);
      auto kids = children(prof, pair, parent);
      EXPECT_EQ(kids, children_by_scan(prof, pair, parent)) << pair.code() << " j=" << j;
      EXPECT_EQ(child_count(prof, pair, 1, j), Integer(kids.size()));
    }
  }
}

TEST(Children, CountMatchesEnumerationAtLevelTwo) {
  auto prof = select_levels(IrrationalSpec::sqrt2m1(), Strategy::greedy, Variant::tent, 3);
  for (auto pair : kPairs) {
    for (Integer j = 0; j < prof.level(2).cells(); j += 7) {
      auto parent = interval(prof, pair, 2, j);
      EXPECT_EQ(child_count(prof, pair, 2, j), Integer(children_by_scan(prof, pair, parent).size()));
    }
  }
}

TEST(SamplePoint, LiesInEveryLevelOfItsPath) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, Variant::main, 5);
  for (auto pair : kPairs) {
    for (auto policy : {SamplePolicy::leftmost, SamplePolicy::center}) {
      auto s = sample_point(prof, pair, policy, 5);
      ASSERT_EQ(s.depth(), 5u);
      auto mem = member(prof, pair, s.x, 5);
      EXPECT_TRUE(mem.member);
      EXPECT_EQ(mem.j, s.path.j);
      for (std::size_t l = 1; l <= 5; ++l) {
        auto iv = interval(prof, pair, l, s.path.j[l - 1]);
        Rational r = s.reductions[l - 1];
        EXPECT_GE(r, iv.lo - iv.j * prof.level(l).period());
        EXPECT_LE(r, iv.hi - iv.j * prof.level(l).period());
      }
    }
  }
}

TEST(SamplePoint, CenterOfPlusPlusAtOriginIsZero) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, Variant::main, 4);
  auto s = sample_point(prof, SignPair::pp(), SamplePolicy::leftmost, 1);
  EXPECT_EQ(s.x, 0);
}

TEST(SamplePoint, PathPolicyValidatesEachStep) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, Variant::main, 3);
  auto s = sample_point(prof, SignPair::mp(), SamplePolicy::center, 3);
  auto again = sample_point(prof, SignPair::mp(), SamplePolicy::path, 3, &s.path);
  EXPECT_EQ(again.x, s.x);
  DigitPath bad = s.path;
  bad.j[2] += 1000;
  EXPECT_THROW(sample_point(prof, SignPair::mp(), SamplePolicy::path, 3, &bad), std::invalid_argument);
  EXPECT_THROW(sample_point(prof, SignPair::mp(), SamplePolicy::center, 4), DepthExceedsProfile);
}

TEST(Membership, RandomPointsAgreeWithIntervalScan) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, Variant::main, 2);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> num(0, 999999);
  for (auto pair : kPairs) {
    auto [lo, hi] = pair.offsets();
    for (int i = 0; i < 300; ++i) {
      Rational x = make_rational(num(rng), 1000000);
      // level 1 by direct scan over all intervals, with the wrap at 1
      bool inside = false;
      Integer cells = prof.level(1).cells();
      for (Integer j = 0; j < cells && !inside; ++j) {
        Rational a = (j + lo) / Rational(cells);
        Rational b = (j + hi) / Rational(cells);
        inside = (x >= a && x <= b) || (x + 1 >= a && x + 1 <= b) || (x - 1 >= a && x - 1 <= b);
      }
      auto mem = member(prof, pair, x, 1);
      EXPECT_EQ(mem.member, inside) << pair.code() << " " << to_string(x);
      if (!mem.member) {
        EXPECT_EQ(mem.first_failing_level, 1u);
      }
    }
  }
}
