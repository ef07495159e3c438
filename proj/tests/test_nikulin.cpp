#include <gtest/gtest.h>

#include "k3acm/effective.hpp"
#include "k3acm/errors.hpp"
#include "k3acm/nikulin.hpp"

using namespace k3acm;

namespace {

TwoElementaryInvariants invariants(const LatticeSpec& lat) {
  auto r = two_elementary_invariants(lat);
  EXPECT_TRUE(std::holds_alternative<TwoElementaryInvariants>(r));
  return std::get<TwoElementaryInvariants>(r);
}

}  // namespace

TEST(FixedLocus, DisplayedRows) {
  EXPECT_EQ(fixed_locus(10, 10, 0).shape, FixedLocusShape::Empty);
  EXPECT_EQ(fixed_locus(10, 8, 0).shape, FixedLocusShape::TwoElliptic);
  FixedLocusDescriptor g = fixed_locus(9, 9, 1);
  EXPECT_EQ(g.shape, FixedLocusShape::GeneralSum);
  EXPECT_EQ(g.genus, 2);
  EXPECT_EQ(g.rational_tail_count, 0);
  EXPECT_TRUE(g.elliptic_type);
  // The fixed curve is X with X^2 = 2 = 2g - 2.
  EXPECT_EQ(self_int(build_dp9(), dp9_classes().X), 2 * g.genus - 2);
}

TEST(FixedLocus, GeneralFormulaOverTheAdmissibleRegion) {
  int checked = 0;
  for (int rho = 1; rho <= 20; ++rho)
    for (int a = 0; a <= rho; ++a)
      for (int delta : {0, 1}) {
        bool ok = (rho - a) % 2 == 0 && rho + a <= 22;
        if (!ok) {
          EXPECT_THROW(fixed_locus(rho, a, delta), PreconditionError) << rho << "," << a;
          continue;
        }
        FixedLocusDescriptor f = fixed_locus(rho, a, delta);
        if (f.shape != FixedLocusShape::GeneralSum) continue;
        ASSERT_EQ(2 * f.genus, 22 - rho - a);
        ASSERT_EQ(2 * f.rational_tail_count, rho - a);
        ASSERT_EQ(f.elliptic_type, f.genus >= 2);
        ++checked;
      }
  EXPECT_GT(checked, 100);
}

TEST(FixedLocus, Preconditions) {
  EXPECT_THROW(fixed_locus(0, 0, 1), PreconditionError);
  EXPECT_THROW(fixed_locus(21, 1, 1), PreconditionError);
  EXPECT_THROW(fixed_locus(10, 11, 1), PreconditionError);
  EXPECT_THROW(fixed_locus(9, 8, 1), PreconditionError);
  EXPECT_THROW(fixed_locus(12, 12, 1), PreconditionError);
  EXPECT_THROW(fixed_locus(9, 9, 2), PreconditionError);
}

TEST(RankA, Examples) {
  LatticeSpec s = classify_rank_a(9, 1);
  IntMatrix expected(9, IntVec(9, 0));
  expected[0][0] = 2;
  for (int i = 1; i < 9; ++i) expected[i][i] = -2;
  EXPECT_EQ(s.gram(), expected);
  EXPECT_EQ(classify_rank_a(2, 0).gram(), (IntMatrix{{0, 2}, {2, 0}}));
  EXPECT_THROW(classify_rank_a(3, 0), PreconditionError);
  EXPECT_THROW(classify_rank_a(0, 1), PreconditionError);
  EXPECT_THROW(classify_rank_a(10, 1), PreconditionError);
}

TEST(RankA, InvariantsRoundTrip) {
  for (int a = 1; a <= 9; ++a) {
    LatticeSpec s = classify_rank_a(a, 1);
    EXPECT_EQ(invariants(s), (TwoElementaryInvariants{a, a, 1})) << a;
    EXPECT_EQ(signature(s), (Signature{1, a - 1, 0}));
    EXPECT_TRUE(is_even(s));
  }
  EXPECT_EQ(invariants(classify_rank_a(2, 0)), (TwoElementaryInvariants{2, 2, 0}));
}

TEST(Dp9, IdentitiesOfTheNamedClasses) {
  LatticeSpec lat = build_dp9();
  const auto& c = dp9_classes();
  EXPECT_EQ(invariants(lat), (TwoElementaryInvariants{9, 9, 1}));
  EXPECT_EQ(lat.ample_ref(), c.X);
  EXPECT_EQ(self_int(lat, c.X), 2);
  EXPECT_EQ(self_int(lat, c.H), 18);
  EXPECT_EQ(c.H, 3 * c.X);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(self_int(lat, c.D[i]), -2);
    EXPECT_EQ(pair(lat, c.X, c.D[i]), 2);
    EXPECT_EQ(c.D[i], c.B - c.E[2 * i] - c.E[2 * i + 1]);
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      EXPECT_EQ(pair(lat, c.D[i], c.D[j]), 2);
      EXPECT_EQ(is_effective(lat, c.D[i] - c.D[j]).status, Effectivity::NotEffective);
    }
  }
}

TEST(Builtins, Registry) {
  EXPECT_EQ(builtin_names(), (std::vector<std::string>{"dp9", "quartic-demo", "u2"}));
  EXPECT_EQ(builtin_lattice("dp9").gram(), build_dp9().gram());
  EXPECT_EQ(builtin_lattice("quartic-demo").gram(), (IntMatrix{{4, 0}, {0, -2}}));
  LatticeSpec u = builtin_lattice("u2");
  EXPECT_EQ(u.gram(), (IntMatrix{{0, 2}, {2, 0}}));
  EXPECT_EQ(invariants(u), (TwoElementaryInvariants{2, 2, 0}));
  EXPECT_THROW(builtin_lattice("e8"), InputError);
}

TEST(DegreeConstraints, SquareTwo) {
  DegreeConstraints c = invariant_degree_constraints(2, 0, 1);
  EXPECT_EQ(c.invariant, (std::set<Int>{2, 6}));
  EXPECT_EQ(c.non_invariant, (std::set<Int>{1, 2}));
  EXPECT_FALSE(c.allows(4));
  EXPECT_TRUE(c.allows(6));
  for (int hi = 1; hi <= 12; ++hi) EXPECT_FALSE(invariant_degree_constraints(2, 0, hi).allows(4)) << hi;
}

TEST(DegreeConstraints, SquareZeroInvariantBranch) {
  DegreeConstraints c = invariant_degree_constraints(0, 0, 5);
  EXPECT_EQ(c.invariant, (std::set<Int>{4}));
  EXPECT_TRUE(c.non_invariant.empty());
  for (const auto& v : c.invariant) EXPECT_LE(v, 4);
}

TEST(DegreeConstraints, HurwitzArithmetic) {
  for (int s = 0; s <= 40; s += 2) {
    DegreeConstraints c = invariant_degree_constraints(s, 0, 20);
    for (const auto& v : c.invariant) {
      ASSERT_GT(v, 0);
      ASSERT_EQ((Int(s) - v) % 4, 0);
    }
    for (const auto& v : c.non_invariant) ASSERT_LE(v, s);
  }
}

TEST(DegreeConstraints, Preconditions) {
  EXPECT_THROW(invariant_degree_constraints(3, 0, 1), PreconditionError);
  EXPECT_THROW(invariant_degree_constraints(-2, 0, 1), PreconditionError);
  EXPECT_THROW(invariant_degree_constraints(2, 2, 1), PreconditionError);
  EXPECT_THROW(invariant_degree_constraints(2, -1, 1), PreconditionError);
}
