#include <gtest/gtest.h>

#include <set>

#include "k3acm/acm.hpp"
#include "k3acm/errors.hpp"
#include "k3acm/nikulin.hpp"
#include "oracles.hpp"

using namespace k3acm;

namespace {

const LatticeSpec& dp9() {
  static const LatticeSpec lat = build_dp9();
  return lat;
}

// Rank-2 lattice spanned by H and D with prescribed H^2, H.D, D^2; H is the ample reference.
LatticeSpec plane(long h2, long hd, long d2) {
  return LatticeSpec("plane", {"H", "D"}, {{h2, hd}, {hd, d2}}, DivisorClass{1, 0}, true);
}

const DivisorClass kH{1, 0};
const DivisorClass kD{0, 1};

std::vector<ThreeValued> three_values() { return {ThreeValued::yes(), ThreeValued::no(), ThreeValued::unknown("open")}; }

}  // namespace

TEST(Genus2Rows, NumericTable) {
  EXPECT_EQ(genus2_row(-2, 6)->label, "a");
  EXPECT_EQ(genus2_row(0, 9)->label, "b");
  EXPECT_FALSE(genus2_row(6, 9));
  EXPECT_EQ(genus2_row(2, 12)->conditions, std::vector<Condition>{Condition::EmptyHminusD});
  EXPECT_TRUE(genus2_row(2, 6)->conditions.empty());
  EXPECT_EQ(genus2_row(20, 21)->label, "h");
  EXPECT_EQ(genus2_row(32, 27)->label, "h");
  EXPECT_FALSE(genus2_row(38, 30));
  EXPECT_EQ(genus2_row(14, 18)->label, "g");
}

TEST(Genus2Rows, DivisibilityByThreeIsNecessary) {
  for (int s = -2; s <= 40; ++s)
    for (int hd = 1; hd <= 40; ++hd)
      if (hd % 3 != 0) ASSERT_FALSE(genus2_row(s, hd)) << s << "," << hd;
}

TEST(Genus2, VerdictsOnRealizingLattices) {
  ACMVerdict a = classify_genus2(plane(18, 3, -2), kH, kD);
  EXPECT_EQ(a.status, AcmStatus::AcmInitialized);
  EXPECT_EQ(a.case_label, "a");
  ACMVerdict b = classify_genus2(plane(18, 9, 0), kH, kD);
  EXPECT_EQ(b.status, AcmStatus::AcmInitialized);
  EXPECT_EQ(b.case_label, "b");
  ACMVerdict h = classify_genus2(plane(18, 21, 20), kH, kD);
  EXPECT_EQ(h.status, AcmStatus::AcmInitialized);
  EXPECT_EQ(h.case_label, "h");
  EXPECT_TRUE(h.unresolved.empty());
  ACMVerdict g = classify_genus2(plane(18, 18, 14), kH, kD);
  EXPECT_EQ(g.case_label, "g");
}

TEST(Genus2, Dp9Verdicts) {
  const auto& c = dp9_classes();
  ACMVerdict d1 = classify_genus2(dp9(), c.H, c.D[0]);
  EXPECT_EQ(d1.status, AcmStatus::AcmInitialized);
  EXPECT_EQ(d1.case_label, "a");
  ACMVerdict b = classify_genus2(dp9(), c.H, c.B);
  EXPECT_EQ(b.status, AcmStatus::Not);
  EXPECT_EQ(b.D_sq, 2);
  EXPECT_EQ(b.HD, 18);
  EXPECT_FALSE(b.case_label);
}

TEST(Genus2, FailedSideConditionGivesNot) {
  // H - D = C1 + C2 with disjoint (-2)-classes, so |H - D| is not empty.
  LatticeSpec lat("pair", {"H", "C1", "C2"}, {{18, 3, 3}, {3, -2, 0}, {3, 0, -2}}, DivisorClass{1, 0, 0}, true);
  DivisorClass H{1, 0, 0}, D{1, -1, -1};
  ASSERT_EQ(self_int(lat, D), 2);
  ASSERT_EQ(pair(lat, H, D), 12);
  ACMVerdict v = classify_genus2(lat, H, D, ClassifyOptions{true});
  EXPECT_EQ(v.status, AcmStatus::Not);
  ASSERT_EQ(v.unresolved.size(), 1u);
  EXPECT_EQ(v.unresolved[0].condition, "|H-D| = empty");
  EXPECT_TRUE(v.unresolved[0].value.is_no());
}

TEST(Genus2, Preconditions) {
  const auto& c = dp9_classes();
  EXPECT_THROW(classify_genus2(dp9(), c.X, c.D[0]), PreconditionError);
  EXPECT_THROW(classify_genus2(dp9(), c.H, -c.D[0]), PreconditionError);
  EXPECT_THROW(classify_genus2(dp9(), c.H, DivisorClass::zero(9)), PreconditionError);
  // 3B has square 18 but is orthogonal to every exceptional class.
  DivisorClass bad = 3 * c.B;
  EXPECT_THROW(classify_genus2(dp9(), bad, c.D[0]), PreconditionError);
  ClassifyOptions attest{true};
  EXPECT_NO_THROW(classify_genus2(dp9(), c.H, c.D[0], attest));
}

TEST(Quartic, NumericRows) {
  auto any = ThreeValued::unknown("unused");
  ACMVerdict a = classify_quartic(-2, 2, any, any);
  EXPECT_EQ(a.status, AcmStatus::AcmInitialized);
  EXPECT_EQ(a.case_label, "a");
  ACMVerdict c = classify_quartic(2, 5, any, any);
  EXPECT_EQ(c.case_label, "c");
  ACMVerdict d = classify_quartic(4, 6, ThreeValued::yes(), ThreeValued::unknown("open"));
  EXPECT_EQ(d.status, AcmStatus::Conditional);
  EXPECT_EQ(d.case_label, "d");
  ASSERT_EQ(d.unresolved.size(), 1u);
  EXPECT_EQ(d.unresolved[0].condition, "|2H-D| = empty");
  ACMVerdict n = classify_quartic(4, 6, ThreeValued::no(), ThreeValued::yes());
  EXPECT_EQ(n.status, AcmStatus::Not);
  EXPECT_FALSE(n.case_label);
  EXPECT_EQ(classify_quartic(0, 5, any, any).status, AcmStatus::Not);
}

TEST(Quartic, RefiningUnknownsIsMonotone) {
  auto refines = [](const ThreeValued& a, const ThreeValued& b) { return a.is_unknown() || a.value == b.value; };
  for (const auto& a1 : three_values())
    for (const auto& a2 : three_values())
      for (const auto& b1 : three_values())
        for (const auto& b2 : three_values()) {
          if (!refines(a1, b1) || !refines(a2, b2)) continue;
          ACMVerdict coarse = classify_quartic(4, 6, a1, a2), fine = classify_quartic(4, 6, b1, b2);
          if (coarse.status == AcmStatus::AcmInitialized) ASSERT_EQ(fine.status, AcmStatus::AcmInitialized);
          if (coarse.status == AcmStatus::Not) ASSERT_EQ(fine.status, AcmStatus::Not);
          bool open = false;
          for (const auto& u : coarse.unresolved) open = open || u.value.is_unknown();
          ASSERT_EQ(coarse.status == AcmStatus::Conditional, open);
          ASSERT_EQ(coarse.case_label.has_value(), coarse.status != AcmStatus::Not);
        }
}

TEST(Quartic, OnALattice) {
  LatticeSpec q = plane(4, 5, 2);
  ACMVerdict v = classify_quartic(q, kH, kD);
  EXPECT_EQ(v.status, AcmStatus::AcmInitialized);
  EXPECT_EQ(v.case_label, "c");
}

TEST(General, Rows) {
  EXPECT_EQ(general_row(18, 14, 18)->label, "a");
  EXPECT_EQ(general_row(18, 14, 17)->label, "a");
  EXPECT_EQ(general_row(4, 2, 5)->label, "b");
  EXPECT_EQ(general_row(18, 16, 19)->label, "b");
  EXPECT_EQ(general_row(18, 20, 21)->label, "c");
  EXPECT_FALSE(general_row(18, 34, 28));
  EXPECT_THROW(general_row(18, 12, 15), OutOfScope);
}

TEST(General, VerdictsOnRealizingLattices) {
  ACMVerdict a = classify_general(plane(18, 18, 14), kH, kD);
  EXPECT_EQ(a.status, AcmStatus::AcmInitialized);
  EXPECT_EQ(a.case_label, "a");
  ACMVerdict b = classify_general(plane(4, 5, 2), kH, kD);
  EXPECT_EQ(b.status, AcmStatus::AcmInitialized);
  EXPECT_EQ(b.case_label, "b");
  ACMVerdict c = classify_general(plane(18, 21, 20), kH, kD);
  EXPECT_EQ(c.status, AcmStatus::AcmInitialized);
  EXPECT_EQ(c.case_label, "c");
  EXPECT_THROW(classify_general(dp9(), dp9_classes().H, dp9_classes().D[0]), OutOfScope);
}

TEST(VanishingSufficiency, Examples) {
  const auto& c = dp9_classes();
  EXPECT_TRUE(lemma31_sufficiency(dp9(), c.H, c.X, 1).is_yes());
  EXPECT_TRUE(lemma31_sufficiency(dp9(), c.H, 3 * c.X, 1).is_unknown());
  std::vector<std::optional<H1Status>> att{H1Status::zero("attested"), H1Status::unknown()};
  EXPECT_TRUE(lemma31_sufficiency(dp9(), c.H, c.X, 1, att).is_unknown());
  std::vector<std::optional<H1Status>> ok{H1Status::zero("attested"), H1Status::zero("attested")};
  EXPECT_TRUE(lemma31_sufficiency(dp9(), c.H, c.D[0], 1, ok).is_yes());
}

TEST(Structure, Examples) {
  const auto& c = dp9_classes();
  Prop52Result a = prop52_classify(dp9(), c.D[0]);
  EXPECT_TRUE(a.in_table);
  EXPECT_EQ(a.case_ii, "a");
  EXPECT_EQ(a.case_iii, "f");
  EXPECT_EQ(a.gamma, c.D[0]);
  EXPECT_TRUE(a.witness_verified);
  Prop52Result d = prop52_classify(dp9(), 2 * c.X);
  EXPECT_EQ(d.case_ii, "d");
  EXPECT_EQ(d.case_iii, "g");
  EXPECT_EQ(d.r, 2);
  Prop52Result cc = prop52_classify(dp9(), 3 * c.X - c.E[0]);
  EXPECT_EQ(cc.D_sq, 4);
  EXPECT_EQ(cc.HD, 12);
  EXPECT_EQ(cc.case_ii, "c");
  EXPECT_EQ(cc.gamma, c.E[0]);
  EXPECT_TRUE(cc.witness_verified);
  EXPECT_FALSE(prop52_classify(dp9(), c.B).in_table);
  EXPECT_THROW(prop52_classify(builtin_lattice("u2"), DivisorClass{1, 1}), PreconditionError);
}

TEST(Structure, EquivalentToGenus2ThroughDegreeSix) {
  // H.D <= 18 already contains every class of the structural list.
  const auto& c = dp9_classes();
  oracle::EffectiveSets sets(oracle::dp9(), 6);
  std::set<DivisorClass> found;
  std::size_t seen = 0;
  for (int d = 2; d <= 6; d += 2)
    for (const auto& x : sets.of_degree(d)) {
      IntVec v;
      for (auto e : x) v.emplace_back(static_cast<long>(e));
      DivisorClass D(v);
      ACMVerdict g = classify_genus2(dp9(), c.H, D);
      Prop52Result p = prop52_classify(dp9(), D);
      ASSERT_NE(g.status, AcmStatus::Conditional) << to_string(D);
      ASSERT_EQ(g.status == AcmStatus::AcmInitialized, p.in_table) << to_string(D);
      if (p.in_table) ASSERT_TRUE(p.witness_verified) << to_string(D);
      if (p.in_table) found.insert(D);
      ++seen;
    }
  std::set<DivisorClass> expected{c.X, 2 * c.X};
  for (const auto& x : oracle::box_search(oracle::dp9(), 2, -2, -2)) {
    IntVec v;
    for (auto e : x) v.emplace_back(static_cast<long>(e));
    DivisorClass r(v);
    expected.insert(r);
    expected.insert(3 * c.X - r);
    expected.insert(4 * c.X - r);
  }
  EXPECT_EQ(expected.size(), 722u);
  EXPECT_EQ(found, expected);
  EXPECT_EQ(seen, 241u + 9361u + 131041u);
}

TEST(Verdict, JsonShape) {
  ACMVerdict d = classify_quartic(4, 6, ThreeValued::yes(), ThreeValued::unknown("open"));
  Json j = to_json(d);
  EXPECT_EQ(j["status"], "Conditional");
  EXPECT_EQ(j["case"], "d");
  EXPECT_EQ(j["D_sq"], 4);
  EXPECT_EQ(j["HD"], 6);
  ASSERT_EQ(j["unresolved"].size(), 1u);
  EXPECT_EQ(j["unresolved"][0]["value"], "Unknown");
  EXPECT_TRUE(to_json(classify_quartic(0, 9, ThreeValued::yes(), ThreeValued::yes()))["case"].is_null());
}
