#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3acm/effective.hpp"
#include "k3acm/lattice.hpp"
#include "k3acm/lattice_io.hpp"
#include "k3acm/three_valued.hpp"

namespace k3acm {

enum class AcmStatus { AcmInitialized, Not, Conditional };

std::string to_string(AcmStatus s);

struct SideCondition {
  std::string condition;
  ThreeValued value;
};

struct ACMVerdict {
  AcmStatus status = AcmStatus::Not;
  std::optional<std::string> case_label;  // present iff status != Not
  Int D_sq = 0;
  Int HD = 0;
  // Unknown conditions for Conditional, failed conditions for Not.
  std::vector<SideCondition> unresolved;
};

// {"status", "case", "D_sq", "HD", "unresolved": [{"condition", "value"}]}
Json to_json(const ACMVerdict& v);

// Side conditions a row leaves open. The numeric shape of the row already matched.
enum class Condition {
  EmptyHminusD,   // |H - D| = empty
  EmptyDminusH,   // |D - H| = empty, i.e. h0(D - H) = 0
  Empty2HminusD,  // |2H - D| = empty
  H1Of2HminusD,   // h1(2H - D) = 0
};

std::string to_string(Condition c);

struct RowMatch {
  std::string label;
  std::vector<Condition> conditions;
};

// Pure row tables on (D^2, H.D).
std::optional<RowMatch> genus2_row(const Int& D_sq, const Int& HD);
std::optional<RowMatch> quartic_row(const Int& D_sq, const Int& HD);
// Throws OutOfScope when D_sq < H_sq - 4. Row (c) carries D^2 <= 2H^2 - 4, which
// chi(2H - D) >= 0 forces once |D - H| is empty and h1(2H - D) vanishes.
std::optional<RowMatch> general_row(const Int& H_sq, const Int& D_sq, const Int& HD);

struct ClassifyOptions {
  bool attest_very_ample = false;  // skip the numeric very-ampleness test for H
};

// Genus-2 double plane, H^2 = 18.
ACMVerdict classify_genus2(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D,
                           const ClassifyOptions& opts = {});

// Quartic surface, H^2 = 4, from numbers and the two emptiness flags.
ACMVerdict classify_quartic(const Int& D_sq, const Int& HD, const ThreeValued& empty_DmH,
                            const ThreeValued& empty_2HmD);
// Same, with the flags evaluated on a lattice.
ACMVerdict classify_quartic(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D);

// Very ample H with H^2 >= 4 and D^2 >= H^2 - 4.
ACMVerdict classify_general(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D,
                            const ClassifyOptions& opts = {});

// Sufficient test: H.D <= m H^2 - 1 and h1(D - kH) = 0 for 0 <= k <= m.
// attestations[k], when present, replaces the computed h1 status of D - kH.
// Never returns No.
ThreeValued lemma31_sufficiency(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D, int m,
                                const std::vector<std::optional<H1Status>>& attestations = {});

struct Prop52Result {
  bool in_table = false;
  Int D_sq = 0;
  Int HD = 0;
  std::string case_ii;            // "a".."e"
  std::string case_iii;           // "f" or "g"
  std::optional<DivisorClass> gamma;  // the (-2)-curve for "f"
  std::optional<int> r;           // the multiple of X for "g"
  bool witness_verified = false;
};

// Requires the dp9 fingerprint: invariants (9, 9, 1), Gram diag(2, -2^8) and
// ample_ref (3, -1^8). Uses H = 3 ample_ref.
Prop52Result prop52_classify(const LatticeSpec& lat, const DivisorClass& D);

Json to_json(const Prop52Result& r);

}  // namespace k3acm
