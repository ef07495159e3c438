#include "k3acm/acm.hpp"

#include "k3acm/errors.hpp"
#include "memo.hpp"

namespace k3acm {

std::string to_string(AcmStatus s) {
  switch (s) {
    case AcmStatus::AcmInitialized: return "AcmInitialized";
    case AcmStatus::Not: return "Not";
    case AcmStatus::Conditional: return "Conditional";
  }
  return "?";
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::EmptyHminusD: return "|H-D| = empty";
    case Condition::EmptyDminusH: return "|D-H| = empty";
    case Condition::Empty2HminusD: return "|2H-D| = empty";
    case Condition::H1Of2HminusD: return "h1(2H-D) = 0";
  }
  return "?";
}

Json to_json(const ACMVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["case"] = v.case_label ? Json(*v.case_label) : Json(nullptr);
  j["D_sq"] = to_json(v.D_sq);
  j["HD"] = to_json(v.HD);
  Json u = Json::array();
  for (const auto& c : v.unresolved) u.push_back({{"condition", c.condition}, {"value", to_string(c.value.value)}});
  j["unresolved"] = std::move(u);
  return j;
}

std::optional<RowMatch> genus2_row(const Int& s, const Int& hd) {
  if (hd % 3 != 0) return std::nullopt;
  if (s == -2 && (hd == 3 || hd == 6 || hd == 9)) return RowMatch{"a", {}};
  if (s == 0 && hd == 9) return RowMatch{"b", {}};
  if (s == 2 && (hd == 6 || hd == 9)) return RowMatch{"c", {}};
  if (s == 2 && hd == 12) return RowMatch{"c", {Condition::EmptyHminusD}};
  if (s == 4 && (hd == 9 || hd == 12)) return RowMatch{"d", {}};
  if (s == 8 && (hd == 12 || hd == 15)) return RowMatch{"e", {}};
  if (s == 10 && hd == 15) return RowMatch{"f", {}};
  if (s == 14 && hd == 18) return RowMatch{"g", {}};
  if ((s == 20 || s == 26 || s == 32) && s == 2 * hd - 22)
    return RowMatch{"h", {Condition::EmptyDminusH, Condition::H1Of2HminusD}};
  return std::nullopt;
}

std::optional<RowMatch> quartic_row(const Int& s, const Int& hd) {
  if (s == -2 && hd >= 1 && hd <= 3) return RowMatch{"a", {}};
  if (s == 0 && hd >= 3 && hd <= 4) return RowMatch{"b", {}};
  if (s == 2 && hd == 5) return RowMatch{"c", {}};
  if (s == 4 && hd == 6) return RowMatch{"d", {Condition::EmptyDminusH, Condition::Empty2HminusD}};
  return std::nullopt;
}

std::optional<RowMatch> general_row(const Int& h, const Int& s, const Int& hd) {
  if (s < h - 4)
    throw OutOfScope("D^2 = " + s.get_str() + " lies below H^2 - 4 = " + Int(h - 4).get_str());
  if (s == h - 4 && (hd == h - 1 || hd == h)) return RowMatch{"a", {}};
  if (s == h - 2 && hd == h + 1) return RowMatch{"b", {}};
  if (s >= h && s == 2 * hd - h - 4 && s <= 2 * h - 4)
    return RowMatch{"c", {Condition::EmptyDminusH, Condition::H1Of2HminusD}};
  return std::nullopt;
}

namespace {

ThreeValued empty_system(const LatticeSpec& lat, const DivisorClass& X) {
  if (X.is_zero()) return ThreeValued::no("the class is zero");
  auto v = is_effective(lat, X);
  if (v.effective()) return ThreeValued::no(to_string(X) + " is effective");
  return ThreeValued::yes(to_string(X) + " is not effective");
}

ThreeValued evaluate(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D, Condition c) {
  switch (c) {
    case Condition::EmptyHminusD: return empty_system(lat, H - D);
    case Condition::EmptyDminusH: return empty_system(lat, D - H);
    case Condition::Empty2HminusD: return empty_system(lat, 2 * H - D);
    case Condition::H1Of2HminusD: {
      H1Status s = h1_of(lat, 2 * H - D);
      if (s.is_zero()) return ThreeValued::yes("rule " + s.rule);
      if (s.is_unknown()) return ThreeValued::unknown("no h1 rule applies to " + to_string(2 * H - D));
      return ThreeValued::no(to_string(s) + " by rule " + s.rule);
    }
  }
  return ThreeValued::unknown("unhandled condition");
}

ACMVerdict assemble(const Int& s, const Int& hd, const std::optional<RowMatch>& row, std::vector<SideCondition> conds) {
  ACMVerdict v;
  v.D_sq = s;
  v.HD = hd;
  if (!row) return v;
  std::vector<SideCondition> failed, open;
  for (auto& c : conds) {
    if (c.value.is_no()) failed.push_back(c);
    else if (c.value.is_unknown()) open.push_back(c);
  }
  if (!failed.empty()) {
    v.unresolved = std::move(failed);
    return v;
  }
  v.case_label = row->label;
  if (!open.empty()) {
    v.status = AcmStatus::Conditional;
    v.unresolved = std::move(open);
  } else {
    v.status = AcmStatus::AcmInitialized;
  }
  return v;
}

void require_nonzero_effective(const LatticeSpec& lat, const DivisorClass& D) {
  check_dimension(lat, D);
  if (D.is_zero()) throw PreconditionError("classification needs a nonzero class");
  if (!is_effective(lat, D).effective()) throw PreconditionError(to_string(D) + " is not effective");
}

std::optional<SideCondition> very_ample_condition(const LatticeSpec& lat, const DivisorClass& H,
                                                  const ClassifyOptions& opts) {
  if (opts.attest_very_ample) return std::nullopt;
  ThreeValued va = is_very_ample_numeric(lat, H);
  if (va.is_no()) throw PreconditionError("H is not very ample: " + va.reason);
  if (va.is_unknown()) return SideCondition{"H very ample", va};
  return std::nullopt;
}

ACMVerdict classify_with_row(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D,
                             const std::optional<RowMatch>& row, std::optional<SideCondition> pre) {
  Int s = self_int(lat, D);
  Int hd = pair(lat, H, D);
  std::vector<SideCondition> conds;
  if (row) {
    if (pre) conds.push_back(*pre);
    for (Condition c : row->conditions) conds.push_back({to_string(c), evaluate(lat, H, D, c)});
  }
  return assemble(s, hd, row, std::move(conds));
}

}  // namespace

ACMVerdict classify_genus2(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D,
                           const ClassifyOptions& opts) {
  check_dimension(lat, H);
  if (self_int(lat, H) != 18) throw PreconditionError("genus-2 classification needs H^2 = 18");
  auto pre = very_ample_condition(lat, H, opts);
  require_nonzero_effective(lat, D);
  return classify_with_row(lat, H, D, genus2_row(self_int(lat, D), pair(lat, H, D)), pre);
}

ACMVerdict classify_quartic(const Int& D_sq, const Int& HD, const ThreeValued& empty_DmH,
                            const ThreeValued& empty_2HmD) {
  auto row = quartic_row(D_sq, HD);
  std::vector<SideCondition> conds;
  if (row)
    for (Condition c : row->conditions)
      conds.push_back({to_string(c), c == Condition::EmptyDminusH ? empty_DmH : empty_2HmD});
  return assemble(D_sq, HD, row, std::move(conds));
}

ACMVerdict classify_quartic(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D) {
  check_dimension(lat, H);
  if (self_int(lat, H) != 4) throw PreconditionError("quartic classification needs H^2 = 4");
  require_nonzero_effective(lat, D);
  return classify_with_row(lat, H, D, quartic_row(self_int(lat, D), pair(lat, H, D)), std::nullopt);
}

ACMVerdict classify_general(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D,
                            const ClassifyOptions& opts) {
  check_dimension(lat, H);
  Int h = self_int(lat, H);
  if (h < 4) throw PreconditionError("general classification needs H^2 >= 4");
  auto pre = very_ample_condition(lat, H, opts);
  require_nonzero_effective(lat, D);
  return classify_with_row(lat, H, D, general_row(h, self_int(lat, D), pair(lat, H, D)), pre);
}

ThreeValued lemma31_sufficiency(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D, int m,
                                const std::vector<std::optional<H1Status>>& attestations) {
  check_dimension(lat, H);
  if (m < 1) throw PreconditionError("m must be a positive integer");
  ThreeValued amp = is_ample(lat, H);
  if (!amp.is_yes()) throw PreconditionError("H must be ample: " + amp.reason);
  require_nonzero_effective(lat, D);
  Int hd = pair(lat, H, D);
  Int h = self_int(lat, H);
  if (hd > m * h - 1) return ThreeValued::unknown("H.D = " + hd.get_str() + " exceeds mH^2 - 1");
  for (int k = 0; k <= m; ++k) {
    H1Status s = (k < static_cast<int>(attestations.size()) && attestations[k]) ? *attestations[k]
                                                                             : h1_of(lat, D - Int(k) * H);
    if (!s.is_zero())
      return ThreeValued::unknown("h1(D - " + std::to_string(k) + "H) is " + to_string(s));
  }
  return ThreeValued::yes("H.D <= mH^2 - 1 and h1(D - kH) = 0 for 0 <= k <= " + std::to_string(m));
}

Prop52Result prop52_classify(const LatticeSpec& lat, const DivisorClass& D) {
  check_dimension(lat, D);
  const std::size_t n = lat.rank();
  bool shape = n == 9;
  for (std::size_t i = 0; shape && i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int want = i != j ? 0 : (i == 0 ? 2 : -2);
      if (lat.gram()[i][j] != want) shape = false;
    }
  if (shape) {
    if (auto m = detail::memo_get(lat, "dp9-invariants")) {
      shape = m->is_yes();
    } else {
      auto inv = two_elementary_invariants(lat);
      shape = std::holds_alternative<TwoElementaryInvariants>(inv) &&
              std::get<TwoElementaryInvariants>(inv) == TwoElementaryInvariants{9, 9, 1};
      detail::memo_put(lat, "dp9-invariants", shape ? ThreeValued::yes() : ThreeValued::no());
    }
  }
  DivisorClass X{3, -1, -1, -1, -1, -1, -1, -1, -1};
  if (!shape || !lat.ample_ref() || *lat.ample_ref() != X)
    throw PreconditionError("lattice does not carry the dp9 fingerprint");
  require_nonzero_effective(lat, D);
  DivisorClass H = 3 * X;
  Prop52Result r;
  r.D_sq = self_int(lat, D);
  r.HD = pair(lat, H, D);
  auto curve = [&](DivisorClass G, const char* ii) {
    r.in_table = true;
    r.case_ii = ii;
    r.case_iii = "f";
    r.witness_verified = is_neg2_curve(lat, G);
    r.gamma = std::move(G);
  };
  auto multiple = [&](int k, const char* ii) {
    r.in_table = true;
    r.case_ii = ii;
    r.case_iii = "g";
    r.r = k;
    r.witness_verified = D == Int(k) * X;
  };
  if (r.D_sq == -2 && r.HD == 6) curve(D, "a");
  else if (r.D_sq == 2 && r.HD == 6) multiple(1, "b");
  else if (r.D_sq == 4 && r.HD == 12) curve(3 * X - D, "c");
  else if (r.D_sq == 8 && r.HD == 12) multiple(2, "d");
  else if (r.D_sq == 14 && r.HD == 18) curve(4 * X - D, "e");
  return r;
}

Json to_json(const Prop52Result& r) {
  Json j;
  j["in_table"] = r.in_table;
  j["D_sq"] = to_json(r.D_sq);
  j["HD"] = to_json(r.HD);
  j["case_ii"] = r.in_table ? Json(r.case_ii) : Json(nullptr);
  j["case_iii"] = r.in_table ? Json(r.case_iii) : Json(nullptr);
  j["gamma"] = r.gamma ? to_json(*r.gamma) : Json(nullptr);
  j["r"] = r.r ? Json(*r.r) : Json(nullptr);
  j["witness_verified"] = r.witness_verified;
  return j;
}

}  // namespace k3acm
