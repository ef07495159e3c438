#include "k3acm/report.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "k3acm/acm.hpp"
#include "k3acm/effective.hpp"
#include "k3acm/enumeration.hpp"
#include "k3acm/errors.hpp"
#include "k3acm/extension.hpp"
#include "k3acm/nikulin.hpp"

namespace k3acm {

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

std::string gram_hash(const LatticeSpec& lat) {
  std::string text = to_json(lat.gram()).dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::optional<TwoElementaryResult> try_invariants(const LatticeSpec& lat) {
  try {
    return two_elementary_invariants(lat);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

}  // namespace

Json lattice_fingerprint(const LatticeSpec& lat) {
  Json j;
  j["name"] = lat.name();
  j["rho"] = lat.rank();
  j["a"] = nullptr;
  j["delta"] = nullptr;
  if (auto inv = try_invariants(lat); inv && std::holds_alternative<TwoElementaryInvariants>(*inv)) {
    const auto& t = std::get<TwoElementaryInvariants>(*inv);
    j["a"] = t.a;
    j["delta"] = t.delta;
  }
  j["gram_hash"] = gram_hash(lat);
  return j;
}

bool is_dp9(const LatticeSpec& lat) {
  if (lat.rank() != 9) return false;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j)
      if (lat.gram()[i][j] != (i != j ? 0 : (i == 0 ? 2 : -2))) return false;
  return lat.ample_ref() && *lat.ample_ref() == dp9_classes().X;
}

LatticeSpec load_lattice(const std::string& path) {
  const std::string prefix = "builtin:";
  if (path.rfind(prefix, 0) == 0) return builtin_lattice(path.substr(prefix.size()));
  return load_lattice_file(path);
}

DivisorClass resolve_class(const LatticeSpec& lat, const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '\t') t += c;
  if (t == "ample_ref") return lat.require_ample_ref();
  if (int i = lat.label_index(t); i >= 0) return DivisorClass::unit(lat.rank(), static_cast<std::size_t>(i));
  if (is_dp9(lat)) {
    const auto& c = dp9_classes();
    if (t == "X") return c.X;
    if (t == "H") return c.H;
    for (int i = 0; i < 4; ++i)
      if (t == "D" + std::to_string(i + 1)) return c.D[i];
  }
  DivisorClass d = parse_class(t);
  check_dimension(lat, d);
  return d;
}

Json lattice_info(const LatticeSpec& lat) {
  Json j;
  j["rank"] = lat.rank();
  Signature s = signature(lat);
  j["signature"] = Json::array({s.n_plus, s.n_minus, s.n_zero});
  j["even"] = is_even(lat);
  j["all_pairings_even"] = is_all_pairings_even(lat);
  j["k3"] = lat.k3();
  j["basis"] = lat.labels();
  Json te;
  try {
    auto inv = two_elementary_invariants(lat);
    if (const auto* t = std::get_if<TwoElementaryInvariants>(&inv)) {
      te = {{"two_elementary", true}, {"rho", t->rho}, {"a", t->a}, {"delta", t->delta}};
    } else {
      Json f = Json::array();
      for (const auto& x : std::get<NotTwoElementary>(inv).invariant_factors) f.push_back(to_json(x));
      te = {{"two_elementary", false}, {"invariant_factors", std::move(f)}};
    }
  } catch (const DegenerateLattice& e) {
    te = {{"two_elementary", false}, {"error", e.what()}};
  }
  j["discriminant"] = std::move(te);
  if (lat.ample_ref()) {
    j["ample_ref"] = to_json(*lat.ample_ref());
    ThreeValued a = is_ample(lat, *lat.ample_ref());
    j["ample_ref_verdict"] = {{"value", to_string(a.value)}, {"reason", a.reason}};
  } else {
    j["ample_ref"] = nullptr;
    j["ample_ref_verdict"] = nullptr;
  }
  return j;
}

Json enumerate_payload(const LatticeSpec& lat, const EnumerateRequest& req) {
  if (!req.square_min) throw InputError("enumeration needs a lower bound on the square");
  SquarePredicate sq{req.square_min, req.square_max};
  auto classes = enumerate_slice(lat, SliceQuery{req.degree_class, req.degree, sq, {}});
  Json list = Json::array();
  for (const auto& c : classes) list.push_back(to_json(c));
  Json j;
  j["degree_class"] = to_json(req.degree_class);
  j["degree"] = to_json(req.degree);
  j["square_min"] = to_json(*req.square_min);
  j["square_max"] = req.square_max ? to_json(*req.square_max) : Json(nullptr);
  j["count"] = classes.size();
  j["classes"] = std::move(list);
  return j;
}

Json classify_payload(const LatticeSpec& lat, const DivisorClass& D, const std::string& theorem,
                      const std::optional<DivisorClass>& H_in) {
  check_dimension(lat, D);
  DivisorClass H = H_in ? *H_in : (is_dp9(lat) ? dp9_classes().H : lat.require_ample_ref());
  check_dimension(lat, H);
  Json j;
  j["theorem"] = theorem;
  j["D"] = to_json(D);
  j["H"] = to_json(H);
  if (theorem == "5.2") {
    DivisorClass H3 = 3 * lat.require_ample_ref();
    j["H"] = to_json(H3);
    Prop52Result p = prop52_classify(lat, D);
    j["result"] = to_json(classify_genus2(lat, H3, D));
    j["structure"] = to_json(p);
  } else if (theorem == "1.1") {
    j["result"] = to_json(classify_genus2(lat, H, D));
  } else if (theorem == "3.1") {
    j["result"] = to_json(classify_quartic(lat, H, D));
  } else if (theorem == "3.2") {
    j["result"] = to_json(classify_general(lat, H, D));
  } else {
    throw InputError("unknown theorem '" + theorem + "', expected 1.1, 3.1, 3.2 or 5.2");
  }
  return j;
}

namespace {

std::string key(const Int& s, const Int& hd) { return "D_sq=" + s.get_str() + ",HD=" + hd.get_str(); }

void note(Json& discrepancies, const std::string& msg) {
  if (discrepancies.size() < 20) discrepancies.push_back(msg);
}

void require_dp9(const LatticeSpec& lat, const std::string& suite) {
  if (!is_dp9(lat)) throw InputError("suite " + suite + " runs on the dp9 lattice only");
}

// Every effective class of H-degree <= max_hd, classified both ways.
SuiteOutcome suite_prop52(const LatticeSpec& lat, const SuiteOptions& opts) {
  require_dp9(lat, "prop52");
  const auto& c = dp9_classes();
  const DivisorClass& X = c.X;
  const Int g = minimal_positive_degree(lat);
  const Int d_max = floor_div(opts.max_hd, 3);

  std::vector<DivisorClass> roots = enumerate_slice(lat, SliceQuery{X, 2, SquarePredicate::equal(-2), {}});
  std::set<DivisorClass> expected;
  auto expect = [&](const DivisorClass& D) {
    if (pair(lat, c.H, D) <= opts.max_hd) expected.insert(D);
  };
  for (const auto& r : roots) {
    expect(r);
    expect(3 * X - r);
    expect(4 * X - r);
  }
  expect(X);
  expect(2 * X);

  std::size_t scanned = 0, effective = 0, excluded = 0;
  std::set<DivisorClass> found;
  std::map<std::string, std::size_t> by_genus2, by_prop;
  Json discrepancies = Json::array();
  for (Int d = g; d <= d_max; d += g) {
    Int lo = ceil_div(-2 * d * d, g * g);
    for_each_in_slice(lat, SliceQuery{X, d, SquarePredicate::at_least(lo), {}}, [&](const DivisorClass& D) {
      ++scanned;
      if (!is_effective(lat, D).effective()) return;
      ++effective;
      ACMVerdict v = classify_genus2(lat, c.H, D);
      Prop52Result p = prop52_classify(lat, D);
      if ((v.D_sq == 2 && v.HD == 12) || v.D_sq == 26) {
        ++excluded;
        if (v.status != AcmStatus::Not) note(discrepancies, to_string(D) + " in an excluded row is not Not");
      }
      if (v.status == AcmStatus::Conditional) note(discrepancies, to_string(D) + " stays Conditional");
      bool acm = v.status == AcmStatus::AcmInitialized;
      if (acm != p.in_table) note(discrepancies, to_string(D) + " classified differently at " + key(v.D_sq, v.HD));
      if (p.in_table && !p.witness_verified) note(discrepancies, to_string(D) + " has no verified witness");
      if (acm) {
        found.insert(D);
        ++by_genus2[*v.case_label];
      }
      if (p.in_table) ++by_prop[p.case_ii];
    });
  }
  bool set_ok = found == expected;
  if (!set_ok) {
    std::size_t extra = 0, missing = 0;
    for (const auto& D : found) extra += !expected.count(D);
    for (const auto& D : expected) missing += !found.count(D);
    note(discrepancies, "classified set differs: " + std::to_string(extra) + " extra, " + std::to_string(missing) +
                            " missing");
  }
  Json j;
  j["max_hd"] = to_json(opts.max_hd);
  j["scanned"] = scanned;
  j["effective"] = effective;
  j["classified"] = found.size();
  j["expected"] = expected.size();
  j["set_matches"] = set_ok;
  j["excluded_row_hits"] = excluded;
  j["by_case_genus2"] = by_genus2;
  j["by_case_structural"] = by_prop;
  j["discrepancies"] = discrepancies;
  return {discrepancies.empty() && set_ok, j};
}

std::string row_text(const std::optional<RowMatch>& r) {
  if (!r) return "-";
  std::string s = r->label + "[";
  for (std::size_t i = 0; i < r->conditions.size(); ++i) s += (i ? ";" : "") + to_string(r->conditions[i]);
  return s + "]";
}

SuiteOutcome suite_row_consistency() {
  Json discrepancies = Json::array();
  std::size_t cells = 0, matched = 0;
  const std::map<std::string, std::string> g18{{"a", "g"}, {"c", "h"}};
  for (int s = 14; s <= 40; ++s)
    for (int hd = 1; hd <= 40; ++hd) {
      ++cells;
      auto mine = genus2_row(s, hd);
      std::optional<RowMatch> gen;
      if (hd % 3 == 0 && s % 2 == 0) gen = general_row(18, s, hd);
      bool ok = mine.has_value() == gen.has_value();
      if (ok && gen) {
        auto it = g18.find(gen->label);
        ok = it != g18.end() && it->second == mine->label && gen->conditions == mine->conditions;
        matched += ok;
      }
      if (!ok) note(discrepancies, "H^2=18 " + key(s, hd) + ": " + row_text(mine) + " vs " + row_text(gen));
    }
  const std::map<std::string, std::string> g4{{"a", "b"}, {"b", "c"}, {"c", "d"}};
  for (int s = 0; s <= 40; ++s)
    for (int hd = 1; hd <= 40; ++hd) {
      ++cells;
      auto mine = quartic_row(s, hd);
      auto gen = general_row(4, s, hd);
      bool ok = mine.has_value() == gen.has_value();
      if (ok && gen) {
        auto it = g4.find(gen->label);
        ok = it != g4.end() && it->second == mine->label;
        if (ok && gen->conditions != mine->conditions) {
          // h1(2H - D) = 0 and |2H - D| = empty agree when chi(2H - D) = 0 and D - 2H has negative degree.
          Int chi2 = (Int(16) - 4 * hd + s) / 2 + 2;
          ok = gen->conditions ==
                   std::vector<Condition>{Condition::EmptyDminusH, Condition::H1Of2HminusD} &&
               mine->conditions ==
                   std::vector<Condition>{Condition::EmptyDminusH, Condition::Empty2HminusD} &&
               chi2 == 0 && hd < 8;
        }
        matched += ok;
      }
      if (!ok) note(discrepancies, "H^2=4 " + key(s, hd) + ": " + row_text(mine) + " vs " + row_text(gen));
    }
  Json j;
  j["cells"] = cells;
  j["matched_rows"] = matched;
  j["discrepancies"] = discrepancies;
  return {discrepancies.empty(), j};
}

SuiteOutcome suite_family(const LatticeSpec& lat, const SuiteOptions& opts) {
  require_dp9(lat, "thm12");
  if (opts.n_max < 3) throw InputError("n_max must be at least 3");
  const auto& c = dp9_classes();
  Json discrepancies = Json::array();
  Json rows = Json::array();
  if (ext1_dim(lat, c.D[0], c.D[1]) != 2) note(discrepancies, "Ext1(O(D1), O(D2)) is not 2");
  for (int n = 2; n <= opts.n_max; ++n) {
    ExtensionPlan plan = family_plan(lat, c.D, n);
    const int m = (n - 1) / 2;
    Int want = n == 2 ? 1 : (n % 2 == 1 ? 3 * m : 4 * m + 1);
    std::vector<Int> want_final;
    if (n == 2) want_final = {2};
    else if (n % 2 == 1) want_final.assign(m, 4);
    else want_final = {Int(4 * m + 2)};
    bool ok = plan.parameter_space_dim == want && plan.final_factor_dims == want_final;
    for (const auto& st : plan.steps)
      for (const auto& dims : st.factor_dims)
        for (const auto& d : dims) ok = ok && d == 2;
    if (n >= 3) ok = ok && plan.parameter_space_dim >= n;
    bool semi = semistable_certificate(lat, c.H, plan);
    if (!ok) note(discrepancies, "n=" + std::to_string(n) + ": unexpected dimensions");
    if (!semi) note(discrepancies, "n=" + std::to_string(n) + ": blocks differ in Hilbert polynomial");
    rows.push_back({{"n", n},
                    {"parameter_space", plan.parameter_space},
                    {"parameter_space_dim", to_json(plan.parameter_space_dim)},
                    {"semistable", semi}});
  }
  Json j;
  j["n_max"] = opts.n_max;
  j["block_hilbert_poly"] = to_json(hilbert_poly(lat, c.H, c.D[0]));
  j["plans"] = std::move(rows);
  j["discrepancies"] = discrepancies;
  return {discrepancies.empty(), j};
}

SuiteOutcome suite_nikulin(const LatticeSpec& lat) {
  Json discrepancies = Json::array();
  Json rows = Json::array();
  struct Row {
    int rho, a, delta;
    FixedLocusDescriptor want;
  };
  const std::vector<Row> table{
      {10, 10, 0, {FixedLocusShape::Empty, 0, 0, false}},
      {10, 8, 0, {FixedLocusShape::TwoElliptic, 0, 0, false}},
      {9, 9, 1, {FixedLocusShape::GeneralSum, 2, 0, true}},
  };
  for (const auto& r : table) {
    FixedLocusDescriptor got = fixed_locus(r.rho, r.a, r.delta);
    bool ok = got == r.want;
    if (!ok) note(discrepancies, "fixed locus of (" + std::to_string(r.rho) + "," + std::to_string(r.a) + "," +
                                     std::to_string(r.delta) + ") is " + to_string(got.shape));
    rows.push_back({{"rho", r.rho},
                    {"a", r.a},
                    {"delta", r.delta},
                    {"shape", to_string(got.shape)},
                    {"genus", got.genus},
                    {"rational_tails", got.rational_tail_count},
                    {"pass", ok}});
  }
  auto round_trip = [&](int a, int delta) {
    LatticeSpec l = classify_rank_a(a, delta);
    auto inv = two_elementary_invariants(l);
    bool ok = std::holds_alternative<TwoElementaryInvariants>(inv) &&
              std::get<TwoElementaryInvariants>(inv) == TwoElementaryInvariants{a, a, delta} &&
              signature(l) == Signature{1, a - 1, 0};
    if (!ok) note(discrepancies, "rank-" + std::to_string(a) + " model misses its invariants");
  };
  round_trip(2, 0);
  for (int a = 1; a <= 9; ++a) round_trip(a, 1);

  Json j;
  j["fixed_locus"] = std::move(rows);
  if (auto inv = try_invariants(lat); inv && std::holds_alternative<TwoElementaryInvariants>(*inv)) {
    const auto& t = std::get<TwoElementaryInvariants>(*inv);
    try {
      FixedLocusDescriptor f = fixed_locus(t.rho, t.a, t.delta);
      j["input_lattice"] = {{"shape", to_string(f.shape)}, {"genus", f.genus}, {"rational_tails", f.rational_tail_count}};
    } catch (const PreconditionError& e) {
      j["input_lattice"] = {{"error", e.what()}};
    }
  } else {
    j["input_lattice"] = nullptr;
  }
  j["discrepancies"] = discrepancies;
  return {discrepancies.empty(), j};
}

SuiteOutcome suite_roots(const LatticeSpec& lat) {
  require_dp9(lat, "roots240");
  const DivisorClass& X = dp9_classes().X;
  Json discrepancies = Json::array();
  auto roots = enumerate_slice(lat, SliceQuery{X, 2, SquarePredicate::equal(-2), {}});
  std::set<DivisorClass> set(roots.begin(), roots.end());
  std::size_t curves = 0;
  for (const auto& r : roots) {
    curves += is_neg2_curve(lat, r);
    if (!set.count(2 * X - r)) note(discrepancies, to_string(r) + " has no partner 2X - r");
  }
  if (roots.size() != 240) note(discrepancies, "found " + std::to_string(roots.size()) + " roots");
  if (curves != roots.size()) note(discrepancies, "some degree-2 (-2)-class is reducible");
  std::size_t deg0 = count_slice(lat, SliceQuery{X, 0, SquarePredicate::equal(-2), {}});
  if (deg0 != 0) note(discrepancies, "degree-0 (-2)-classes exist");
  OrthogonalGram og = orthogonal_slice_gram(lat, X);
  if (!og.negative_definite || !og.max_square || *og.max_square != -4)
    note(discrepancies, "X-perp is not negative definite with minimum -4");
  Json j;
  j["roots"] = roots.size();
  j["irreducible"] = curves;
  j["degree0"] = deg0;
  j["perp_max_square"] = og.max_square ? to_json(*og.max_square) : Json(nullptr);
  j["discrepancies"] = discrepancies;
  return {discrepancies.empty(), j};
}

}  // namespace

std::vector<std::string> suite_names() { return {"nikulin", "prop52", "roots240", "thm11-consistency", "thm12"}; }

SuiteOutcome run_suite(const LatticeSpec& lat, const std::string& suite, const SuiteOptions& opts) {
  if (suite == "prop52") return suite_prop52(lat, opts);
  if (suite == "thm11-consistency") return suite_row_consistency();
  if (suite == "thm12") return suite_family(lat, opts);
  if (suite == "nikulin") return suite_nikulin(lat);
  if (suite == "roots240") return suite_roots(lat);
  throw InputError("unknown suite '" + suite + "'");
}

Json make_report(const std::string& command, const Json& args, const std::optional<LatticeSpec>& lat,
                 const Json& results, std::optional<int64_t> elapsed_ms) {
  Json j;
  j["command"] = command;
  j["args"] = args;
  j["lattice"] = lat ? lattice_fingerprint(*lat) : Json(nullptr);
  j["results"] = results;
  j["version"] = K3ACM_VERSION;
  if (elapsed_ms) j["timing_ms"] = *elapsed_ms;
  return j;
}

namespace {

bool scalar_array(const Json& j) {
  for (const auto& e : j)
    if (e.is_structured() && !(e.is_array() && scalar_array(e))) return false;
  return true;
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render_table(const Json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace k3acm
