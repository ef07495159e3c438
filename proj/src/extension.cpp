#include "k3acm/extension.hpp"

#include <set>

#include "k3acm/effective.hpp"
#include "k3acm/errors.hpp"
#include "k3acm/nikulin.hpp"

namespace k3acm {

ThreeValued hom_vanishing(const LatticeSpec& lat, const DivisorClass& D1, const DivisorClass& D2) {
  check_dimension(lat, D1);
  check_dimension(lat, D2);
  DivisorClass diff = D2 - D1;
  if (diff.is_zero()) return ThreeValued::no("identity morphism");
  if (is_effective(lat, diff).effective()) return ThreeValued::no(to_string(diff) + " is effective");
  return ThreeValued::yes(to_string(diff) + " is not effective");
}

Int ext1_dim(const LatticeSpec& lat, const DivisorClass& D1, const DivisorClass& D2) {
  ThreeValued fwd = hom_vanishing(lat, D1, D2);
  ThreeValued bwd = hom_vanishing(lat, D2, D1);
  if (!fwd.is_yes()) throw PreconditionError("Hom(O(D1), O(D2)) does not vanish: " + fwd.reason);
  if (!bwd.is_yes()) throw PreconditionError("Hom(O(D2), O(D1)) does not vanish: " + bwd.reason);
  Int d = -chi(lat, D2 - D1);
  if (d < 0) throw PreconditionError("negative Ext1 dimension " + d.get_str());
  return d;
}

HilbertPoly& HilbertPoly::operator+=(const HilbertPoly& o) {
  c2 += o.c2;
  c1 += o.c1;
  c0 += o.c0;
  return *this;
}

HilbertPoly hilbert_poly(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D) {
  check_dimension(lat, H);
  check_dimension(lat, D);
  Int h2 = self_int(lat, H);
  if (h2 % 2 != 0) throw PreconditionError("Hilbert polynomial needs an even H^2");
  return {h2 / 2, pair(lat, H, D), chi(lat, D)};
}

BundlePoly bundle_poly(const LatticeSpec& lat, const DivisorClass& H, const std::vector<DivisorClass>& factors) {
  BundlePoly b;
  for (const auto& f : factors) b.total += hilbert_poly(lat, H, f);
  b.rank = static_cast<int>(factors.size());
  return b;
}

bool same_reduced(const BundlePoly& a, const BundlePoly& b) {
  if (a.rank <= 0 || b.rank <= 0) throw PreconditionError("reduced Hilbert polynomial needs positive rank");
  return a.total.c2 * b.rank == b.total.c2 * a.rank && a.total.c1 * b.rank == b.total.c1 * a.rank &&
         a.total.c0 * b.rank == b.total.c0 * a.rank;
}

bool reduced_hilbert_equal(const LatticeSpec& lat, const DivisorClass& H, const std::vector<DivisorClass>& classes) {
  if (classes.empty()) return true;
  HilbertPoly first = hilbert_poly(lat, H, classes.front());
  for (const auto& c : classes)
    if (hilbert_poly(lat, H, c) != first) return false;
  return true;
}

namespace {

std::string projective_product(const std::vector<Int>& dims) {
  if (dims.empty()) return "point";
  bool uniform = true;
  for (const auto& d : dims) uniform = uniform && d == dims.front();
  auto P = [](const Int& d) { return "P^" + Int(d - 1).get_str(); };
  if (uniform && dims.size() > 1) return "(" + P(dims.front()) + ")^" + std::to_string(dims.size());
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? " x " : "") + P(dims[i]);
  return s;
}

PlanStep make_step(const LatticeSpec& lat, std::string result, std::string qname, const DivisorClass& q,
                   std::vector<BundleTerm> subs, int copies = 1) {
  PlanStep st;
  st.result = std::move(result);
  st.quotient_name = std::move(qname);
  st.quotient = q;
  st.copies = copies;
  int rank = 1;
  for (const auto& sub : subs) {
    std::vector<Int> per;
    Int total = 0;
    for (const auto& f : sub.factors) {
      per.push_back(ext1_dim(lat, q, f));
      total += per.back();
    }
    st.factor_dims.push_back(std::move(per));
    st.ext_dims.push_back(total);
    rank += sub.rank();
  }
  st.subs = std::move(subs);
  st.rank_after = rank;
  return st;
}

}  // namespace

ExtensionPlan family_plan(const LatticeSpec& lat, const std::array<DivisorClass, 4>& blocks, int n) {
  if (n < 2) throw PreconditionError("family plans start at rank 2, got " + std::to_string(n));
  const int used = n == 2 ? 2 : (n % 2 == 1 ? 3 : 4);
  const std::array<std::string, 4> names{"O(D1)", "O(D2)", "O(D3)", "O(D4)"};
  for (int i = 0; i < used; ++i)
    for (int j = 0; j < used; ++j) {
      if (i == j) continue;
      ThreeValued h = hom_vanishing(lat, blocks[i], blocks[j]);
      if (!h.is_yes())
        throw PreconditionError("Hom(" + names[i] + ", " + names[j] + ") does not vanish: " + h.reason);
    }

  ExtensionPlan plan;
  plan.n = n;
  for (int i = 0; i < used; ++i) {
    plan.block_names.push_back(names[i]);
    plan.building_blocks.push_back(blocks[i]);
  }
  BundleTerm line2{names[1], {names[1]}, {blocks[1]}};
  if (n == 2) {
    plan.steps.push_back(make_step(lat, "E", names[0], blocks[0], {line2}));
    plan.final_factor_dims = plan.steps.back().ext_dims;
  } else {
    const int m = (n - 1) / 2;
    plan.steps.push_back(make_step(lat, "E_i", names[0], blocks[0], {line2}, m));
    std::vector<BundleTerm> es;
    for (int i = 1; i <= m; ++i)
      es.push_back({"E_" + std::to_string(i), {names[1], names[0]}, {blocks[1], blocks[0]}});
    plan.steps.push_back(make_step(lat, "G", names[2], blocks[2], es));
    if (n % 2 == 1) {
      plan.final_factor_dims = plan.steps.back().ext_dims;
    } else {
      BundleTerm g{"G", {}, {}};
      for (const auto& e : es) {
        g.factor_names.insert(g.factor_names.end(), e.factor_names.begin(), e.factor_names.end());
        g.factors.insert(g.factors.end(), e.factors.begin(), e.factors.end());
      }
      g.factor_names.push_back(names[2]);
      g.factors.push_back(blocks[2]);
      plan.steps.push_back(make_step(lat, "F", names[3], blocks[3], {g}));
      plan.final_factor_dims = plan.steps.back().ext_dims;
    }
  }
  for (const auto& d : plan.final_factor_dims) plan.parameter_space_dim += d - 1;
  plan.parameter_space = projective_product(plan.final_factor_dims);
  if (plan.steps.back().rank_after != n) throw std::logic_error("plan rank does not add up");
  return plan;
}

ExtensionPlan family_plan(int n) {
  static const LatticeSpec lat = build_dp9();
  const auto& c = dp9_classes();
  return family_plan(lat, c.D, n);
}

bool semistable_certificate(const LatticeSpec& lat, const DivisorClass& H, const ExtensionPlan& plan) {
  return reduced_hilbert_equal(lat, H, plan.building_blocks);
}

Json to_json(const HilbertPoly& p) { return Json::array({to_json(p.c2), to_json(p.c1), to_json(p.c0)}); }

Json to_json(const ExtensionPlan& plan) {
  Json j;
  j["n"] = plan.n;
  Json blocks = Json::array();
  for (std::size_t i = 0; i < plan.building_blocks.size(); ++i)
    blocks.push_back({{"name", plan.block_names[i]}, {"class", to_json(plan.building_blocks[i])}});
  j["building_blocks"] = std::move(blocks);
  Json steps = Json::array();
  for (const auto& st : plan.steps) {
    Json s;
    s["result"] = st.result;
    s["quotient"] = st.quotient_name;
    s["copies"] = st.copies;
    s["rank_after"] = st.rank_after;
    Json subs = Json::array();
    for (std::size_t i = 0; i < st.subs.size(); ++i) {
      Json f = Json::array();
      for (std::size_t k = 0; k < st.subs[i].factors.size(); ++k)
        f.push_back({{"factor", st.subs[i].factor_names[k]}, {"ext1", to_json(st.factor_dims[i][k])}});
      subs.push_back({{"name", st.subs[i].name}, {"ext1", to_json(st.ext_dims[i])}, {"factors", std::move(f)}});
    }
    s["subs"] = std::move(subs);
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  Json dims = Json::array();
  for (const auto& d : plan.final_factor_dims) dims.push_back(to_json(d));
  j["final_factor_dims"] = std::move(dims);
  j["parameter_space"] = plan.parameter_space;
  j["parameter_space_dim"] = to_json(plan.parameter_space_dim);
  return j;
}

}  // namespace k3acm
