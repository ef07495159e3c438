#include "k3acm/effective.hpp"

#include <algorithm>

#include "k3acm/enumeration.hpp"
#include "k3acm/errors.hpp"
#include "lattice_cache.hpp"
#include "memo.hpp"
#include "small_int.hpp"

namespace k3acm {

namespace {

using detail::CurveCatalogue;
using detail::memo_get;
using detail::memo_put;

constexpr int64_t kPeelLimit = int64_t(1) << 40;

bool proportional(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& ref) {
  Int a = self_int(lat, ref);
  Int b = pair(lat, ref, H);
  for (std::size_t i = 0; i < H.size(); ++i)
    if (a * H[i] != b * ref[i]) return false;
  return true;
}

void append_curve(CurveCatalogue& cat, const LatticeSpec& lat, const DivisorClass& c, const Int& deg) {
  cat.curves.push_back(c);
  cat.degrees.push_back(deg);
  if (!cat.small) return;
  std::vector<int64_t> co, row;
  if (!detail::to_small_vec(c.coords(), co) || !detail::to_small_vec(pairing_row(lat, c), row) || !fits_int64(deg)) {
    cat.small = false;
    return;
  }
  cat.coords.push_back(std::move(co));
  cat.rows.push_back(std::move(row));
  cat.small_degrees.push_back(to_int64(deg));
}

Int pair_with_curve(const CurveCatalogue& cat, std::size_t i, const LatticeSpec& lat, const DivisorClass& D) {
  return pair(lat, cat.curves[i], D);
}

std::shared_ptr<const CurveCatalogue> catalogue_through(const LatticeSpec& lat, const Int& through) {
  auto& cache = lat.cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  if (cache.curves->initialized && cache.curves->complete_through >= through) return cache.curves;
  auto next = std::make_shared<CurveCatalogue>(*cache.curves);
  const DivisorClass& ref = lat.require_ample_ref();
  if (!next->initialized) {
    next->initialized = true;
    next->min_degree = gcd_of(pairing_row(lat, ref));
    if (next->min_degree == 0) throw DegenerateLattice("ample_ref pairs to zero with every class");
    next->small = lat.small_gram() != nullptr && detail::to_small_vec(pairing_row(lat, ref), next->ref_row);
  }
  for (Int k = next->complete_through + 1; k <= through; ++k) {
    if (k % next->min_degree != 0) continue;
    auto candidates = enumerate_slice(lat, SliceQuery{ref, k, SquarePredicate::equal(-2), {}});
    std::vector<DivisorClass> fresh;
    for (const auto& c : candidates) {
      bool irreducible = true;
      for (std::size_t i = 0; i < next->curves.size() && irreducible; ++i)
        if (pair_with_curve(*next, i, lat, c) < 0) irreducible = false;
      if (irreducible) fresh.push_back(c);
    }
    for (const auto& c : fresh) append_curve(*next, lat, c, k);
  }
  if (through > next->complete_through) next->complete_through = through;
  cache.curves = next;
  return next;
}

std::shared_ptr<const CurveCatalogue> catalogue(const LatticeSpec& lat) { return catalogue_through(lat, 0); }

// Peeling with 64-bit arithmetic. Throws Overflow when coordinates leave the safe range.
EffectivityVerdict peel_small(const CurveCatalogue& cat, const std::vector<int64_t>& start, int64_t deg, int64_t sq) {
  const std::size_t n = start.size();
  std::vector<int64_t> cur = start;
  std::vector<DivisorClass> witness;
  for (;;) {
    std::size_t hit = cat.curves.size();
    __int128 p = 0;
    for (std::size_t i = 0; i < cat.curves.size() && cat.small_degrees[i] < deg; ++i) {
      p = detail::dot128(cat.rows[i].data(), cur.data(), n);
      if (p < 0) {
        hit = i;
        break;
      }
    }
    if (hit == cat.curves.size()) return {Effectivity::NotEffective, std::nullopt};
    const auto& c = cat.coords[hit];
    bool zero = true;
    for (std::size_t l = 0; l < n; ++l) {
      cur[l] = detail::sub_ck(cur[l], c[l]);
      if (cur[l] >= kPeelLimit || cur[l] <= -kPeelLimit) throw detail::Overflow{};
      zero = zero && cur[l] == 0;
    }
    witness.push_back(cat.curves[hit]);
    deg -= cat.small_degrees[hit];
    sq = detail::sub_ck(sq, static_cast<int64_t>(2 * p + 2));
    if (zero) return {Effectivity::Effective, std::move(witness)};
    if (deg <= 0) return {Effectivity::NotEffective, std::nullopt};
    if (sq >= -2) {
      IntVec v(n);
      for (std::size_t l = 0; l < n; ++l) v[l] = static_cast<long>(cur[l]);
      witness.emplace_back(std::move(v));
      return {Effectivity::Effective, std::move(witness)};
    }
  }
}

EffectivityVerdict peel_big(const LatticeSpec& lat, const CurveCatalogue& cat, DivisorClass cur, Int deg) {
  std::vector<DivisorClass> witness;
  for (;;) {
    std::size_t hit = cat.curves.size();
    for (std::size_t i = 0; i < cat.curves.size() && cat.degrees[i] < deg; ++i)
      if (pair(lat, cat.curves[i], cur) < 0) {
        hit = i;
        break;
      }
    if (hit == cat.curves.size()) return {Effectivity::NotEffective, std::nullopt};
    cur -= cat.curves[hit];
    deg -= cat.degrees[hit];
    witness.push_back(cat.curves[hit]);
    if (cur.is_zero()) return {Effectivity::Effective, std::move(witness)};
    if (deg <= 0) return {Effectivity::NotEffective, std::nullopt};
    if (self_int(lat, cur) >= -2) {
      witness.push_back(cur);
      return {Effectivity::Effective, std::move(witness)};
    }
  }
}

}  // namespace

Int chi(const LatticeSpec& lat, const DivisorClass& D) {
  Int sq = self_int(lat, D);
  if (sq % 2 != 0) throw PreconditionError("chi needs an even square, got " + sq.get_str());
  return sq / 2 + 2;
}

Int minimal_positive_degree(const LatticeSpec& lat) { return catalogue(lat)->min_degree; }

EffectivityVerdict is_effective(const LatticeSpec& lat, const DivisorClass& D) {
  check_dimension(lat, D);
  const DivisorClass& ref = lat.require_ample_ref();
  if (D.is_zero()) return {Effectivity::Effective, std::vector<DivisorClass>{}};
  auto cat = catalogue(lat);
  const std::size_t n = lat.rank();

  std::vector<int64_t> small;
  if (cat->small && detail::to_small_vec(D.coords(), small)) {
    const int64_t* G = lat.small_gram()->data();
    __int128 deg = detail::dot128(cat->ref_row.data(), small.data(), n);
    if (deg <= 0) return {Effectivity::NotEffective, std::nullopt};
    __int128 sq = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (small[i] != 0) sq += static_cast<__int128>(small[i]) * detail::dot128(G + i * n, small.data(), n);
    if (sq >= -2) return {Effectivity::Effective, std::vector<DivisorClass>{D}};
    __int128 g = static_cast<__int128>(to_int64(cat->min_degree));
    // effective classes satisfy D^2 >= -2 (deg/g)^2
    bool tiny = deg < (__int128(1) << 40) && sq > -(__int128(1) << 80);
    if (tiny && sq * g * g < -2 * deg * deg) return {Effectivity::NotEffective, std::nullopt};
    if (tiny) {
      auto full = catalogue_through(lat, Int(static_cast<long>(deg - 1)));
      if (full->small) {
        try {
          return peel_small(*full, small, static_cast<int64_t>(deg), static_cast<int64_t>(sq));
        } catch (const detail::Overflow&) {
        }
      }
    }
  }

  Int deg = pair(lat, ref, D);
  if (deg <= 0) return {Effectivity::NotEffective, std::nullopt};
  Int sq = self_int(lat, D);
  if (sq >= -2) return {Effectivity::Effective, std::vector<DivisorClass>{D}};
  Int g = cat->min_degree;
  if (sq * g * g < -2 * deg * deg) return {Effectivity::NotEffective, std::nullopt};
  auto full = catalogue_through(lat, deg - 1);
  return peel_big(lat, *full, D, deg);
}

bool is_neg2_curve(const LatticeSpec& lat, const DivisorClass& D) {
  check_dimension(lat, D);
  const DivisorClass& ref = lat.require_ample_ref();
  if (D.is_zero() || self_int(lat, D) != -2) return false;
  Int deg = pair(lat, ref, D);
  if (deg <= 0) return false;
  auto cat = catalogue_through(lat, deg - 1);
  for (std::size_t i = 0; i < cat->curves.size() && cat->degrees[i] < deg; ++i)
    if (pair(lat, cat->curves[i], D) < 0) return false;
  return true;
}

std::vector<DivisorClass> neg2_curves_up_to(const LatticeSpec& lat, const Int& max_degree) {
  auto cat = catalogue_through(lat, max_degree);
  std::vector<DivisorClass> out;
  for (std::size_t i = 0; i < cat->curves.size() && cat->degrees[i] <= max_degree; ++i) out.push_back(cat->curves[i]);
  return out;
}

Int nef_search_bound(const LatticeSpec& lat, const DivisorClass& H) {
  const DivisorClass& ref = lat.require_ample_ref();
  Int a = self_int(lat, ref);
  Int b = pair(lat, ref, H);
  Int c = self_int(lat, H);
  if (b <= 0) throw PreconditionError("nef search bound needs pair(H, ample_ref) > 0");
  Int disc = a * c - b * b;
  if (disc >= 0) throw PreconditionError("H and ample_ref span a plane that is not hyperbolic");
  Int d = -disc;
  Int bound = d / b;
  if (c > 0) bound = std::min(bound, isqrt(2 * d / c));
  return bound;
}

ThreeValued is_nef(const LatticeSpec& lat, const DivisorClass& H, std::optional<Int> cap) {
  check_dimension(lat, H);
  const DivisorClass& ref = lat.require_ample_ref();
  std::string key = "nef:" + to_string(H) + (cap ? ":" + cap->get_str() : "");
  if (auto m = memo_get(lat, key)) return *m;
  ThreeValued result = [&]() -> ThreeValued {
    if (pair(lat, ref, H) <= 0) return ThreeValued::no("H has non-positive degree against ample_ref");
    if (self_int(lat, H) < 0) return ThreeValued::no("H has negative square");
    if (proportional(lat, H, ref)) return ThreeValued::yes("positive multiple of ample_ref");
    Int bound = nef_search_bound(lat, H);
    Int limit = (cap && *cap < bound) ? *cap : bound;
    auto cat = catalogue_through(lat, limit);
    for (std::size_t i = 0; i < cat->curves.size() && cat->degrees[i] <= limit; ++i)
      if (pair(lat, H, cat->curves[i]) < 0)
        return ThreeValued::no("negative on the (-2)-curve " + to_string(cat->curves[i]));
    if (limit < bound)
      return ThreeValued::unknown("(-2)-curve search capped at degree " + limit.get_str(), bound);
    return ThreeValued::yes("no (-2)-curve of degree <= " + bound.get_str() + " pairs negatively");
  }();
  memo_put(lat, key, result);
  return result;
}

ThreeValued is_ample(const LatticeSpec& lat, const DivisorClass& H, std::optional<Int> cap) {
  check_dimension(lat, H);
  const DivisorClass& ref = lat.require_ample_ref();
  if (self_int(lat, H) <= 0) return ThreeValued::no("H has non-positive square");
  if (pair(lat, ref, H) <= 0) return ThreeValued::no("H has non-positive degree against ample_ref");
  std::string key = "ample:" + to_string(H) + (cap ? ":" + cap->get_str() : "");
  if (auto m = memo_get(lat, key)) return *m;
  ThreeValued result = [&]() -> ThreeValued {
    auto orth = enumerate_slice(lat, SliceQuery{H, 0, SquarePredicate::equal(-2), {}});
    if (!orth.empty()) return ThreeValued::no("orthogonal (-2)-class " + to_string(orth.front()));
    ThreeValued nef = is_nef(lat, H, cap);
    if (nef.is_yes()) return ThreeValued::yes("nef with no orthogonal (-2)-class");
    return nef;
  }();
  memo_put(lat, key, result);
  return result;
}

ThreeValued is_base_point_free_numeric(const LatticeSpec& lat, const DivisorClass& D) {
  check_dimension(lat, D);
  const DivisorClass& ref = lat.require_ample_ref();
  if (!is_effective(lat, D).effective()) throw PreconditionError("base point freeness needs an effective class");
  if (D.is_zero()) return ThreeValued::yes("zero class");
  ThreeValued nef = is_nef(lat, D);
  if (nef.is_no()) throw PreconditionError("base point freeness needs a nef class: " + nef.reason);
  if (nef.is_unknown()) return ThreeValued::unknown("nefness undecided: " + nef.reason, nef.bound);
  Int sq = self_int(lat, D);
  Int k = (sq + 2) / 2;
  if (k < 2) return ThreeValued::yes("D^2 < 2 leaves no room for kF + G with k >= 2");
  Int deg = pair(lat, ref, D);
  Int g = minimal_positive_degree(lat);
  Int t_max = floor_div(deg - g, k);
  for (Int t = 1; t <= t_max; ++t) {
    auto fibres = enumerate_slice(lat, SliceQuery{ref, t, SquarePredicate::equal(0), {{D, 1}}});
    for (const auto& F : fibres) {
      if (!F.is_primitive() || !is_nef(lat, F).is_yes()) continue;
      DivisorClass G = D - k * F;
      if (is_neg2_curve(lat, G))
        return ThreeValued::no("D = " + k.get_str() + "F + G with F = " + to_string(F) + ", G = " + to_string(G));
    }
  }
  return ThreeValued::yes("no decomposition kF + G");
}

ThreeValued is_very_ample_numeric(const LatticeSpec& lat, const DivisorClass& L) {
  check_dimension(lat, L);
  const DivisorClass& ref = lat.require_ample_ref();
  Int L2 = self_int(lat, L);
  if (L2 < 4) throw PreconditionError("very ampleness test needs L^2 >= 4, got " + L2.get_str());
  std::string key = "very_ample:" + to_string(L);
  if (auto m = memo_get(lat, key)) return *m;
  ThreeValued result = [&]() -> ThreeValued {
    ThreeValued nef = is_nef(lat, L);
    if (nef.is_no()) return ThreeValued::no("not nef: " + nef.reason);
    if (nef.is_unknown()) return ThreeValued::unknown("nefness undecided: " + nef.reason, nef.bound);
    auto orth = enumerate_slice(lat, SliceQuery{L, 0, SquarePredicate::equal(-2), {}});
    if (!orth.empty()) return ThreeValued::no("orthogonal (-2)-class " + to_string(orth.front()));
    for (int d : {1, 2}) {
      auto iso = enumerate_slice(lat, SliceQuery{L, d, SquarePredicate::equal(0), {}});
      for (const auto& E : iso)
        if (pair(lat, ref, E) > 0)
          return ThreeValued::no("effective isotropic class " + to_string(E) + " of degree " + std::to_string(d));
    }
    if (L.content() % 2 == 0) {
      DivisorClass half = L;
      for (std::size_t i = 0; i < half.size(); ++i) half[i] /= 2;
      if (self_int(lat, half) == 2) return ThreeValued::no("L = 2E with E^2 = 2, E = " + to_string(half));
    }
    return ThreeValued::yes("all three exclusion searches are empty");
  }();
  memo_put(lat, key, result);
  return result;
}

std::vector<DegreeBoundCheck> corollary21_check(const LatticeSpec& lat, const DivisorClass& L, const DivisorClass& D) {
  check_dimension(lat, L);
  check_dimension(lat, D);
  if (D.is_zero() || !is_effective(lat, D).effective())
    throw PreconditionError("degree bounds need a nonzero effective class");
  Int sq = self_int(lat, D);
  if (sq < 0) throw PreconditionError("degree bounds need D^2 >= 0");
  ThreeValued amp = is_ample(lat, L);
  if (!amp.is_yes()) throw PreconditionError("degree bounds need an ample L: " + amp.reason);
  Int L2 = self_int(lat, L);
  Int LD = pair(lat, L, D);
  std::vector<DegreeBoundCheck> out;
  if (L2 == 2) {
    if (D == L) out.push_back({"i", Truth::Yes, "L = O(D)"});
    else if (LD >= 3) out.push_back({"i", Truth::Yes, "L.D = " + LD.get_str() + " >= 3"});
    else out.push_back({"i", Truth::No, "L.D = " + LD.get_str() + " < 3 and D != L"});
    if (LD == 3) {
      if (sq == 2) {
        out.push_back({"ii", Truth::Yes, "D^2 = 2"});
      } else {
        ThreeValued nef = is_nef(lat, D);
        if (nef.is_no()) {
          out.push_back({"ii", Truth::No, "D^2 != 2 and |D| has a fixed (-2)-curve"});
        } else if (nef.is_unknown()) {
          out.push_back({"ii", Truth::Unknown, "nefness of D undecided"});
        } else {
          ThreeValued bpf = is_base_point_free_numeric(lat, D);
          out.push_back({"ii", bpf.value, "base point freeness of |D|: " + bpf.reason});
        }
      }
    }
  } else if (L2 >= 4) {
    ThreeValued va = is_very_ample_numeric(lat, L);
    if (va.is_yes())
      out.push_back({"iii", LD >= 3 ? Truth::Yes : Truth::No, "L.D = " + LD.get_str()});
    else if (va.is_unknown())
      out.push_back({"iii", Truth::Unknown, "very ampleness of L undecided"});
  }
  return out;
}

std::string to_string(const H1Status& s) {
  switch (s.value) {
    case H1Value::Zero: return "Zero";
    case H1Value::Exactly: return "Exactly(" + s.k.get_str() + ")";
    case H1Value::Unknown: break;
  }
  return "Unknown";
}

namespace {

void require_nonzero_effective(const LatticeSpec& lat, const DivisorClass& D, const char* what) {
  check_dimension(lat, D);
  if (D.is_zero() || !is_effective(lat, D).effective())
    throw PreconditionError(std::string(what) + " needs a nonzero effective class, got " + to_string(D));
}

std::optional<H1Status> rule_curve(const LatticeSpec& lat, const DivisorClass& D, const Int& sq) {
  if (sq < 0 && is_neg2_curve(lat, D)) return H1Status::zero("r1");
  return std::nullopt;
}

std::optional<H1Status> rule_pencil(const LatticeSpec& lat, const DivisorClass& D, const Int& sq) {
  if (sq != 0) return std::nullopt;
  Int c = D.content();
  DivisorClass F = D;
  for (std::size_t i = 0; i < F.size(); ++i) F[i] /= c;
  if (is_nef(lat, F).is_yes()) return H1Status::exactly(c - 1, "r2");
  return std::nullopt;
}

std::optional<H1Status> rule_bertini(const LatticeSpec& lat, const DivisorClass& D, const Int& sq) {
  if (sq <= 0 || !is_nef(lat, D).is_yes()) return std::nullopt;
  if (is_base_point_free_numeric(lat, D).is_yes()) return H1Status::zero("r3");
  return std::nullopt;
}

std::optional<H1Status> rule_connected(const LatticeSpec& lat, const DivisorClass& D) {
  if (is_one_connected(lat, D).is_yes()) return H1Status::zero("r4");
  return std::nullopt;
}

std::optional<H1Status> rule_base(const LatticeSpec& lat, const DivisorClass& D, const Int& sq,
                                  const std::optional<DivisorClass>& base) {
  if (!base) return std::nullopt;
  check_dimension(lat, *base);
  if (base->is_zero() || !is_effective(lat, *base).effective()) return std::nullopt;
  DivisorClass moving = D - *base;
  if (moving.is_zero() || !is_effective(lat, moving).effective()) return std::nullopt;
  if (self_int(lat, moving) != sq) return std::nullopt;
  if (h1_status(lat, moving).is_zero()) return H1Status::zero("r5");
  return std::nullopt;
}

}  // namespace

H1Status h1_status(const LatticeSpec& lat, const DivisorClass& D, const std::optional<DivisorClass>& base_divisor) {
  require_nonzero_effective(lat, D, "h1_status");
  Int sq = self_int(lat, D);
  if (auto r = rule_curve(lat, D, sq)) return *r;
  if (auto r = rule_pencil(lat, D, sq)) return *r;
  if (auto r = rule_bertini(lat, D, sq)) return *r;
  if (auto r = rule_connected(lat, D)) return *r;
  if (auto r = rule_base(lat, D, sq, base_divisor)) return *r;
  return H1Status::unknown();
}

std::vector<H1Status> h1_all_rules(const LatticeSpec& lat, const DivisorClass& D,
                                   const std::optional<DivisorClass>& base_divisor) {
  require_nonzero_effective(lat, D, "h1_all_rules");
  Int sq = self_int(lat, D);
  std::vector<H1Status> out;
  for (auto r : {rule_curve(lat, D, sq), rule_pencil(lat, D, sq), rule_bertini(lat, D, sq), rule_connected(lat, D),
                 rule_base(lat, D, sq, base_divisor)})
    if (r) out.push_back(*r);
  return out;
}

H1Status h1_of(const LatticeSpec& lat, const DivisorClass& X) {
  check_dimension(lat, X);
  if (X.is_zero()) return H1Status::zero("zero-class");
  if (is_effective(lat, X).effective()) return h1_status(lat, X);
  DivisorClass neg = -X;
  if (is_effective(lat, neg).effective()) {
    H1Status s = h1_status(lat, neg);
    s.rule = "serre:" + s.rule;
    return s;
  }
  Int c = chi(lat, X);
  if (c > 0)
    throw PreconditionError("class " + to_string(X) + " has chi > 0 but neither it nor its negative is effective; "
                            "ample_ref is not ample");
  return H1Status::exactly(-c, "riemann-roch");
}

OneConnectedResult one_connected(const LatticeSpec& lat, const DivisorClass& D) {
  require_nonzero_effective(lat, D, "one_connected");
  const DivisorClass& ref = lat.require_ample_ref();
  Int deg = pair(lat, ref, D);
  Int sq = self_int(lat, D);
  Int a = self_int(lat, ref);
  Int g = minimal_positive_degree(lat);
  for (Int k = g; 2 * k <= deg; k += g) {
    Int lo_own = ceil_div(-2 * k * k, g * g);
    Int rest = deg - k;
    Int lo_rest = ceil_div(sq * a - rest * rest, a);
    Int lo = std::max(lo_own, lo_rest);
    auto parts = enumerate_slice(lat, SliceQuery{ref, k, SquarePredicate::at_least(lo), {}});
    for (const auto& D1 : parts) {
      DivisorClass D2 = D - D1;
      if (pair(lat, D1, D2) > 0) continue;
      if (!is_effective(lat, D1).effective() || !is_effective(lat, D2).effective()) continue;
      return {ThreeValued::no("D = " + to_string(D1) + " + " + to_string(D2) + " with D1.D2 = " +
                              pair(lat, D1, D2).get_str()),
              std::make_pair(D1, D2)};
    }
  }
  return {ThreeValued::yes("every effective decomposition has D1.D2 >= 1"), std::nullopt};
}

ThreeValued is_one_connected(const LatticeSpec& lat, const DivisorClass& D) { return one_connected(lat, D).verdict; }

bool hodge_index_check(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D) {
  check_dimension(lat, H);
  check_dimension(lat, D);
  Int h2 = self_int(lat, H);
  if (h2 <= 0) throw PreconditionError("Hodge index check needs H^2 > 0");
  Int d2 = self_int(lat, D);
  if (d2 <= 0) return true;
  Int hd = pair(lat, H, D);
  Int lhs = hd * hd, rhs = h2 * d2;
  if (lhs < rhs) return false;
  if (lhs == rhs) return proportional(lat, D, H);
  return true;
}

}  // namespace k3acm
