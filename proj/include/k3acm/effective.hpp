#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3acm/lattice.hpp"
#include "k3acm/three_valued.hpp"

namespace k3acm {

// Riemann-Roch on a K3 surface: D^2/2 + 2. Throws PreconditionError on odd D^2.
Int chi(const LatticeSpec& lat, const DivisorClass& D);

// Smallest positive degree pair(ample_ref, D) over the lattice.
Int minimal_positive_degree(const LatticeSpec& lat);

enum class Effectivity { Effective, NotEffective };

struct EffectivityVerdict {
  Effectivity status = Effectivity::NotEffective;
  // Summands of square >= -2 and positive degree adding up to the input:
  // the peeled (-2)-curves in order, then the final movable part.
  std::optional<std::vector<DivisorClass>> witness;

  bool effective() const { return status == Effectivity::Effective; }
};

// D = 0 counts as effective. Requires ample_ref.
EffectivityVerdict is_effective(const LatticeSpec& lat, const DivisorClass& D);

// Effective (-2)-class with no decomposition into two nonzero effective classes.
bool is_neg2_curve(const LatticeSpec& lat, const DivisorClass& D);

// All (-2)-curves of ample_ref degree <= max_degree, ordered by degree, then lexicographically.
std::vector<DivisorClass> neg2_curves_up_to(const LatticeSpec& lat, const Int& max_degree);

// Degree bound (against ample_ref) beyond which no (-2)-curve can pair negatively with H.
// Requires pair(H, ample_ref) > 0 and H not proportional to ample_ref.
Int nef_search_bound(const LatticeSpec& lat, const DivisorClass& H);

// A cap below the provable bound turns an empty search into Unknown(bound).
ThreeValued is_nef(const LatticeSpec& lat, const DivisorClass& H, std::optional<Int> cap = std::nullopt);
ThreeValued is_ample(const LatticeSpec& lat, const DivisorClass& H, std::optional<Int> cap = std::nullopt);

// No iff D = kF + G with F an elliptic pencil, G a (-2)-curve, F.G = 1, k >= 2.
// Throws PreconditionError when D is not effective or not nef.
ThreeValued is_base_point_free_numeric(const LatticeSpec& lat, const DivisorClass& D);

// Throws PreconditionError when L^2 < 4.
ThreeValued is_very_ample_numeric(const LatticeSpec& lat, const DivisorClass& L);

struct DegreeBoundCheck {
  std::string clause;  // "i", "ii" or "iii"
  Truth satisfied = Truth::Unknown;
  std::string detail;
};

// Degree bounds for a nonzero effective D with D^2 >= 0 against an ample L.
// Returns the clauses that apply to L.
std::vector<DegreeBoundCheck> corollary21_check(const LatticeSpec& lat, const DivisorClass& L, const DivisorClass& D);

enum class H1Value { Zero, Exactly, Unknown };

struct H1Status {
  H1Value value = H1Value::Unknown;
  Int k = 0;         // meaningful for Exactly; Exactly(0) is reported as Zero
  std::string rule;  // "r1".."r5", "zero-class", "serre", "riemann-roch" or "none"

  static H1Status zero(std::string rule) { return {H1Value::Zero, 0, std::move(rule)}; }
  static H1Status exactly(const Int& k, std::string rule) {
    if (k == 0) return zero(std::move(rule));
    return {H1Value::Exactly, k, std::move(rule)};
  }
  static H1Status unknown() { return {H1Value::Unknown, 0, "none"}; }
  bool is_zero() const { return value == H1Value::Zero; }
  bool is_unknown() const { return value == H1Value::Unknown; }
};

std::string to_string(const H1Status& s);

// First rule that fires, in order r1..r5. `base_divisor` enables r5.
// Throws PreconditionError when D is zero or not effective.
H1Status h1_status(const LatticeSpec& lat, const DivisorClass& D,
                   const std::optional<DivisorClass>& base_divisor = std::nullopt);

// Every rule that fires, in rule order.
std::vector<H1Status> h1_all_rules(const LatticeSpec& lat, const DivisorClass& D,
                                   const std::optional<DivisorClass>& base_divisor = std::nullopt);

// h^1 of an arbitrary class: Serre duality reduces to an effective class when
// one of +-X is effective; otherwise h^0 = h^2 = 0 and h^1 = -chi.
H1Status h1_of(const LatticeSpec& lat, const DivisorClass& X);

struct OneConnectedResult {
  ThreeValued verdict;
  std::optional<std::pair<DivisorClass, DivisorClass>> witness;  // D1 + D2 = D with D1.D2 <= 0
};

OneConnectedResult one_connected(const LatticeSpec& lat, const DivisorClass& D);
ThreeValued is_one_connected(const LatticeSpec& lat, const DivisorClass& D);

// (H.D)^2 >= H^2 D^2 when D^2 > 0, with equality only for proportional classes.
bool hodge_index_check(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D);

}  // namespace k3acm
