#pragma once

#include <array>
#include <string>
#include <vector>

#include "k3acm/lattice.hpp"
#include "k3acm/lattice_io.hpp"
#include "k3acm/three_valued.hpp"

namespace k3acm {

// Hom(O(D1), O(D2)) = H0(O(D2 - D1)) vanishes: Yes iff D2 - D1 is nonzero and not effective.
ThreeValued hom_vanishing(const LatticeSpec& lat, const DivisorClass& D1, const DivisorClass& D2);

// dim Ext1(O(D1), O(D2)) = -chi(D2 - D1) once Hom vanishes in both directions
// (the reverse direction kills Ext2 by Serre duality). Throws PreconditionError otherwise.
Int ext1_dim(const LatticeSpec& lat, const DivisorClass& D1, const DivisorClass& D2);

// chi(O(D + nH)) = c2 n^2 + c1 n + c0.
struct HilbertPoly {
  Int c2 = 0, c1 = 0, c0 = 0;
  friend bool operator==(const HilbertPoly&, const HilbertPoly&) = default;
  HilbertPoly& operator+=(const HilbertPoly& o);
};

HilbertPoly hilbert_poly(const LatticeSpec& lat, const DivisorClass& H, const DivisorClass& D);

// Hilbert polynomial of a bundle filtered by line bundles, with its rank.
struct BundlePoly {
  HilbertPoly total;
  int rank = 0;
};

BundlePoly bundle_poly(const LatticeSpec& lat, const DivisorClass& H, const std::vector<DivisorClass>& factors);
bool same_reduced(const BundlePoly& a, const BundlePoly& b);

// Every class has the same Hilbert polynomial (rank one, so reduced = plain).
bool reduced_hilbert_equal(const LatticeSpec& lat, const DivisorClass& H, const std::vector<DivisorClass>& classes);

// A bundle known through its line-bundle composition factors.
struct BundleTerm {
  std::string name;
  std::vector<std::string> factor_names;
  std::vector<DivisorClass> factors;
  int rank() const { return static_cast<int>(factors.size()); }
};

// Extension of a line bundle O(quotient) by the direct sum of `subs`.
struct PlanStep {
  std::string result;                 // name of the bundle built
  std::string quotient_name;
  DivisorClass quotient;
  std::vector<BundleTerm> subs;
  std::vector<std::vector<Int>> factor_dims;  // Ext1(quotient, factor) per sub, per factor
  std::vector<Int> ext_dims;                  // Ext1(quotient, sub) = sum over its factors
  int rank_after = 0;
  int copies = 1;                     // identical steps taken with pairwise non-equivalent classes
};

struct ExtensionPlan {
  int n = 0;
  std::vector<std::string> block_names;
  std::vector<DivisorClass> building_blocks;
  std::vector<PlanStep> steps;
  // The last step's parameter space is the product of P(Ext1(quotient, F_i)).
  std::vector<Int> final_factor_dims;
  Int parameter_space_dim = 0;
  std::string parameter_space;
};

// Blocks D1..D4 with pairwise vanishing Hom. Throws PreconditionError for n < 2
// or when some Hom between distinct blocks fails to vanish.
ExtensionPlan family_plan(const LatticeSpec& lat, const std::array<DivisorClass, 4>& blocks, int n);
// The dp9 schedule with D1 = B - E1 - E2, ..., D4 = B - E7 - E8.
ExtensionPlan family_plan(int n);

// All blocks share one reduced Hilbert polynomial, so every extension step keeps semistability.
bool semistable_certificate(const LatticeSpec& lat, const DivisorClass& H, const ExtensionPlan& plan);

Json to_json(const HilbertPoly& p);
Json to_json(const ExtensionPlan& plan);

}  // namespace k3acm
