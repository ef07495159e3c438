#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "k3acm/lattice.hpp"

namespace k3acm {

enum class FixedLocusShape { Empty, TwoElliptic, GeneralSum };

std::string to_string(FixedLocusShape s);

// Fixed curve of the canonical involution: C^(g) plus k disjoint rational curves.
struct FixedLocusDescriptor {
  FixedLocusShape shape = FixedLocusShape::GeneralSum;
  int genus = 0;                 // GeneralSum only
  int rational_tail_count = 0;   // GeneralSum only
  bool elliptic_type = false;    // genus >= 2
  friend bool operator==(const FixedLocusDescriptor&, const FixedLocusDescriptor&) = default;
};

// Throws PreconditionError outside 1 <= rho <= 20, 0 <= a <= rho, rho = a mod 2, rho + a <= 22.
FixedLocusDescriptor fixed_locus(int rho, int a, int delta);

// The hyperbolic even 2-elementary lattice of rank a: U(2) for delta = 0 (a = 2 only),
// <2> + A1^(a-1) for delta = 1, with ample_ref (3, -1, ..., -1) and the K3 flag set.
LatticeSpec classify_rank_a(int a, int delta);

// <2> + A1^8 in the basis (B, E1..E8) with ample_ref X = 3B - E1 - ... - E8.
// Verifies its own invariants and throws std::logic_error if any fails.
LatticeSpec build_dp9();

struct Dp9Classes {
  DivisorClass B;
  std::array<DivisorClass, 8> E;
  DivisorClass X;                 // fixed curve class 3B - sum E_i
  std::array<DivisorClass, 4> D;  // B - E1 - E2, B - E3 - E4, B - E5 - E6, B - E7 - E8
  DivisorClass H;                 // 3X
};

const Dp9Classes& dp9_classes();

// Builtin lattices by name: "dp9", "u2", "quartic-demo". Throws InputError for other names.
LatticeSpec builtin_lattice(const std::string& name);
std::vector<std::string> builtin_names();

// Possible values of X.D for a smooth curve D of square D_sq, split by whether
// the involution preserves D (Hurwitz: D_sq = 4(gamma - 1) + X.D) or moves it
// (X.D <= theta(D).D = D_sq).
struct DegreeConstraints {
  std::set<Int> invariant;
  std::set<Int> non_invariant;
  bool allows(const Int& v) const { return invariant.count(v) || non_invariant.count(v); }
};

// Quotient genus gamma ranges over [gamma_min, gamma_max]. Requires D_sq even and >= 0.
DegreeConstraints invariant_degree_constraints(const Int& D_sq, int gamma_min, int gamma_max);

}  // namespace k3acm
