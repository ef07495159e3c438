#include "k3acm/nikulin.hpp"

#include <stdexcept>

#include "k3acm/errors.hpp"

namespace k3acm {

std::string to_string(FixedLocusShape s) {
  switch (s) {
    case FixedLocusShape::Empty: return "Empty";
    case FixedLocusShape::TwoElliptic: return "TwoElliptic";
    case FixedLocusShape::GeneralSum: return "GeneralSum";
  }
  return "?";
}

FixedLocusDescriptor fixed_locus(int rho, int a, int delta) {
  if (rho < 1 || rho > 20) throw PreconditionError("rho must lie in [1, 20], got " + std::to_string(rho));
  if (a < 0 || a > rho) throw PreconditionError("a must lie in [0, rho], got " + std::to_string(a));
  if ((rho - a) % 2 != 0) throw PreconditionError("rho and a must have the same parity");
  if (rho + a > 22) throw PreconditionError("rho + a must not exceed 22");
  if (delta != 0 && delta != 1) throw PreconditionError("delta must be 0 or 1");
  FixedLocusDescriptor out;
  if (rho == 10 && a == 10 && delta == 0) {
    out.shape = FixedLocusShape::Empty;
    return out;
  }
  if (rho == 10 && a == 8 && delta == 0) {
    out.shape = FixedLocusShape::TwoElliptic;
    return out;
  }
  out.shape = FixedLocusShape::GeneralSum;
  out.genus = (22 - rho - a) / 2;
  out.rational_tail_count = (rho - a) / 2;
  out.elliptic_type = out.genus >= 2;
  return out;
}

LatticeSpec classify_rank_a(int a, int delta) {
  if (a < 1 || a > 9) throw PreconditionError("rank must lie in [1, 9], got " + std::to_string(a));
  if (delta == 0) {
    if (a != 2) throw PreconditionError("delta = 0 forces a = 2, got a = " + std::to_string(a));
    return LatticeSpec("U(2)", {"u1", "u2"}, {{0, 2}, {2, 0}}, DivisorClass{1, 1}, true);
  }
  if (delta != 1) throw PreconditionError("delta must be 0 or 1");
  IntMatrix gram(a, IntVec(a, 0));
  std::vector<std::string> labels{"B"};
  IntVec ref(a, -1);
  gram[0][0] = 2;
  ref[0] = 3;
  for (int i = 1; i < a; ++i) {
    gram[i][i] = -2;
    labels.push_back("E" + std::to_string(i));
  }
  std::string name = a == 1 ? "<2>" : "<2>+A1^" + std::to_string(a - 1);
  return LatticeSpec(name, std::move(labels), std::move(gram), DivisorClass(std::move(ref)), true);
}

const Dp9Classes& dp9_classes() {
  static const Dp9Classes classes = [] {
    Dp9Classes c;
    c.B = DivisorClass::unit(9, 0);
    for (std::size_t i = 0; i < 8; ++i) c.E[i] = DivisorClass::unit(9, i + 1);
    c.X = 3 * c.B;
    for (const auto& e : c.E) c.X -= e;
    for (std::size_t i = 0; i < 4; ++i) c.D[i] = c.B - c.E[2 * i] - c.E[2 * i + 1];
    c.H = 3 * c.X;
    return c;
  }();
  return classes;
}

LatticeSpec build_dp9() {
  LatticeSpec base = classify_rank_a(9, 1);
  LatticeSpec lat("dp9", base.labels(), base.gram(), dp9_classes().X, true);
  const auto& c = dp9_classes();
  auto fail = [](const std::string& what) { throw std::logic_error("dp9 self-check failed: " + what); };
  auto inv = two_elementary_invariants(lat);
  if (!std::holds_alternative<TwoElementaryInvariants>(inv) ||
      std::get<TwoElementaryInvariants>(inv) != TwoElementaryInvariants{9, 9, 1})
    fail("(rho, a, delta) != (9, 9, 1)");
  if (self_int(lat, c.X) != 2) fail("X^2 != 2");
  if (self_int(lat, c.H) != 18) fail("H^2 != 18");
  for (const auto& d : c.D) {
    if (self_int(lat, d) != -2) fail("D_i^2 != -2");
    if (pair(lat, c.X, d) != 2) fail("X.D_i != 2");
  }
  return lat;
}

LatticeSpec builtin_lattice(const std::string& name) {
  if (name == "dp9") return build_dp9();
  if (name == "u2") {
    LatticeSpec l = classify_rank_a(2, 0);
    return LatticeSpec("u2", l.labels(), l.gram(), l.ample_ref(), true);
  }
  if (name == "quartic-demo")
    return LatticeSpec("quartic-demo", {"h", "c"}, {{4, 0}, {0, -2}}, DivisorClass{2, 1}, true);
  throw InputError("unknown builtin lattice '" + name + "' (known: dp9, u2, quartic-demo)");
}

std::vector<std::string> builtin_names() { return {"dp9", "quartic-demo", "u2"}; }

DegreeConstraints invariant_degree_constraints(const Int& D_sq, int gamma_min, int gamma_max) {
  if (D_sq < 0 || D_sq % 2 != 0) throw PreconditionError("D^2 must be even and nonnegative");
  if (gamma_min < 0 || gamma_min > gamma_max) throw PreconditionError("quotient genus range is empty or negative");
  DegreeConstraints out;
  for (int g = gamma_min; g <= gamma_max; ++g) {
    Int v = D_sq - 4 * Int(g - 1);
    if (v > 0) out.invariant.insert(v);
  }
  for (Int v = 1; v <= D_sq; ++v) out.non_invariant.insert(v);
  return out;
}

}  // namespace k3acm
