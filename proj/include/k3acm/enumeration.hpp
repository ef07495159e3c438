#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "k3acm/lattice.hpp"

namespace k3acm {

// Bounds on D^2. A lower bound is required for the slice to be finite.
struct SquarePredicate {
  std::optional<Int> lo;
  std::optional<Int> hi;

  static SquarePredicate equal(const Int& s) { return {s, s}; }
  static SquarePredicate at_least(const Int& s) { return {s, std::nullopt}; }
  static SquarePredicate at_most(const Int& s) { return {std::nullopt, s}; }
  static SquarePredicate between(const Int& lo, const Int& hi) { return {lo, hi}; }

  bool accepts(const Int& sq) const { return (!lo || sq >= *lo) && (!hi || sq <= *hi); }
};

struct LinearConstraint {
  DivisorClass cls;
  Int value;  // required pair(cls, D)
};

// {D : pair(H, D) = degree, D^2 satisfies square, pair(c_i, D) = v_i}.
struct SliceQuery {
  DivisorClass degree_class;
  Int degree;
  SquarePredicate square;
  std::vector<LinearConstraint> extra;
};

// Complete, duplicate-free, lexicographically sorted. Throws PreconditionError
// when H^2 <= 0, the square has no lower bound, or the orthogonal complement
// of H is not negative definite.
std::vector<DivisorClass> enumerate_slice(const LatticeSpec& lat, const SliceQuery& q);

// Streams the same set without sorting or materializing it. The reference
// passed to `visit` is reused between calls.
void for_each_in_slice(const LatticeSpec& lat, const SliceQuery& q,
                       const std::function<void(const DivisorClass&)>& visit);

std::size_t count_slice(const LatticeSpec& lat, const SliceQuery& q);

// Union of the slices of degree 1..d_max, sorted.
std::vector<DivisorClass> enumerate_up_to_degree(const LatticeSpec& lat, const DivisorClass& H, const Int& d_max,
                                                 const SquarePredicate& square);

struct OrthogonalGram {
  IntMatrix basis;  // rows: a Z-basis of H-perp in lattice coordinates
  IntMatrix gram;   // basis Gram matrix
  Int scale = 1;    // denominator cleared from the Gram entries (always 1 for a kernel basis)
  bool negative_definite = false;
  std::optional<Int> max_square;  // largest nonzero square, i.e. the minimal vectors
};

// Requires H primitive with H^2 > 0.
OrthogonalGram orthogonal_slice_gram(const LatticeSpec& lat, const DivisorClass& H);

// Worker threads for enumeration: K3ACM_THREADS when set, else hardware concurrency.
unsigned enumeration_threads();

}  // namespace k3acm
