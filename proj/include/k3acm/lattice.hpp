#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "k3acm/bigint.hpp"

namespace k3acm {

namespace detail {
struct LatticeCache;
}

// Coordinates of a divisor class in the basis of its lattice.
class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(IntVec coords) : coords_(std::move(coords)) {}
  DivisorClass(std::initializer_list<long> coords);

  static DivisorClass zero(std::size_t n) { return DivisorClass(IntVec(n, 0)); }
  static DivisorClass unit(std::size_t n, std::size_t i);

  std::size_t size() const { return coords_.size(); }
  const Int& operator[](std::size_t i) const { return coords_[i]; }
  Int& operator[](std::size_t i) { return coords_[i]; }
  const IntVec& coords() const { return coords_; }
  IntVec& coords() { return coords_; }

  bool is_zero() const;
  Int content() const { return gcd_of(coords_); }
  bool is_primitive() const { return content() == 1; }

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  DivisorClass& operator*=(const Int& k);

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Int& k, DivisorClass a) { return a *= k; }
  friend DivisorClass operator*(long k, DivisorClass a) { return a *= Int(k); }
  DivisorClass operator-() const;

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.coords_ == b.coords_; }
  // Lexicographic by coordinate value; the canonical order of every output list.
  friend std::strong_ordering operator<=>(const DivisorClass& a, const DivisorClass& b);

 private:
  IntVec coords_;
};

std::string to_string(const DivisorClass& d);
// Parses "3,-1,-1" or "(3,-1,-1)"; throws InputError.
DivisorClass parse_class(std::string_view text);

struct Signature {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct TwoElementaryInvariants {
  int rho = 0;
  int a = 0;
  int delta = 0;
  friend bool operator==(const TwoElementaryInvariants&, const TwoElementaryInvariants&) = default;
};

// Returned when some invariant factor of the Gram matrix is not 1 or 2.
struct NotTwoElementary {
  IntVec invariant_factors;
};

using TwoElementaryResult = std::variant<TwoElementaryInvariants, NotTwoElementary>;

// An integral lattice with a labeled basis and an optional trusted ample class.
class LatticeSpec {
 public:
  LatticeSpec(std::string name, std::vector<std::string> labels, IntMatrix gram,
              std::optional<DivisorClass> ample_ref = std::nullopt, bool k3 = false);

  const std::string& name() const;
  const std::vector<std::string>& labels() const;
  const IntMatrix& gram() const;
  std::size_t rank() const;
  const std::optional<DivisorClass>& ample_ref() const;
  // Throws PreconditionError when no ample class was supplied.
  const DivisorClass& require_ample_ref() const;
  bool k3() const;

  // Gram entries as row-major int64 when every entry is below 2^31 in size.
  const std::vector<int64_t>* small_gram() const;

  // Index of a basis label, or -1.
  int label_index(std::string_view label) const;

  detail::LatticeCache& cache() const { return *cache_; }

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
  std::shared_ptr<detail::LatticeCache> cache_;
};

Int pair(const LatticeSpec& lat, const DivisorClass& u, const DivisorClass& v);
Int self_int(const LatticeSpec& lat, const DivisorClass& u);
// G*u, the linear form v -> pair(u, v).
IntVec pairing_row(const LatticeSpec& lat, const DivisorClass& u);

Signature signature(const IntMatrix& gram);
Signature signature(const LatticeSpec& lat);

IntVec smith_invariants(const IntMatrix& m);

// P*M*Q = diag(factors) with P, Q unimodular.
struct SmithDecomposition {
  IntMatrix P;
  IntMatrix Q;
  IntVec factors;
};
SmithDecomposition smith_decompose(const IntMatrix& m);

// Throws DegenerateLattice on a singular Gram matrix, InputError when the
// discriminant group is too large to enumerate.
TwoElementaryResult two_elementary_invariants(const IntMatrix& gram);
TwoElementaryResult two_elementary_invariants(const LatticeSpec& lat);

// Every diagonal entry is even.
bool is_even(const IntMatrix& gram);
bool is_even(const LatticeSpec& lat);
// Every entry is even, so all pairings are even.
bool is_all_pairings_even(const IntMatrix& gram);
bool is_all_pairings_even(const LatticeSpec& lat);

void check_dimension(const LatticeSpec& lat, const DivisorClass& u);

}  // namespace k3acm
