#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace k3acm {

using Int = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Int>;
using IntMatrix = std::vector<IntVec>;

std::string to_string(const Int& x);

bool fits_int64(const Int& x);
// Throws std::overflow_error when x does not fit.
int64_t to_int64(const Int& x);

// Floor of the square root; x must be nonnegative.
Int isqrt(const Int& x);

Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);

// Nonnegative gcd of all entries; 0 for an empty or all-zero vector.
Int gcd_of(const IntVec& v);

IntMatrix identity_matrix(std::size_t n);
IntMatrix transpose(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
Int determinant(const IntMatrix& m);

}  // namespace k3acm
