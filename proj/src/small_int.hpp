#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "k3acm/bigint.hpp"

namespace k3acm::detail {

static_assert(sizeof(long) == 8, "64-bit long required");

// Entries below 2^31 in size keep pairings of such vectors inside __int128.
inline bool fits_small(const Int& x) { return x.fits_sint_p(); }

inline Int from_i128(__int128 v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return Int(static_cast<long>(v));
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Int r = Int(static_cast<unsigned long>(u >> 64));
  r <<= 64;
  r += Int(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  return neg ? Int(-r) : r;
}

inline bool to_small_vec(const IntVec& v, std::vector<int64_t>& out) {
  out.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!fits_small(v[i])) return false;
    out[i] = v[i].get_si();
  }
  return true;
}

struct Overflow : std::exception {
  const char* what() const noexcept override { return "64-bit overflow"; }
};

inline int64_t add_ck(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline int64_t sub_ck(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline int64_t mul_ck(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

// Dot product of small vectors, exact in __int128.
inline __int128 dot128(const int64_t* a, const int64_t* b, std::size_t n) {
  __int128 s = 0;
  for (std::size_t i = 0; i < n; ++i) s += static_cast<__int128>(a[i]) * b[i];
  return s;
}

}  // namespace k3acm::detail
