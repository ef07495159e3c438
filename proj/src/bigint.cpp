#include "k3acm/bigint.hpp"

#include <stdexcept>
#include <utility>

#include "k3acm/three_valued.hpp"

namespace k3acm {

std::string to_string(const Int& x) { return x.get_str(); }

bool fits_int64(const Int& x) {
  static const Int lo("-9223372036854775808");
  static const Int hi("9223372036854775807");
  return x >= lo && x <= hi;
}

int64_t to_int64(const Int& x) {
  if (!fits_int64(x)) throw std::overflow_error("integer does not fit in 64 bits: " + x.get_str());
  if (x.fits_slong_p()) return x.get_si();
  // long may be 32 bits on some platforms
  Int hi = x >> 32;
  Int lo = x - (hi << 32);
  return (static_cast<int64_t>(hi.get_si()) << 32) | static_cast<int64_t>(lo.get_ui());
}

Int isqrt(const Int& x) {
  if (x < 0) throw std::domain_error("isqrt of a negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int gcd_of(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t(m[0].size(), IntVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  std::size_t inner = b.size();
  std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix c(a.size(), IntVec(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

// Fraction-free Bareiss elimination.
Int determinant(const IntMatrix& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::string to_string(Truth t) {
  switch (t) {
    case Truth::Yes: return "Yes";
    case Truth::No: return "No";
    case Truth::Unknown: return "Unknown";
  }
  return "Unknown";
}

ThreeValued ThreeValued::yes(std::string reason) { return {Truth::Yes, std::move(reason), std::nullopt}; }
ThreeValued ThreeValued::no(std::string reason) { return {Truth::No, std::move(reason), std::nullopt}; }
ThreeValued ThreeValued::unknown(std::string reason, std::optional<Int> bound) {
  return {Truth::Unknown, std::move(reason), std::move(bound)};
}

}  // namespace k3acm
