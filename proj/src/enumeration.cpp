#include "k3acm/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "k3acm/errors.hpp"
#include "small_int.hpp"

namespace k3acm {

unsigned enumeration_threads() {
  if (const char* env = std::getenv("K3ACM_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(std::min(v, 256L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>;

Rational rat(const Int& x) { return Rational(x); }

Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int round_rat(const Rational& x) {
  Rational h = x + Rational(1, 2);
  return floor_div(h.get_num(), h.get_den());
}

// Symmetric elimination z^T Q z = sum_i q_i (z_i + sum_{j>i} mu_ij z_j)^2.
// Returns false when Q is not positive definite.
bool ldl(const IntMatrix& Q, RatVec& q, RatMatrix& mu) {
  std::size_t k = Q.size();
  RatMatrix A(k, RatVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) A[i][j] = rat(Q[i][j]);
  q.assign(k, 0);
  mu.assign(k, RatVec(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    if (A[i][i] <= 0) return false;
    q[i] = A[i][i];
    for (std::size_t j = i + 1; j < k; ++j) mu[i][j] = A[i][j] / q[i];
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j; l < k; ++l) {
        A[j][l] -= q[i] * mu[i][j] * mu[i][l];
        A[l][j] = A[j][l];
      }
  }
  return true;
}

// Gram-Schmidt data of a positive definite Gram matrix.
void gso(const IntMatrix& Q, RatMatrix& mu, RatVec& B) {
  std::size_t k = Q.size();
  mu.assign(k, RatVec(k, 0));
  B.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational s = rat(Q[i][j]);
      for (std::size_t l = 0; l < j; ++l) s -= mu[j][l] * mu[i][l] * B[l];
      mu[i][j] = s / B[j];
    }
    Rational s = rat(Q[i][i]);
    for (std::size_t l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * B[l];
    B[i] = s;
  }
}

// LLL (delta = 3/4) on a positive definite Gram matrix. Q becomes V^T Q V.
void lll_gram(IntMatrix& Q, IntMatrix& V) {
  std::size_t k = Q.size();
  V = identity_matrix(k);
  if (k < 2) return;
  RatMatrix mu;
  RatVec B;
  gso(Q, mu, B);
  const Rational delta(3, 4);
  std::size_t kk = 1;
  while (kk < k) {
    for (std::size_t jj = kk; jj-- > 0;) {
      Int r = round_rat(mu[kk][jj]);
      if (r == 0) continue;
      // b_kk -= r b_jj
      for (std::size_t l = 0; l < k; ++l) Q[kk][l] -= r * Q[jj][l];
      for (std::size_t l = 0; l < k; ++l) Q[l][kk] -= r * Q[l][jj];
      for (std::size_t l = 0; l < k; ++l) V[l][kk] -= r * V[l][jj];
      for (std::size_t l = 0; l < jj; ++l) mu[kk][l] -= rat(r) * mu[jj][l];
      mu[kk][jj] -= rat(r);
    }
    if (B[kk] < (delta - mu[kk][kk - 1] * mu[kk][kk - 1]) * B[kk - 1]) {
      std::swap(Q[kk], Q[kk - 1]);
      for (auto& row : Q) std::swap(row[kk], row[kk - 1]);
      for (auto& row : V) std::swap(row[kk], row[kk - 1]);
      gso(Q, mu, B);
      kk = std::max<std::size_t>(1, kk - 1);
    } else {
      ++kk;
    }
  }
}

RatVec solve_rational(const IntMatrix& M, const IntVec& rhs) {
  std::size_t k = M.size();
  RatMatrix A(k, RatVec(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) A[i][j] = rat(M[i][j]);
    A[i][k] = rat(rhs[i]);
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (A[p][c] == 0) ++p;
    std::swap(A[c], A[p]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rational f = A[r][c] / A[c][c];
      for (std::size_t l = c; l <= k; ++l) A[r][l] -= f * A[c][l];
    }
  }
  RatVec x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = A[i][k] / A[i][i];
  return x;
}

// Column-style Hermite reduction: A*U = [T | 0] with U unimodular.
struct ColumnReduction {
  IntMatrix T;                 // A*U
  IntMatrix U;                 // n x n
  std::vector<int> row_pivot;  // pivot column per row, -1 for dependent rows
  std::size_t rank = 0;
};

ColumnReduction column_reduce(const IntMatrix& A, std::size_t n) {
  ColumnReduction cr;
  cr.T = A;
  cr.U = identity_matrix(n);
  cr.row_pivot.assign(A.size(), -1);
  std::size_t p = 0;
  for (std::size_t r = 0; r < A.size() && p < n; ++r) {
    for (std::size_t j = p + 1; j < n; ++j) {
      if (cr.T[r][j] == 0) continue;
      Int g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), cr.T[r][p].get_mpz_t(), cr.T[r][j].get_mpz_t());
      Int alpha = cr.T[r][p] / g;
      Int beta = cr.T[r][j] / g;
      auto mix = [&](IntMatrix& M) {
        for (auto& row : M) {
          Int cp = row[p], cj = row[j];
          row[p] = x * cp + y * cj;
          row[j] = beta * cp - alpha * cj;
        }
      };
      mix(cr.T);
      mix(cr.U);
    }
    if (cr.T[r][p] != 0) {
      cr.row_pivot[r] = static_cast<int>(p);
      ++p;
    }
  }
  cr.rank = p;
  return cr;
}

// Everything the kernel needs, in exact integers:
// D = D0 + sum_j z_j K_j and sum_i W_i (a_i z_i + sum_{j>i} m_ij z_j - f_i)^2 <= budget.
struct Plan {
  std::size_t n = 0;
  std::size_t k = 0;
  bool empty = false;
  IntVec D0;
  IntMatrix K;  // k rows of length n
  IntVec a, f, W;
  IntMatrix m;
  Int budget = 0;
  IntVec box;  // |z_i| bounds, used only to size the arithmetic
  // post-hoc verification
  IntVec h;
  Int degree;
  SquarePredicate square;
  std::vector<std::pair<IntVec, Int>> extra;
};

Plan make_plan(const LatticeSpec& lat, const SliceQuery& q) {
  check_dimension(lat, q.degree_class);
  for (const auto& c : q.extra) check_dimension(lat, c.cls);
  const IntMatrix& G = lat.gram();
  const std::size_t n = lat.rank();
  Int H2 = self_int(lat, q.degree_class);
  if (H2 <= 0) throw PreconditionError("slice degree class must have positive square, got " + H2.get_str());
  if (!q.square.lo) throw PreconditionError("slice square predicate needs a lower bound; the slice is otherwise infinite");

  Plan P;
  P.n = n;
  P.h = pairing_row(lat, q.degree_class);
  P.degree = q.degree;
  P.square = q.square;

  IntMatrix A{P.h};
  IntVec b{q.degree};
  for (const auto& c : q.extra) {
    IntVec row = pairing_row(lat, c.cls);
    P.extra.emplace_back(row, c.value);
    A.push_back(std::move(row));
    b.push_back(c.value);
  }
  if (q.square.hi && *q.square.hi < *q.square.lo) {
    P.empty = true;
    return P;
  }

  ColumnReduction cr = column_reduce(A, n);
  IntVec y(n, 0);
  for (std::size_t r = 0; r < A.size(); ++r) {
    Int acc = b[r];
    for (std::size_t c = 0; c < cr.rank; ++c) acc -= cr.T[r][c] * y[c];
    int pc = cr.row_pivot[r];
    if (pc < 0) {
      if (acc != 0) {
        P.empty = true;
        return P;
      }
      continue;
    }
    if (acc % cr.T[r][pc] != 0) {
      P.empty = true;
      return P;
    }
    y[pc] = acc / cr.T[r][pc];
  }
  P.D0.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < cr.rank; ++c) P.D0[i] += cr.U[i][c] * y[c];

  const std::size_t k = n - cr.rank;
  P.k = k;
  IntMatrix K(k, IntVec(n));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) K[j][i] = cr.U[i][cr.rank + j];

  auto gdot = [&](const IntVec& u, const IntVec& v) {
    Int s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] == 0) continue;
      Int row = 0;
      for (std::size_t j = 0; j < n; ++j) row += G[i][j] * v[j];
      s += u[i] * row;
    }
    return s;
  };

  Int c0 = gdot(P.D0, P.D0);
  if (k == 0) {
    P.budget = c0 - *q.square.lo;
    if (P.budget < 0) P.empty = true;
    return P;
  }

  IntMatrix Q(k, IntVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) Q[i][j] = Q[j][i] = -gdot(K[i], K[j]);
  {
    RatVec qq;
    RatMatrix mm;
    if (!ldl(Q, qq, mm))
      throw PreconditionError("orthogonal complement of the degree class is not negative definite; slice is not finite");
  }
  IntMatrix V;
  lll_gram(Q, V);
  IntMatrix K2(k, IntVec(n, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i)
      if (V[i][j] != 0)
        for (std::size_t l = 0; l < n; ++l) K2[j][l] += V[i][j] * K[i][l];
  P.K = std::move(K2);

  IntVec g(k);
  for (std::size_t j = 0; j < k; ++j) g[j] = gdot(P.K[j], P.D0);
  RatVec c = solve_rational(Q, g);
  Rational R = rat(c0) - rat(*q.square.lo);
  for (std::size_t j = 0; j < k; ++j) R += rat(g[j]) * c[j];
  if (R < 0) {
    P.empty = true;
    return P;
  }

  RatVec qd;
  RatMatrix mu;
  ldl(Q, qd, mu);
  RatVec e(k);
  for (std::size_t i = 0; i < k; ++i) {
    e[i] = c[i];
    for (std::size_t j = i + 1; j < k; ++j) e[i] += mu[i][j] * c[j];
  }
  P.a.assign(k, 0);
  P.f.assign(k, 0);
  P.W.assign(k, 0);
  P.m.assign(k, IntVec(k, 0));
  RatVec w(k);
  Int L = R.get_den();
  for (std::size_t i = 0; i < k; ++i) {
    Int den = e[i].get_den();
    for (std::size_t j = i + 1; j < k; ++j) den = lcm_int(den, mu[i][j].get_den());
    P.a[i] = den;
    Rational fe = e[i] * rat(den);
    P.f[i] = fe.get_num();
    for (std::size_t j = i + 1; j < k; ++j) {
      Rational mm = mu[i][j] * rat(den);
      P.m[i][j] = mm.get_num();
    }
    w[i] = qd[i] / rat(den * den);
    L = lcm_int(L, w[i].get_den());
  }
  for (std::size_t i = 0; i < k; ++i) {
    Rational Wi = w[i] * rat(L);
    P.W[i] = Wi.get_num();
  }
  Rational LR = R * rat(L);
  P.budget = LR.get_num();

  // box bounds |z_i - c_i| <= sqrt(R * (Q^{-1})_ii), for sizing only
  P.box.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    IntVec unit(k, 0);
    unit[i] = 1;
    RatVec col = solve_rational(Q, unit);
    Rational r2 = R * col[i];
    Int r = isqrt(ceil_div(r2.get_num(), r2.get_den())) + 1;
    Rational ac = abs(c[i]);
    P.box[i] = ceil_div(ac.get_num(), ac.get_den()) + r + 1;
  }
  return P;
}

// ------------------------------------------------------------ arithmetic

inline int64_t k_add(int64_t a, int64_t b) { return detail::add_ck(a, b); }
inline int64_t k_sub(int64_t a, int64_t b) { return detail::sub_ck(a, b); }
inline int64_t k_mul(int64_t a, int64_t b) { return detail::mul_ck(a, b); }
inline int64_t k_floordiv(int64_t a, int64_t b) {
  int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline int64_t k_ceildiv(int64_t a, int64_t b) { return -k_floordiv(-a, b); }
inline int64_t k_isqrt(int64_t x) {
  int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

inline Int k_add(const Int& a, const Int& b) { return a + b; }
inline Int k_sub(const Int& a, const Int& b) { return a - b; }
inline Int k_mul(const Int& a, const Int& b) { return a * b; }
inline Int k_floordiv(const Int& a, const Int& b) { return floor_div(a, b); }
inline Int k_ceildiv(const Int& a, const Int& b) { return ceil_div(a, b); }
inline Int k_isqrt(const Int& x) { return isqrt(x); }

template <class I>
I convert(const Int& x) {
  if constexpr (std::is_same_v<I, int64_t>) return to_int64(x);
  else return x;
}

template <class I>
struct Kernel {
  std::size_t n = 0, k = 0;
  std::vector<I> D0;
  std::vector<std::vector<I>> K, m;
  std::vector<I> a, f, W;
  I budget{};

  explicit Kernel(const Plan& P) : n(P.n), k(P.k) {
    for (const auto& x : P.D0) D0.push_back(convert<I>(x));
    for (const auto& row : P.K) {
      std::vector<I> r;
      for (const auto& x : row) r.push_back(convert<I>(x));
      K.push_back(std::move(r));
    }
    for (const auto& row : P.m) {
      std::vector<I> r;
      for (const auto& x : row) r.push_back(convert<I>(x));
      m.push_back(std::move(r));
    }
    for (const auto& x : P.a) a.push_back(convert<I>(x));
    for (const auto& x : P.f) f.push_back(convert<I>(x));
    for (const auto& x : P.W) W.push_back(convert<I>(x));
    budget = convert<I>(P.budget);
  }

  // Admissible range of z_i given the outer coordinates and remaining budget.
  void range(std::size_t i, const std::vector<I>& z, const I& bud, I& S, I& lo, I& hi) const {
    S = I(0) - f[i];
    for (std::size_t j = i + 1; j < k; ++j) S = k_add(S, k_mul(m[i][j], z[j]));
    I s = k_isqrt(k_floordiv(bud, W[i]));
    lo = k_ceildiv(k_sub(I(0) - s, S), a[i]);
    hi = k_floordiv(k_sub(s, S), a[i]);
  }

  template <class Leaf>
  void descend(std::size_t i, const I& bud, std::vector<I>& z, std::vector<std::vector<I>>& Dlev, Leaf& leaf,
               const I* force_lo = nullptr, const I* force_hi = nullptr) const {
    I S, lo, hi;
    range(i, z, bud, S, lo, hi);
    if (force_lo) {
      lo = std::max(lo, *force_lo);
      hi = std::min(hi, *force_hi);
    }
    if (lo > hi) return;
    std::vector<I>& cur = Dlev[i];
    const std::vector<I>& up = Dlev[i + 1];
    for (std::size_t l = 0; l < n; ++l) cur[l] = k_add(up[l], k_mul(lo, K[i][l]));
    for (I zi = lo; zi <= hi; zi = zi + 1) {
      if (zi != lo)
        for (std::size_t l = 0; l < n; ++l) cur[l] = k_add(cur[l], K[i][l]);
      I T = k_add(k_mul(a[i], zi), S);
      I nb = k_sub(bud, k_mul(W[i], k_mul(T, T)));
      if (nb < 0) continue;
      z[i] = zi;
      if (i == 0) leaf(cur);
      else descend(i - 1, nb, z, Dlev, leaf);
    }
  }

  template <class Leaf>
  void run(Leaf& leaf, const I* top_lo = nullptr, const I* top_hi = nullptr) const {
    std::vector<std::vector<I>> Dlev(k + 1, std::vector<I>(n));
    Dlev[k] = D0;
    if (k == 0) {
      leaf(Dlev[0]);
      return;
    }
    std::vector<I> z(k, I(0));
    descend(k - 1, budget, z, Dlev, leaf, top_lo, top_hi);
  }

  void top_range(I& lo, I& hi) const {
    std::vector<I> z(k, I(0));
    I S;
    range(k - 1, z, budget, S, lo, hi);
  }
};

bool small_plan(const Plan& P, const LatticeSpec& lat) {
  if (!lat.small_gram()) return false;
  const Int lim30 = Int(1) << 30;
  const Int lim60 = Int(1) << 60;
  const Int lim62 = Int(1) << 62;
  if (abs(P.budget) >= lim62) return false;
  for (std::size_t l = 0; l < P.n; ++l) {
    Int s = abs(P.D0[l]);
    for (std::size_t j = 0; j < P.k; ++j) s += abs(P.K[j][l]) * P.box[j];
    if (s >= lim30) return false;
  }
  for (std::size_t i = 0; i < P.k; ++i) {
    if (abs(P.W[i]) >= lim62) return false;
    Int s = abs(P.f[i]) + abs(P.a[i]) * P.box[i];
    for (std::size_t j = i + 1; j < P.k; ++j) s += abs(P.m[i][j]) * P.box[j];
    if (s >= lim60) return false;
  }
  if (!fits_int64(P.degree)) return false;
  if (P.square.lo && !fits_int64(*P.square.lo)) return false;
  if (P.square.hi && !fits_int64(*P.square.hi)) return false;
  for (const auto& row : P.h)
    if (!detail::fits_small(row)) return false;
  for (const auto& [row, v] : P.extra) {
    if (!fits_int64(v)) return false;
    for (const auto& x : row)
      if (!detail::fits_small(x)) return false;
  }
  return true;
}

// Post-hoc verification of every emitted class.
struct SmallChecker {
  const int64_t* G;
  std::size_t n;
  std::vector<int64_t> h;
  int64_t degree;
  bool has_lo, has_hi;
  int64_t lo = 0, hi = 0;
  std::vector<std::pair<std::vector<int64_t>, int64_t>> extra;

  SmallChecker(const Plan& P, const LatticeSpec& lat) : G(lat.small_gram()->data()), n(P.n) {
    detail::to_small_vec(P.h, h);
    degree = to_int64(P.degree);
    has_lo = P.square.lo.has_value();
    has_hi = P.square.hi.has_value();
    if (has_lo) lo = to_int64(*P.square.lo);
    if (has_hi) hi = to_int64(*P.square.hi);
    for (const auto& [row, v] : P.extra) {
      std::vector<int64_t> r;
      detail::to_small_vec(row, r);
      extra.emplace_back(std::move(r), to_int64(v));
    }
  }

  bool operator()(const std::vector<int64_t>& D) const {
    if (detail::dot128(h.data(), D.data(), n) != degree) return false;
    for (const auto& [row, v] : extra)
      if (detail::dot128(row.data(), D.data(), n) != v) return false;
    __int128 sq = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (D[i] != 0) sq += static_cast<__int128>(D[i]) * detail::dot128(G + i * n, D.data(), n);
    if (has_lo && sq < lo) return false;
    if (has_hi && sq > hi) return false;
    return true;
  }
};

struct BigChecker {
  const LatticeSpec& lat;
  const Plan& P;
  bool operator()(const std::vector<Int>& coords) const {
    DivisorClass D(coords);
    Int deg = 0;
    for (std::size_t i = 0; i < P.n; ++i) deg += P.h[i] * coords[i];
    if (deg != P.degree) return false;
    for (const auto& [row, v] : P.extra) {
      Int s = 0;
      for (std::size_t i = 0; i < P.n; ++i) s += row[i] * coords[i];
      if (s != v) return false;
    }
    return P.square.accepts(self_int(lat, D));
  }
};

[[noreturn]] void kernel_bug() {
  throw std::logic_error("enumeration kernel overflowed despite its a-priori size check");
}

void stream(const LatticeSpec& lat, const Plan& P, const std::function<void(const DivisorClass&)>& visit) {
  if (P.empty) return;
  DivisorClass out = DivisorClass::zero(P.n);
  if (small_plan(P, lat)) {
    Kernel<int64_t> kern(P);
    SmallChecker check(P, lat);
    auto leaf = [&](const std::vector<int64_t>& D) {
      if (!check(D)) return;
      for (std::size_t i = 0; i < P.n; ++i) out[i] = static_cast<long>(D[i]);
      visit(out);
    };
    try {
      kern.run(leaf);
    } catch (const detail::Overflow&) {
      kernel_bug();
    }
    return;
  }
  Kernel<Int> kern(P);
  BigChecker check{lat, P};
  auto leaf = [&](const std::vector<Int>& D) {
    if (!check(D)) return;
    out.coords() = D;
    visit(out);
  };
  kern.run(leaf);
}

std::vector<DivisorClass> collect_small(const LatticeSpec& lat, const Plan& P) {
  Kernel<int64_t> kern(P);
  SmallChecker check(P, lat);
  const std::size_t n = P.n;
  int64_t top_lo = 0, top_hi = -1;
  if (P.k > 0) kern.top_range(top_lo, top_hi);
  unsigned threads = enumeration_threads();
  int64_t span = top_hi - top_lo + 1;
  if (P.k == 0 || span < 2 * static_cast<int64_t>(threads)) threads = 1;

  std::vector<std::vector<int64_t>> parts(threads);
  auto work = [&](unsigned t, int64_t lo, int64_t hi) {
    auto& buf = parts[t];
    auto leaf = [&](const std::vector<int64_t>& D) {
      if (check(D)) buf.insert(buf.end(), D.begin(), D.end());
    };
    if (P.k == 0) kern.run(leaf);
    else kern.run(leaf, &lo, &hi);
  };
  try {
    if (threads == 1) {
      work(0, top_lo, top_hi);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errs(threads);
      int64_t chunk = (span + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        int64_t lo = top_lo + chunk * t;
        int64_t hi = std::min(top_hi, lo + chunk - 1);
        pool.emplace_back([&, t, lo, hi] {
          try {
            work(t, lo, hi);
          } catch (...) {
            errs[t] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    }
  } catch (const detail::Overflow&) {
    kernel_bug();
  }
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size() / (n ? n : 1);
  std::vector<const int64_t*> rows;
  rows.reserve(total);
  for (const auto& p : parts)
    for (std::size_t off = 0; off + n <= p.size() && n > 0; off += n) rows.push_back(p.data() + off);
  if (n == 0) return {};
  std::sort(rows.begin(), rows.end(),
            [n](const int64_t* x, const int64_t* y) { return std::lexicographical_compare(x, x + n, y, y + n); });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [n](const int64_t* x, const int64_t* y) { return std::equal(x, x + n, y); }),
             rows.end());
  std::vector<DivisorClass> out;
  out.reserve(rows.size());
  for (const int64_t* r : rows) {
    IntVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<long>(r[i]);
    out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<DivisorClass> enumerate_slice(const LatticeSpec& lat, const SliceQuery& q) {
  Plan P = make_plan(lat, q);
  if (P.empty) return {};
  if (small_plan(P, lat)) return collect_small(lat, P);
  std::vector<DivisorClass> out;
  stream(lat, P, [&](const DivisorClass& d) { out.push_back(d); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void for_each_in_slice(const LatticeSpec& lat, const SliceQuery& q,
                       const std::function<void(const DivisorClass&)>& visit) {
  Plan P = make_plan(lat, q);
  stream(lat, P, visit);
}

std::size_t count_slice(const LatticeSpec& lat, const SliceQuery& q) {
  std::size_t c = 0;
  for_each_in_slice(lat, q, [&](const DivisorClass&) { ++c; });
  return c;
}

std::vector<DivisorClass> enumerate_up_to_degree(const LatticeSpec& lat, const DivisorClass& H, const Int& d_max,
                                                 const SquarePredicate& square) {
  std::vector<DivisorClass> out;
  for (Int d = 1; d <= d_max; ++d) {
    auto part = enumerate_slice(lat, SliceQuery{H, d, square, {}});
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OrthogonalGram orthogonal_slice_gram(const LatticeSpec& lat, const DivisorClass& H) {
  check_dimension(lat, H);
  if (self_int(lat, H) <= 0) throw PreconditionError("orthogonal_slice_gram: H must have positive square");
  if (!H.is_primitive()) throw PreconditionError("orthogonal_slice_gram: H must be primitive");
  const std::size_t n = lat.rank();
  IntMatrix A{pairing_row(lat, H)};
  ColumnReduction cr = column_reduce(A, n);
  const std::size_t k = n - cr.rank;
  IntMatrix K(k, IntVec(n));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) K[j][i] = cr.U[i][cr.rank + j];

  OrthogonalGram og;
  IntMatrix Q(k, IntVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) Q[i][j] = Q[j][i] = -pair(lat, DivisorClass(K[i]), DivisorClass(K[j]));
  RatVec qd;
  RatMatrix mu;
  og.negative_definite = ldl(Q, qd, mu);
  if (og.negative_definite) {
    IntMatrix V;
    lll_gram(Q, V);
    IntMatrix K2(k, IntVec(n, 0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < n; ++l) K2[j][l] += V[i][j] * K[i][l];
    K = std::move(K2);
  }
  og.basis = K;
  og.gram.assign(k, IntVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) og.gram[i][j] = pair(lat, DivisorClass(K[i]), DivisorClass(K[j]));
  if (og.negative_definite && k > 0) {
    Int best = og.gram[0][0];
    for (std::size_t i = 1; i < k; ++i) best = std::max(best, og.gram[i][i]);
    // every nonzero vector of square >= best, the best found on the reduced basis
    for_each_in_slice(lat, SliceQuery{H, 0, SquarePredicate::at_least(best), {}}, [&](const DivisorClass& d) {
      if (d.is_zero()) return;
      Int s = self_int(lat, d);
      if (s > best) best = s;
    });
    og.max_square = best;
  }
  return og;
}

}  // namespace k3acm
