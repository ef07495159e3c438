#include "k3acm/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "k3acm/errors.hpp"
#include "lattice_cache.hpp"
#include "small_int.hpp"

namespace k3acm {

// ---------------------------------------------------------------- classes

DivisorClass::DivisorClass(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
}

DivisorClass DivisorClass::unit(std::size_t n, std::size_t i) {
  DivisorClass d = zero(n);
  d[i] = 1;
  return d;
}

bool DivisorClass::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Int& x) { return x == 0; });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (o.size() != size()) throw DimensionMismatch("class lengths differ");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  if (o.size() != size()) throw DimensionMismatch("class lengths differ");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

DivisorClass& DivisorClass::operator*=(const Int& k) {
  for (auto& c : coords_) c *= k;
  return *this;
}

DivisorClass DivisorClass::operator-() const {
  DivisorClass r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

std::strong_ordering operator<=>(const DivisorClass& a, const DivisorClass& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

std::string to_string(const DivisorClass& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += d[i].get_str();
  }
  return s + ")";
}

DivisorClass parse_class(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '[' && c != ']') t += c;
  if (t.empty()) throw InputError("empty class coordinate list");
  IntVec out;
  std::stringstream ss(t);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Int v;
    if (tok.empty() || v.set_str(tok, 10) != 0) throw InputError("bad coordinate '" + tok + "' in class '" + std::string(text) + "'");
    out.push_back(v);
  }
  return DivisorClass(std::move(out));
}

// ---------------------------------------------------------------- lattice

struct LatticeSpec::Data {
  std::string name;
  std::vector<std::string> labels;
  IntMatrix gram;
  std::optional<DivisorClass> ample_ref;
  bool k3 = false;
  bool has_small = false;
  std::vector<int64_t> small;
};

LatticeSpec::LatticeSpec(std::string name, std::vector<std::string> labels, IntMatrix gram,
                         std::optional<DivisorClass> ample_ref, bool k3) {
  auto d = std::make_shared<Data>();
  std::size_t n = gram.size();
  for (std::size_t i = 0; i < n; ++i)
    if (gram[i].size() != n)
      throw InputError("gram row " + std::to_string(i) + " has " + std::to_string(gram[i].size()) +
                       " entries, expected " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (gram[i][j] != gram[j][i])
        throw InputError("gram is not symmetric: gram[" + std::to_string(i) + "][" + std::to_string(j) +
                         "] = " + gram[i][j].get_str() + " but gram[" + std::to_string(j) + "][" +
                         std::to_string(i) + "] = " + gram[j][i].get_str());
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
  if (labels.size() != n)
    throw InputError("basis has " + std::to_string(labels.size()) + " labels for a rank " + std::to_string(n) + " gram");
  d->name = std::move(name);
  d->labels = std::move(labels);
  d->gram = std::move(gram);
  d->k3 = k3;

  d->has_small = true;
  d->small.reserve(n * n);
  for (const auto& row : d->gram)
    for (const auto& x : row) {
      if (!detail::fits_small(x)) {
        d->has_small = false;
        break;
      }
      d->small.push_back(x.get_si());
    }
  if (!d->has_small) d->small.clear();

  data_ = d;
  cache_ = std::make_shared<detail::LatticeCache>();

  if (ample_ref) {
    if (ample_ref->size() != n)
      throw DimensionMismatch("ample_ref has " + std::to_string(ample_ref->size()) + " coordinates, lattice rank is " +
                              std::to_string(n));
    if (self_int(*this, *ample_ref) <= 0) throw InputError("ample_ref must have positive square");
    d->ample_ref = std::move(ample_ref);
  }
  if (k3) {
    for (std::size_t i = 0; i < n; ++i)
      if (d->gram[i][i] % 2 != 0)
        throw InputError("k3 lattice must be even: gram[" + std::to_string(i) + "][" + std::to_string(i) +
                         "] = " + d->gram[i][i].get_str());
    Signature s = signature(d->gram);
    if (s.n_plus != 1 || s.n_zero != 0)
      throw InputError("k3 lattice must be hyperbolic, got signature (" + std::to_string(s.n_plus) + "," +
                       std::to_string(s.n_minus) + "," + std::to_string(s.n_zero) + ")");
  }
}

const std::string& LatticeSpec::name() const { return data_->name; }
const std::vector<std::string>& LatticeSpec::labels() const { return data_->labels; }
const IntMatrix& LatticeSpec::gram() const { return data_->gram; }
std::size_t LatticeSpec::rank() const { return data_->gram.size(); }
const std::optional<DivisorClass>& LatticeSpec::ample_ref() const { return data_->ample_ref; }
bool LatticeSpec::k3() const { return data_->k3; }

const DivisorClass& LatticeSpec::require_ample_ref() const {
  if (!data_->ample_ref) throw PreconditionError("lattice '" + data_->name + "' has no ample_ref");
  return *data_->ample_ref;
}

const std::vector<int64_t>* LatticeSpec::small_gram() const {
  return data_->has_small ? &data_->small : nullptr;
}

int LatticeSpec::label_index(std::string_view label) const {
  for (std::size_t i = 0; i < data_->labels.size(); ++i)
    if (data_->labels[i] == label) return static_cast<int>(i);
  return -1;
}

void check_dimension(const LatticeSpec& lat, const DivisorClass& u) {
  if (u.size() != lat.rank())
    throw DimensionMismatch("class has " + std::to_string(u.size()) + " coordinates, lattice rank is " +
                            std::to_string(lat.rank()));
}

Int pair(const LatticeSpec& lat, const DivisorClass& u, const DivisorClass& v) {
  check_dimension(lat, u);
  check_dimension(lat, v);
  std::size_t n = lat.rank();
  if (const auto* g = lat.small_gram()) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = detail::fits_small(u[i]) && detail::fits_small(v[i]);
    if (ok) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == 0) continue;
        __int128 row = 0;
        for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>((*g)[i * n + j]) * v[j].get_si();
        acc += row * u[i].get_si();
      }
      return detail::from_i128(acc);
    }
  }
  const IntMatrix& G = lat.gram();
  Int acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    Int row = 0;
    for (std::size_t j = 0; j < n; ++j) row += G[i][j] * v[j];
    acc += u[i] * row;
  }
  return acc;
}

Int self_int(const LatticeSpec& lat, const DivisorClass& u) { return pair(lat, u, u); }

IntVec pairing_row(const LatticeSpec& lat, const DivisorClass& u) {
  check_dimension(lat, u);
  std::size_t n = lat.rank();
  IntVec r(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) r[j] += u[i] * lat.gram()[i][j];
  return r;
}

// ---------------------------------------------------------------- signature

Signature signature(const IntMatrix& gram) {
  std::size_t n = gram.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gram[i][j];
  Signature s;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] == 0) {
      std::size_t j = i + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        std::swap(a[i], a[j]);
        for (auto& row : a) std::swap(row[i], row[j]);
      } else {
        j = i + 1;
        while (j < n && a[i][j] == 0) ++j;
        if (j == n) {
          ++s.n_zero;
          continue;
        }
        // e_i <- e_i + e_j makes the diagonal entry 2*a[i][j] != 0
        for (std::size_t l = 0; l < n; ++l) a[i][l] += a[j][l];
        for (std::size_t l = 0; l < n; ++l) a[l][i] += a[l][j];
      }
    }
    const Rational p = a[i][i];
    if (p > 0) ++s.n_plus;
    else ++s.n_minus;
    std::vector<Rational> row_i(a[i].begin(), a[i].end());
    for (std::size_t j = i + 1; j < n; ++j) {
      if (row_i[j] == 0) continue;
      Rational f = row_i[j] / p;
      for (std::size_t l = i + 1; l < n; ++l) a[j][l] -= f * row_i[l];
    }
    for (std::size_t j = i + 1; j < n; ++j) a[j][i] = a[i][j] = 0;
  }
  return s;
}

Signature signature(const LatticeSpec& lat) { return signature(lat.gram()); }

// ---------------------------------------------------------------- Smith form

namespace {

void swap_rows(IntMatrix& m, std::size_t i, std::size_t j) { std::swap(m[i], m[j]); }
void swap_cols(IntMatrix& m, std::size_t i, std::size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}
// row_i -= q * row_j
void sub_row(IntMatrix& m, std::size_t i, std::size_t j, const Int& q) {
  for (std::size_t l = 0; l < m[i].size(); ++l) m[i][l] -= q * m[j][l];
}
void sub_col(IntMatrix& m, std::size_t i, std::size_t j, const Int& q) {
  for (auto& row : m) row[i] -= q * row[j];
}

}  // namespace

SmithDecomposition smith_decompose(const IntMatrix& m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  IntMatrix A = m;
  IntMatrix P = identity_matrix(rows);
  IntMatrix Q = identity_matrix(cols);
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (A[i][j] != 0 && (!found || abs(A[i][j]) < abs(A[pi][pj]))) {
            found = true;
            pi = i;
            pj = j;
          }
      if (!found) goto done;
      swap_rows(A, t, pi);
      swap_rows(P, t, pi);
      swap_cols(A, t, pj);
      swap_cols(Q, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (A[i][t] == 0) continue;
        Int q = floor_div(A[i][t], A[t][t]);
        sub_row(A, i, t, q);
        sub_row(P, i, t, q);
        if (A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (A[t][j] == 0) continue;
        Int q = floor_div(A[t][j], A[t][t]);
        sub_col(A, j, t, q);
        sub_col(Q, j, t, q);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // enforce divisibility of the remaining block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (A[i][j] % A[t][t] != 0) {
            for (std::size_t l = 0; l < cols; ++l) A[t][l] += A[i][l];
            for (std::size_t l = 0; l < rows; ++l) P[t][l] += P[i][l];
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A[t][t] < 0) {
      for (auto& x : A[t]) x = -x;
      for (auto& x : P[t]) x = -x;
    }
  }
done:
  SmithDecomposition r;
  std::size_t k = std::min(rows, cols);
  r.factors.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) r.factors[i] = A[i][i];
  r.P = std::move(P);
  r.Q = std::move(Q);
  return r;
}

IntVec smith_invariants(const IntMatrix& m) { return smith_decompose(m).factors; }

// ------------------------------------------------- 2-elementary invariants

TwoElementaryResult two_elementary_invariants(const IntMatrix& gram) {
  std::size_t n = gram.size();
  SmithDecomposition sd = smith_decompose(gram);
  for (const auto& f : sd.factors)
    if (f == 0) throw DegenerateLattice("two_elementary_invariants: gram matrix is degenerate");
  int a = 0;
  for (const auto& f : sd.factors) {
    if (f != 1 && f != 2) return NotTwoElementary{sd.factors};
    if (f == 2) ++a;
  }
  if (a > 16) throw InputError("discriminant group (Z/2)^" + std::to_string(a) + " is too large to enumerate (limit a <= 16)");

  // S* = G^{-1} Z^n = Q D^{-1} Z^n; the columns of Q over 2 generate S*/S.
  std::vector<std::vector<Rational>> gens;
  for (std::size_t i = 0; i < n; ++i) {
    if (sd.factors[i] != 2) continue;
    std::vector<Rational> g(n);
    for (std::size_t r = 0; r < n; ++r) g[r] = Rational(sd.Q[r][i], 2);
    gens.push_back(std::move(g));
  }
  auto square = [&](const std::vector<Rational>& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      Rational row = 0;
      for (std::size_t j = 0; j < n; ++j) row += gram[i][j] * x[j];
      s += x[i] * row;
    }
    return s;
  };
  int delta = 0;
  std::vector<Rational> x(n, 0);
  // Gray-code walk over all 2^a classes
  const uint64_t total = uint64_t{1} << a;
  for (uint64_t step = 1; step < total; ++step) {
    int bit = __builtin_ctzll(step);
    bool adding = ((step ^ (step >> 1)) >> bit) & 1;
    for (std::size_t r = 0; r < n; ++r) {
      if (adding) x[r] += gens[bit][r];
      else x[r] -= gens[bit][r];
    }
    Rational s = square(x);
    s.canonicalize();
    if (s.get_den() != 1) {
      delta = 1;
      break;
    }
  }
  return TwoElementaryInvariants{static_cast<int>(n), a, delta};
}

TwoElementaryResult two_elementary_invariants(const LatticeSpec& lat) { return two_elementary_invariants(lat.gram()); }

bool is_even(const IntMatrix& gram) {
  for (std::size_t i = 0; i < gram.size(); ++i)
    if (gram[i][i] % 2 != 0) return false;
  return true;
}
bool is_even(const LatticeSpec& lat) { return is_even(lat.gram()); }

bool is_all_pairings_even(const IntMatrix& gram) {
  for (const auto& row : gram)
    for (const auto& x : row)
      if (x % 2 != 0) return false;
  return true;
}
bool is_all_pairings_even(const LatticeSpec& lat) { return is_all_pairings_even(lat.gram()); }

}  // namespace k3acm
