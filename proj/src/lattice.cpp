#include "tdef/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace tdef {

RatMat to_rat(const IntMat &m) {
  RatMat r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i];
  return r;
}
RatVec to_rat(const IntVec &v) { return RatVec(v.begin(), v.end()); }
bool is_integral(const RatVec &v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rat &q) { return q.get_den() == 1; });
}
IntVec to_int(const RatVec &v) {
  IntVec r;
  for (const auto &q : v) {
    if (q.get_den() != 1) throw std::invalid_argument("non-integral vector");
    r.push_back(q.get_num());
  }
  return r;
}

template <class A, class B> static void same_size(const A &a, const B &b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
}

Int dot(const IntVec &a, const IntVec &b) {
  same_size(a, b);
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
Rat dot(const IntVec &a, const RatVec &b) {
  same_size(a, b);
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
Rat dot(const RatVec &a, const RatVec &b) {
  same_size(a, b);
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
IntVec operator+(const IntVec &a, const IntVec &b) {
  same_size(a, b);
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
IntVec operator-(const IntVec &a, const IntVec &b) {
  same_size(a, b);
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
RatVec operator+(const RatVec &a, const RatVec &b) {
  same_size(a, b);
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
RatVec operator-(const RatVec &a, const RatVec &b) {
  same_size(a, b);
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
RatVec operator*(const Rat &s, const RatVec &v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}
IntVec operator*(const Int &s, const IntVec &v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}
IntVec negate(const IntVec &v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}
bool is_zero(const IntVec &v) {
  return std::all_of(v.begin(), v.end(), [](const Int &x) { return x == 0; });
}
bool is_zero(const RatVec &v) {
  return std::all_of(v.begin(), v.end(), [](const Rat &x) { return x == 0; });
}
IntVec unit(std::size_t dim, std::size_t i) {
  IntVec e(dim, Int(0));
  e.at(i) = 1;
  return e;
}
IntVec concat(const IntVec &a, const IntVec &b) {
  IntVec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}
RatVec concat(const RatVec &a, const RatVec &b) {
  RatVec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Int floor_rat(const Rat &q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}
Int ceil_rat(const Rat &q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// ---- Smith normal form ------------------------------------------------------

namespace {
void swap_rows(IntMat &M, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < M.cols; ++c) std::swap(M(i, c), M(j, c));
}
void swap_cols(IntMat &M, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < M.rows; ++r) std::swap(M(r, i), M(r, j));
}
// row_i -= q * row_j
void addmul_row(IntMat &M, std::size_t i, std::size_t j, const Int &q) {
  for (std::size_t c = 0; c < M.cols; ++c) M(i, c) -= q * M(j, c);
}
void addmul_col(IntMat &M, std::size_t i, std::size_t j, const Int &q) {
  for (std::size_t r = 0; r < M.rows; ++r) M(r, i) -= q * M(r, j);
}
void neg_row(IntMat &M, std::size_t i) {
  for (std::size_t c = 0; c < M.cols; ++c) M(i, c) = -M(i, c);
}
Int fdiv(const Int &a, const Int &b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
} // namespace

SNF snf(const IntMat &A) {
  SNF s;
  s.D = A;
  s.U = IntMat::identity(A.rows);
  s.V = IntMat::identity(A.cols);
  IntMat &D = s.D;
  std::size_t m = A.rows, n = A.cols, t = 0;
  while (t < m && t < n) {
    // smallest nonzero entry of the trailing block becomes the pivot
    bool found = false;
    std::size_t pi = 0, pj = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D(i, j) != 0 &&
            (!found || abs(D(i, j)) < abs(D(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    swap_rows(D, t, pi);
    swap_rows(s.U, t, pi);
    swap_cols(D, t, pj);
    swap_cols(s.V, t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q = fdiv(D(i, t), D(t, t));
        addmul_row(D, i, t, q);
        addmul_row(s.U, i, t, q);
        if (D(i, t) != 0) {
          swap_rows(D, t, i);
          swap_rows(s.U, t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q = fdiv(D(t, j), D(t, t));
        addmul_col(D, j, t, q);
        addmul_col(s.V, j, t, q);
        if (D(t, j) != 0) {
          swap_cols(D, t, j);
          swap_cols(s.V, t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: pull a non-divisible entry into row t
      for (std::size_t i = t + 1; i < m && clean; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            addmul_row(D, t, i, -1);
            addmul_row(s.U, t, i, -1);
            clean = false;
            break;
          }
    }
    if (D(t, t) < 0) {
      neg_row(D, t);
      neg_row(s.U, t);
    }
    ++t;
  }
  s.rank = t;
  return s;
}

IntMat hnf_rows(const IntMat &A) {
  IntMat H = A;
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols && r < H.rows; ++c) {
    // euclid on column c among rows r..
    while (true) {
      std::size_t best = H.rows;
      for (std::size_t i = r; i < H.rows; ++i)
        if (H(i, c) != 0 && (best == H.rows || abs(H(i, c)) < abs(H(best, c))))
          best = i;
      if (best == H.rows) break;
      swap_rows(H, r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < H.rows; ++i) {
        if (H(i, c) == 0) continue;
        addmul_row(H, i, r, fdiv(H(i, c), H(r, c)));
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) neg_row(H, r);
    for (std::size_t i = 0; i < r; ++i) addmul_row(H, i, r, fdiv(H(i, c), H(r, c)));
    ++r;
  }
  IntMat out(r, H.cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < H.cols; ++j) out(i, j) = H(i, j);
  return out;
}

IntMat kernel_basis(const IntMat &A) {
  SNF s = snf(A);
  std::size_t n = A.cols;
  IntMat K(n - s.rank, n);
  for (std::size_t j = s.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) K(j - s.rank, i) = s.V(i, j);
  return hnf_rows(K);
}

IntVec primitive(const IntVec &v) {
  Int g = 0;
  for (const auto &x : v) g = gcd(g, x);
  if (g == 0) throw std::invalid_argument("primitive: zero vector");
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}
IntVec primitive(const RatVec &v) {
  Int l = 1;
  for (const auto &q : v) l = lcm(l, q.get_den());
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat t = v[i] * l;
    r[i] = t.get_num();
  }
  return primitive(r);
}

bool is_saturated(const IntMat &L) {
  SNF s = snf(L);
  if (s.rank < L.rows) throw std::invalid_argument("is_saturated: dependent rows");
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) return false;
  return true;
}

bool is_mixed(const IntMat &A) {
  for (std::size_t i = 0; i < A.rows; ++i) {
    bool pos = false, neg = false;
    for (std::size_t j = 0; j < A.cols; ++j) {
      pos = pos || A(i, j) > 0;
      neg = neg || A(i, j) < 0;
    }
    if (!pos || !neg) return false;
  }
  return true;
}

namespace {
// true if some square submatrix using exactly the rows in `rows` is mixed
bool mixed_square_on_rows(const IntMat &A, const std::vector<std::size_t> &rows) {
  std::size_t s = rows.size();
  std::vector<std::size_t> cols;
  // depth-first choice of s columns with pruning: a row must still be able
  // to collect both signs from the remaining columns
  std::vector<int> pos(s, 0), neg(s, 0);
  auto rec = [&](auto &&self, std::size_t next) -> bool {
    if (cols.size() == s) {
      for (std::size_t r = 0; r < s; ++r)
        if (!pos[r] || !neg[r]) return false;
      return true;
    }
    for (std::size_t j = next; j + (s - cols.size()) <= A.cols; ++j) {
      cols.push_back(j);
      for (std::size_t r = 0; r < s; ++r) {
        pos[r] += A(rows[r], j) > 0;
        neg[r] += A(rows[r], j) < 0;
      }
      bool hit = self(self, j + 1);
      for (std::size_t r = 0; r < s; ++r) {
        pos[r] -= A(rows[r], j) > 0;
        neg[r] -= A(rows[r], j) < 0;
      }
      cols.pop_back();
      if (hit) return true;
    }
    return false;
  };
  return rec(rec, 0);
}
} // namespace

bool is_mixed_dominating(const IntMat &A) {
  if (!is_mixed(A)) return false;
  // sizes >= 2 only: a 1x1 submatrix is never mixed
  std::size_t maxs = std::min(A.rows, A.cols);
  std::vector<std::size_t> rows;
  for (std::size_t s = 2; s <= maxs; ++s) {
    std::vector<bool> pick(A.rows, false);
    std::fill(pick.begin(), pick.begin() + s, true);
    do {
      rows.clear();
      for (std::size_t i = 0; i < A.rows; ++i)
        if (pick[i]) rows.push_back(i);
      if (mixed_square_on_rows(A, rows)) return false;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return true;
}

IntVec AbelianPresentation::apply(const IntVec &x) const {
  IntVec y(projection.rows);
  for (std::size_t i = 0; i < projection.rows; ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < projection.cols; ++j) s += projection(i, j) * x.at(j);
    if (i < torsionOrders.size()) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), s.get_mpz_t(), torsionOrders[i].get_mpz_t());
      s = r;
    }
    y[i] = s;
  }
  return y;
}

AbelianPresentation cokernel(const IntMat &A) {
  SNF s = snf(A);
  AbelianPresentation p;
  std::size_t m = A.rows;
  std::vector<IntVec> tors, free;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank && s.D(i, i) == 1) continue;
    if (i < s.rank) {
      p.torsionOrders.push_back(s.D(i, i));
      IntVec r = s.U.row(i);
      for (auto &x : r) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), s.D(i, i).get_mpz_t());
      tors.push_back(r);
    } else {
      free.push_back(s.U.row(i));
    }
  }
  p.freeRank = free.size();
  // free coordinates in Hermite form so the degree map is canonical
  IntMat F = hnf_rows(IntMat::from_rows(free, m));
  p.projection = IntMat(tors.size() + p.freeRank, m);
  for (std::size_t i = 0; i < tors.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) p.projection(i, j) = tors[i][j];
  for (std::size_t i = 0; i < F.rows; ++i)
    for (std::size_t j = 0; j < m; ++j) p.projection(tors.size() + i, j) = F(i, j);
  return p;
}

// ---- rational linear algebra ----------------------------------------------

RREF rref(const RatMat &A) {
  RREF r{A, {}};
  RatMat &R = r.R;
  std::size_t row = 0;
  for (std::size_t c = 0; c < R.cols && row < R.rows; ++c) {
    std::size_t p = row;
    while (p < R.rows && R(p, c) == 0) ++p;
    if (p == R.rows) continue;
    if (p != row)
      for (std::size_t j = 0; j < R.cols; ++j) std::swap(R(p, j), R(row, j));
    Rat inv = 1 / R(row, c);
    for (std::size_t j = c; j < R.cols; ++j) R(row, j) *= inv;
    for (std::size_t i = 0; i < R.rows; ++i) {
      if (i == row || R(i, c) == 0) continue;
      Rat f = R(i, c);
      for (std::size_t j = c; j < R.cols; ++j) R(i, j) -= f * R(row, j);
    }
    r.pivots.push_back(c);
    ++row;
  }
  return r;
}

std::size_t rank(const RatMat &A) { return rref(A).pivots.size(); }
std::size_t rank(const IntMat &A) { return rank(to_rat(A)); }
std::size_t rank_rows(const std::vector<IntVec> &rows, std::size_t cols) {
  return rank(IntMat::from_rows(rows, cols));
}

std::vector<RatVec> nullspace(const RatMat &A) {
  RREF r = rref(A);
  std::vector<bool> isPivot(A.cols, false);
  for (auto c : r.pivots) isPivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < A.cols; ++f) {
    if (isPivot[f]) continue;
    RatVec v(A.cols, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.R(i, f);
    basis.push_back(v);
  }
  return basis;
}

std::optional<RatVec> solve(const RatMat &A, const RatVec &b) {
  if (b.size() != A.rows) throw std::invalid_argument("solve: size mismatch");
  RatMat Ab(A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) Ab(i, j) = A(i, j);
    Ab(i, A.cols) = b[i];
  }
  RREF r = rref(Ab);
  if (!r.pivots.empty() && r.pivots.back() == A.cols) return std::nullopt;
  RatVec x(A.cols, Rat(0));
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.R(i, A.cols);
  return x;
}

std::string to_string(const Rat &q) { return q.get_str(); }
std::string to_string(const IntVec &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}
std::string to_string(const RatVec &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::optional<Rat> parse_rat(const std::string &s) {
  auto slash = s.find('/');
  auto valid_int = [](const std::string &t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) return std::nullopt;
    return Rat(Int(strip(s)));
  }
  std::string n = s.substr(0, slash), d = s.substr(slash + 1);
  if (!valid_int(n) || !valid_int(d)) return std::nullopt;
  Int den(strip(d));
  if (den == 0) return std::nullopt;
  Rat q(Int(strip(n)), den);
  q.canonicalize();
  return q;
}

} // namespace tdef
