#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdef {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Raised when a mathematical precondition fails. `condition` is the short
// label the CLI prints, e.g. "(*)" or "attainment".
struct ConditionError : std::runtime_error {
  std::string condition;
  ConditionError(std::string cond, const std::string &what)
    : std::runtime_error(cond + ": " + what), condition(std::move(cond)) {}
};

template <class T> struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  T &operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }

  static Mat from_rows(const std::vector<std::vector<T>> &rs, std::size_t c) {
    Mat m(rs.size(), c);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (rs[i].size() != c) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rs[i][j];
    }
    return m;
  }
  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> r;
    for (std::size_t i = 0; i < rows; ++i) r.push_back(row(i));
    return r;
  }
  Mat transpose() const {
    Mat t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool operator==(const Mat &o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

template <class T> Mat<T> operator*(const Mat<T> &x, const Mat<T> &y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix size mismatch");
  Mat<T> z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

RatMat to_rat(const IntMat &m);
RatVec to_rat(const IntVec &v);
bool is_integral(const RatVec &v);
IntVec to_int(const RatVec &v); // throws on non-integral entries

Int dot(const IntVec &a, const IntVec &b);
Rat dot(const IntVec &a, const RatVec &b);
Rat dot(const RatVec &a, const RatVec &b);
IntVec operator+(const IntVec &a, const IntVec &b);
IntVec operator-(const IntVec &a, const IntVec &b);
RatVec operator+(const RatVec &a, const RatVec &b);
RatVec operator-(const RatVec &a, const RatVec &b);
RatVec operator*(const Rat &s, const RatVec &v);
IntVec operator*(const Int &s, const IntVec &v);
IntVec negate(const IntVec &v);
bool is_zero(const IntVec &v);
bool is_zero(const RatVec &v);
IntVec unit(std::size_t dim, std::size_t i);
IntVec concat(const IntVec &a, const IntVec &b);
RatVec concat(const RatVec &a, const RatVec &b);

Int floor_rat(const Rat &q);
Int ceil_rat(const Rat &q);

// Smith normal form: U*A*V = D with d1 | d2 | ... and U, V unimodular.
struct SNF {
  IntMat D, U, V;
  std::size_t rank = 0;
};
SNF snf(const IntMat &A);

// Row Hermite normal form of the row lattice; zero rows dropped, pivots
// positive, entries above pivots reduced into [0, pivot).
IntMat hnf_rows(const IntMat &A);

// Saturated basis of {v : A v = 0} as rows, in Hermite form.
IntMat kernel_basis(const IntMat &A);

IntVec primitive(const RatVec &v);
IntVec primitive(const IntVec &v);

bool is_saturated(const IntMat &L);
bool is_mixed(const IntMat &A);
bool is_mixed_dominating(const IntMat &A);

// Z^rows / column image of A.
struct AbelianPresentation {
  std::size_t freeRank = 0;
  std::vector<Int> torsionOrders;
  IntMat projection; // (torsion + free) x rows; torsion rows first
  // Image of x, torsion coordinates reduced into [0, d).
  IntVec apply(const IntVec &x) const;
};
AbelianPresentation cokernel(const IntMat &A);

// Linear algebra over Q.
struct RREF {
  RatMat R;
  std::vector<std::size_t> pivots;
};
RREF rref(const RatMat &A);
std::size_t rank(const RatMat &A);
std::size_t rank(const IntMat &A);
std::size_t rank_rows(const std::vector<IntVec> &rows, std::size_t cols);
// Basis of {x : A x = 0} over Q.
std::vector<RatVec> nullspace(const RatMat &A);
// Some solution of A x = b, or none.
std::optional<RatVec> solve(const RatMat &A, const RatVec &b);

std::string to_string(const Rat &q);
std::string to_string(const IntVec &v);
std::string to_string(const RatVec &v);
std::optional<Rat> parse_rat(const std::string &s);

} // namespace tdef
