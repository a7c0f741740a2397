#pragma once
// exact scalars and dense matrices
#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace hcg {

using Z = mpz_class;
using Q = mpq_class;
using ZVec = std::vector<Z>;
using QVec = std::vector<Q>;

// a / b in lowest terms (the two-argument mpq constructor does not reduce)
inline Q qfrac(const Z& a, const Z& b) {
  Q q(a, b);
  q.canonicalize();
  return q;
}

Z parse_z(const std::string& s);
// accepts "a", "a/b", and finite decimals like "-0.25" or "1e-3"
Q parse_q(const std::string& s);
std::string to_str(const Z& z);
std::string to_str(const Q& q);

template <class T>
struct Mat {
  int r = 0, c = 0;
  std::vector<T> v;
  Mat() = default;
  Mat(int rows, int cols) : r(rows), c(cols), v(size_t(rows) * size_t(cols)) {}
  T& operator()(int i, int j) { return v[size_t(i) * c + j]; }
  const T& operator()(int i, int j) const { return v[size_t(i) * c + j]; }
  bool operator==(const Mat& o) const { return r == o.r && c == o.c && v == o.v; }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  std::vector<T> col(int j) const {
    std::vector<T> x(r);
    for (int i = 0; i < r; ++i) x[i] = (*this)(i, j);
    return x;
  }
  std::vector<T> row(int i) const { return std::vector<T>(v.begin() + size_t(i) * c, v.begin() + size_t(i + 1) * c); }
  void set_col(int j, const std::vector<T>& x) {
    for (int i = 0; i < r; ++i) (*this)(i, j) = x[i];
  }
  Mat transpose() const {
    Mat t(c, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool is_zero() const {
    for (auto& x : v)
      if (x != 0) return false;
    return true;
  }
};

using ZMat = Mat<Z>;
using QMat = Mat<Q>;

template <class T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
  require(a.c == b.r, Code::dimension, "matrix product: inner dimensions differ");
  Mat<T> m(a.r, b.c);
  for (int i = 0; i < a.r; ++i)
    for (int k = 0; k < a.c; ++k) {
      const T& x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.c; ++j) m(i, j) += x * b(k, j);
    }
  return m;
}

template <class T>
Mat<T> operator+(const Mat<T>& a, const Mat<T>& b) {
  require(a.r == b.r && a.c == b.c, Code::dimension, "matrix sum: shapes differ");
  Mat<T> m = a;
  for (size_t i = 0; i < m.v.size(); ++i) m.v[i] += b.v[i];
  return m;
}

template <class T>
Mat<T> operator-(const Mat<T>& a, const Mat<T>& b) {
  require(a.r == b.r && a.c == b.c, Code::dimension, "matrix difference: shapes differ");
  Mat<T> m = a;
  for (size_t i = 0; i < m.v.size(); ++i) m.v[i] -= b.v[i];
  return m;
}

template <class T>
Mat<T> scale(const Mat<T>& a, const T& s) {
  Mat<T> m = a;
  for (auto& x : m.v) x *= s;
  return m;
}

template <class T>
std::vector<T> mat_vec(const Mat<T>& a, const std::vector<T>& x) {
  require(a.c == int(x.size()), Code::dimension, "matrix-vector: length mismatch");
  std::vector<T> y(a.r);
  for (int i = 0; i < a.r; ++i)
    for (int j = 0; j < a.c; ++j) y[i] += a(i, j) * x[j];
  return y;
}

QMat to_q(const ZMat& m);
// hstack / vstack
template <class T>
Mat<T> hcat(const Mat<T>& a, const Mat<T>& b) {
  require(a.r == b.r || a.c == 0 || b.c == 0, Code::dimension, "hcat: row counts differ");
  int r = a.c ? a.r : b.r;
  Mat<T> m(r, a.c + b.c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < a.c; ++j) m(i, j) = a(i, j);
    for (int j = 0; j < b.c; ++j) m(i, a.c + j) = b(i, j);
  }
  return m;
}
template <class T>
Mat<T> vcat(const Mat<T>& a, const Mat<T>& b) {
  require(a.c == b.c || a.r == 0 || b.r == 0, Code::dimension, "vcat: column counts differ");
  int c = a.r ? a.c : b.c;
  Mat<T> m(a.r + b.r, c);
  for (int i = 0; i < a.r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.r; ++i)
    for (int j = 0; j < c; ++j) m(a.r + i, j) = b(i, j);
  return m;
}

// column selection, block extraction
template <class T>
Mat<T> block(const Mat<T>& a, int r0, int c0, int nr, int nc) {
  Mat<T> m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = a(r0 + i, c0 + j);
  return m;
}

using Rng = std::mt19937_64;
// uniform integer in [lo, hi]
inline long rand_int(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

}  // namespace hcg
