#include "lattice/linalg.hpp"

#include <algorithm>

namespace hcg {

namespace {

void col_op(ZMat& A, int i, int j, const Z& a, const Z& b, const Z& c, const Z& d) {
  // (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
  for (int r = 0; r < A.r; ++r) {
    Z x = A(r, i), y = A(r, j);
    A(r, i) = a * x + b * y;
    A(r, j) = c * x + d * y;
  }
}

void col_axpy(ZMat& A, int dst, int src, const Z& q) {
  if (q == 0) return;
  for (int r = 0; r < A.r; ++r) A(r, dst) -= q * A(r, src);
}

void col_swap(ZMat& A, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < A.r; ++r) std::swap(A(r, i), A(r, j));
}

void col_neg(ZMat& A, int i) {
  for (int r = 0; r < A.r; ++r) A(r, i) = -A(r, i);
}

}  // namespace

Hnf hnf(const ZMat& M) {
  Hnf out;
  out.H = M;
  out.U = ZMat::identity(M.c);
  ZMat& H = out.H;
  ZMat& U = out.U;
  int k = 0;
  for (int i = 0; i < H.r && k < H.c; ++i) {
    // fold row i of columns k.. into column k
    for (int j = k + 1; j < H.c; ++j) {
      if (H(i, j) == 0) continue;
      if (H(i, k) == 0) {
        col_swap(H, k, j);
        col_swap(U, k, j);
        continue;
      }
      Z a = H(i, k), b = H(i, j), g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Z u = -b / g, v = a / g;  // det [[s,u],[t,v]] = (s a + t b)/g = 1
      col_op(H, k, j, s, t, u, v);
      col_op(U, k, j, s, t, u, v);
    }
    if (H(i, k) == 0) continue;
    if (H(i, k) < 0) {
      col_neg(H, k);
      col_neg(U, k);
    }
    for (int j = 0; j < k; ++j) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(i, k).get_mpz_t());
      col_axpy(H, j, k, q);
      col_axpy(U, j, k, q);
    }
    ++k;
  }
  out.rank = k;
  return out;
}

ZMat hnf_basis(const ZMat& M) {
  Hnf h = hnf(M);
  return block(h.H, 0, 0, h.H.r, h.rank);
}

bool same_lattice(const ZMat& A, const ZMat& B) {
  require(A.r == B.r, Code::dimension, "same_lattice: ambient dimensions differ");
  return hnf_basis(A) == hnf_basis(B);
}

bool is_hnf(const ZMat& H) {
  int prow = -1;
  bool zero_seen = false;
  for (int j = 0; j < H.c; ++j) {
    int p = -1;
    for (int i = 0; i < H.r; ++i)
      if (H(i, j) != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      zero_seen = true;
      continue;
    }
    if (zero_seen || p <= prow || H(p, j) <= 0) return false;
    for (int l = 0; l < j; ++l)
      if (H(p, l) < 0 || H(p, l) >= H(p, j)) return false;
    prow = p;
  }
  return true;
}

ZMat int_kernel(const ZMat& M) {
  Hnf h = hnf(M);
  ZMat K = block(h.U, 0, h.rank, M.c, M.c - h.rank);
  if (K.c == 0) return K;
  return hnf_basis(K);
}

ZMat lattice_intersection(const ZMat& A, const ZMat& B) {
  require(A.r == B.r, Code::dimension, "lattice_intersection: ambient dimensions differ");
  ZMat a = hnf_basis(A), b = hnf_basis(B);
  if (a.c == 0 || b.c == 0) return ZMat(A.r, 0);
  // A x = B y  <=>  [A | -B] (x;y) = 0
  ZMat nb = b;
  for (auto& x : nb.v) x = -x;
  ZMat K = int_kernel(hcat(a, nb));
  ZMat X = block(K, 0, 0, a.c, K.c);
  if (X.c == 0) return ZMat(A.r, 0);
  return hnf_basis(a * X);
}

std::optional<ZVec> lattice_coords(const ZMat& B, const ZVec& v) {
  require(B.r == int(v.size()), Code::dimension, "lattice_coords: length mismatch");
  // reduce v against the HNF; coordinates w.r.t. the HNF columns, then map by U
  Hnf h = hnf(B);
  ZVec rest = v;
  ZVec y(B.c);
  int k = 0;
  for (int i = 0; i < B.r && k <= h.rank; ++i) {
    if (k < h.rank && h.H(i, k) != 0) {
      Z q, rmd;
      mpz_fdiv_qr(q.get_mpz_t(), rmd.get_mpz_t(), rest[i].get_mpz_t(), h.H(i, k).get_mpz_t());
      if (rmd != 0) return std::nullopt;
      for (int r = 0; r < B.r; ++r) rest[r] -= q * h.H(r, k);
      y[k] = q;
      ++k;
    } else if (rest[i] != 0) {
      return std::nullopt;
    }
  }
  for (auto& x : rest)
    if (x != 0) return std::nullopt;
  return mat_vec(h.U, y);
}

Z det_bareiss(ZMat M) {
  require(M.r == M.c, Code::dimension, "det: non-square matrix");
  int n = M.r;
  if (n == 0) return 1;
  Z prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (M(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(M(k, j), M(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Z t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      M(i, k) = 0;
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

ZMat clear_rows(const QMat& M) {
  ZMat Z_(M.r, M.c);
  for (int i = 0; i < M.r; ++i) {
    Z l = 1;
    for (int j = 0; j < M.c; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), M(i, j).get_den_mpz_t());
    for (int j = 0; j < M.c; ++j) {
      Q t = M(i, j) * l;
      Z_(i, j) = t.get_num();
    }
  }
  return Z_;
}

Q det_rational(const QMat& M) {
  require(M.r == M.c, Code::dimension, "det: non-square matrix");
  Q scale_back = 1;
  ZMat A(M.r, M.c);
  for (int i = 0; i < M.r; ++i) {
    Z l = 1;
    for (int j = 0; j < M.c; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), M(i, j).get_den_mpz_t());
    for (int j = 0; j < M.c; ++j) A(i, j) = Q(M(i, j) * l).get_num();
    scale_back /= l;
  }
  Q d = Q(det_bareiss(A)) * scale_back;
  d.canonicalize();
  return d;
}

Q det_cofactor(const QMat& M) {
  require(M.r == M.c, Code::dimension, "det: non-square matrix");
  int n = M.r;
  if (n == 0) return 1;
  if (n == 1) return M(0, 0);
  Q d = 0;
  for (int j = 0; j < n; ++j) {
    if (M(0, j) == 0) continue;
    QMat m(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
      for (int k = 0, kk = 0; k < n; ++k)
        if (k != j) m(i - 1, kk++) = M(i, k);
    Q t = M(0, j) * det_cofactor(m);
    d += (j % 2) ? Q(-t) : t;
  }
  return d;
}

Rref rref(QMat M) {
  Rref out;
  int row = 0;
  for (int j = 0; j < M.c && row < M.r; ++j) {
    int p = -1;
    for (int i = row; i < M.r; ++i)
      if (M(i, j) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int k = 0; k < M.c; ++k) std::swap(M(p, k), M(row, k));
    Q inv = 1 / M(row, j);
    for (int k = j; k < M.c; ++k) M(row, k) *= inv;
    for (int i = 0; i < M.r; ++i) {
      if (i == row || M(i, j) == 0) continue;
      Q f = M(i, j);
      for (int k = j; k < M.c; ++k) M(i, k) -= f * M(row, k);
    }
    out.pivots.push_back(j);
    ++row;
  }
  out.R = std::move(M);
  return out;
}

int rank_q(const QMat& M) { return int(rref(M).pivots.size()); }

QMat nullspace(const QMat& M) {
  Rref rr = rref(M);
  std::vector<bool> piv(M.c, false);
  for (int p : rr.pivots) piv[p] = true;
  int nfree = M.c - int(rr.pivots.size());
  QMat K(M.c, nfree);
  int f = 0;
  for (int j = 0; j < M.c; ++j) {
    if (piv[j]) continue;
    K(j, f) = 1;
    for (size_t r = 0; r < rr.pivots.size(); ++r) K(rr.pivots[r], f) = -rr.R(int(r), j);
    ++f;
  }
  return K;
}

std::optional<QVec> solve(const QMat& M, const QVec& b) {
  require(M.r == int(b.size()), Code::dimension, "solve: length mismatch");
  QMat aug(M.r, M.c + 1);
  for (int i = 0; i < M.r; ++i) {
    for (int j = 0; j < M.c; ++j) aug(i, j) = M(i, j);
    aug(i, M.c) = b[i];
  }
  Rref rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == M.c) return std::nullopt;
  QVec x(M.c);
  for (size_t r = 0; r < rr.pivots.size(); ++r) x[rr.pivots[r]] = rr.R(int(r), M.c);
  return x;
}

QMat inverse(const QMat& M) {
  require(M.r == M.c, Code::dimension, "inverse: non-square matrix");
  int n = M.r;
  QMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = M(i, j);
    aug(i, n + i) = 1;
  }
  Rref rr = rref(aug);
  require(int(rr.pivots.size()) >= n && rr.pivots[n - 1] == n - 1, Code::rank, "inverse: singular matrix");
  return block(rr.R, 0, n, n, n);
}

ZVec primitive(const QVec& v) {
  Z l = 1, g = 0;
  for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  ZVec z(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    z[i] = Q(v[i] * l).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : z) x /= g;
  return z;
}

}  // namespace hcg
