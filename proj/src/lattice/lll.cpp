#include "lattice/lll.hpp"

namespace hcg {

namespace {

Z dot_col(const ZMat& B, int i, int j) {
  Z s = 0;
  for (int r = 0; r < B.r; ++r) s += B(r, i) * B(r, j);
  return s;
}

// nearest integer to a/b, b > 0
Z round_div(const Z& a, const Z& b) {
  Z q, n = 2 * a + b, d = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

}  // namespace

// integral variant: d[i] = prod of |b*_j|^2 for j < i, lam(k,j) = d[j+1] mu(k,j)
ZMat lll_reduce(const ZMat& B0, const Q& delta) {
  require(delta > Q(1, 4) && delta < 1, Code::domain, "lll: delta must lie in (1/4, 1)");
  ZMat B = B0;
  int n = B.c;
  if (n == 0) return B;
  const Z& dp = delta.get_num();
  const Z& dq = delta.get_den();
  std::vector<Z> d(n + 1);
  ZMat lam(n, n);
  d[0] = 1;
  d[1] = dot_col(B, 0, 0);
  if (d[1] == 0) fail(Code::rank, "lll: dependent columns");
  int k = 1, kmax = 0;

  auto red = [&](int k_, int l) {
    Z two = 2 * lam(k_, l);
    if (abs(two) <= d[l + 1]) return;
    Z q = round_div(lam(k_, l), d[l + 1]);
    for (int r = 0; r < B.r; ++r) B(r, k_) -= q * B(r, l);
    lam(k_, l) -= q * d[l + 1];
    for (int i = 0; i < l; ++i) lam(k_, i) -= q * lam(l, i);
  };

  auto swap_k = [&](int k_) {
    for (int r = 0; r < B.r; ++r) std::swap(B(r, k_), B(r, k_ - 1));
    for (int j = 0; j < k_ - 1; ++j) std::swap(lam(k_, j), lam(k_ - 1, j));
    Z l = lam(k_, k_ - 1);
    Z Bn = (d[k_ - 1] * d[k_ + 1] + l * l) / d[k_];
    for (int i = k_ + 1; i <= kmax; ++i) {
      Z t = lam(i, k_);
      lam(i, k_) = (d[k_ + 1] * lam(i, k_ - 1) - l * t) / d[k_];
      lam(i, k_ - 1) = (Bn * t + l * lam(i, k_)) / d[k_ + 1];
    }
    d[k_] = Bn;
  };

  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (int j = 0; j <= k; ++j) {
        Z u = dot_col(B, k, j);
        for (int i = 0; i < j; ++i) u = (d[i + 1] * u - lam(k, i) * lam(j, i)) / d[i];
        if (j < k) lam(k, j) = u;
        else {
          if (u == 0) fail(Code::rank, "lll: dependent columns");
          d[k + 1] = u;
        }
      }
    }
    red(k, k - 1);
    // Lovasz: delta d_k^2 ... in integral form
    Z lhs = dq * d[k + 1] * d[k - 1];
    Z rhs = dp * d[k] * d[k] - dq * lam(k, k - 1) * lam(k, k - 1);
    if (lhs < rhs) {
      swap_k(k);
      if (k > 1) --k;
    } else {
      for (int l = k - 2; l >= 0; --l) red(k, l);
      ++k;
    }
  }
  return B;
}

GramSchmidt gram_schmidt(const ZMat& B) {
  int n = B.c;
  GramSchmidt gs{QMat(n, n), QVec(n)};
  std::vector<QVec> bs(n, QVec(B.r));
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < B.r; ++r) bs[i][r] = B(r, i);
    for (int j = 0; j < i; ++j) {
      if (gs.norm2[j] == 0) continue;
      Q dotv = 0;
      for (int r = 0; r < B.r; ++r) dotv += Q(B(r, i)) * bs[j][r];
      Q m = dotv / gs.norm2[j];
      gs.mu(i, j) = m;
      for (int r = 0; r < B.r; ++r) bs[i][r] -= m * bs[j][r];
    }
    Q s = 0;
    for (int r = 0; r < B.r; ++r) s += bs[i][r] * bs[i][r];
    gs.norm2[i] = s;
  }
  return gs;
}

bool is_lll_reduced(const ZMat& B, const Q& delta) {
  GramSchmidt gs = gram_schmidt(B);
  int n = B.c;
  for (int i = 0; i < n; ++i) {
    if (gs.norm2[i] == 0) return false;
    for (int j = 0; j < i; ++j)
      if (abs(gs.mu(i, j)) > Q(1, 2)) return false;
  }
  for (int k = 1; k < n; ++k) {
    Q m = gs.mu(k, k - 1);
    if (delta * gs.norm2[k - 1] > gs.norm2[k] + m * m * gs.norm2[k - 1]) return false;
  }
  return true;
}

}  // namespace hcg
