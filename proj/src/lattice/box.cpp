#include "lattice/box.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lattice/linalg.hpp"
#include "lattice/lll.hpp"

namespace hcg {

namespace {

bool in_boxes(const ZVec& v, const Box& boxes) {
  for (size_t i = 0; i < v.size(); ++i)
    if (std::find(boxes[i].begin(), boxes[i].end(), v[i]) == boxes[i].end()) return false;
  return true;
}

// floor(sqrt(x)) for rational x >= 0, as an integer upper bound helper
Z isqrt_floor(const Q& x) {
  if (x <= 0) return 0;
  Z n = x.get_num(), d = x.get_den();
  Z q = n / d, r;
  mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
  return r + 1;  // safe over-estimate of the real root
}

}  // namespace

void enumerate_ellipsoid(const QMat& G, const QVec& y0, const Q& R2,
                         const std::function<void(const ZVec&)>& emit) {
  int n = G.r;
  if (R2 < 0) return;
  if (n == 0) {
    emit({});
    return;
  }
  // G = U^T D U with U unit upper triangular
  QMat U = QMat::identity(n);
  QVec D(n);
  for (int i = 0; i < n; ++i) {
    Q s = G(i, i);
    for (int k = 0; k < i; ++k) s -= U(k, i) * U(k, i) * D[k];
    require(s > 0, Code::domain, "enumerate_ellipsoid: Gram matrix not positive definite");
    D[i] = s;
    for (int j = i + 1; j < n; ++j) {
      Q t = G(i, j);
      for (int k = 0; k < i; ++k) t -= U(k, i) * U(k, j) * D[k];
      U(i, j) = t / s;
    }
  }
  ZVec y(n);
  QVec budget(n + 1);
  budget[n] = R2;
  // recursive descent from the last coordinate
  std::function<void(int)> rec = [&](int i) {
    // centre c_i = y0_i - sum_{j>i} U(i,j) (y_j - y0_j)
    Q c = y0[i];
    for (int j = i + 1; j < n; ++j) c -= U(i, j) * (Q(y[j]) - y0[j]);
    Q rad2 = budget[i + 1] / D[i];
    // integer candidates in [c - sqrt(rad2), c + sqrt(rad2)]; exact test below
    Z w = isqrt_floor(rad2);
    Q cf = c;
    Z lo, hi;
    {
      Q a = cf - Q(w);
      mpz_fdiv_q(lo.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
      Q b = cf + Q(w);
      mpz_cdiv_q(hi.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    }
    // tighten with doubles, then widen by one; exactness is restored by the test
    double cd = c.get_d(), rd = std::sqrt(std::max(0.0, rad2.get_d()));
    if (std::isfinite(cd) && std::isfinite(rd) && rd < 1e15 && std::fabs(cd) < 1e15) {
      Z l2 = Z(std::floor(cd - rd)) - 1, h2 = Z(std::ceil(cd + rd)) + 1;
      if (l2 > lo) lo = l2;
      if (h2 < hi) hi = h2;
    }
    for (Z t = lo; t <= hi; ++t) {
      Q dlt = Q(t) - c;
      Q used = D[i] * dlt * dlt;
      if (used > budget[i + 1]) continue;
      y[i] = t;
      budget[i] = budget[i + 1] - used;
      if (i == 0) emit(y);
      else rec(i - 1);
    }
  };
  rec(n - 1);
}

std::vector<ZVec> box_points(const ZMat& L0, const ZVec& shift, const Box& boxes) {
  int m = L0.r;
  require(int(shift.size()) == m && int(boxes.size()) == m, Code::dimension, "box_points: dimension mismatch");
  for (auto& b : boxes) require(!b.empty(), Code::domain, "box_points: empty box");
  std::set<ZVec> found;
  ZMat L = hnf_basis(L0);
  if (L.c == 0) {
    if (in_boxes(shift, boxes)) return {shift};
    return {};
  }
  L = lll_reduce(L);
  int r = L.c;
  // target: box centre minus shift; radius^2 from half-widths
  QVec t(m);
  Q R2 = 0;
  for (int i = 0; i < m; ++i) {
    Z lo = *std::min_element(boxes[i].begin(), boxes[i].end());
    Z hi = *std::max_element(boxes[i].begin(), boxes[i].end());
    t[i] = qfrac(lo + hi, 2) - Q(shift[i]);
    t[i].canonicalize();
    Q h = qfrac(hi - lo, 2);
    R2 += h * h;
  }
  // |L y - t|^2 = (y - y0)^T G (y - y0) + dist^2
  QMat Lq = to_q(L), G = Lq.transpose() * Lq;
  QVec rhs = mat_vec(Lq.transpose(), t);
  auto y0 = solve(G, rhs);
  require(bool(y0), Code::rank, "box_points: singular Gram matrix");
  QVec proj = mat_vec(Lq, *y0);
  Q dist2 = 0;
  for (int i = 0; i < m; ++i) dist2 += (t[i] - proj[i]) * (t[i] - proj[i]);
  enumerate_ellipsoid(G, *y0, R2 - dist2, [&](const ZVec& y) {
    ZVec v = shift;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < r; ++j) v[i] += L(i, j) * y[j];
    if (in_boxes(v, boxes)) found.insert(v);
  });
  return {found.begin(), found.end()};
}

std::vector<ZVec> box_points_naive(const ZMat& L, const ZVec& shift, const Box& boxes, int bound) {
  std::set<ZVec> found;
  int r = L.c, m = L.r;
  std::vector<int> y(r, -bound);
  while (true) {
    ZVec v = shift;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < r; ++j) v[i] += L(i, j) * y[j];
    if (in_boxes(v, boxes)) found.insert(v);
    int j = 0;
    while (j < r && y[j] == bound) y[j++] = -bound;
    if (j == r) break;
    ++y[j];
  }
  return {found.begin(), found.end()};
}

}  // namespace hcg
