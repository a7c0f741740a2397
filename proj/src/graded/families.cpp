#include "graded/families.hpp"

#include <numeric>

#include "brauer/catalog.hpp"
#include "lattice/linalg.hpp"

namespace hcg {

QMat quad_mult(const Q& x, const Q& y, const Z& d) {
  QMat m(2, 2);
  m(0, 0) = x, m(0, 1) = y * d, m(1, 0) = y, m(1, 1) = x;
  return m;
}

namespace {

// n x n matrix over K (pairs x + y sqrt d) as a 2n x 2n rational matrix; d = 0 means K = Q
QMat k_embed(const std::vector<std::pair<Q, Q>>& e, int n, const Z& d) {
  if (d == 0) {
    QMat m(n, n);
    for (int i = 0; i < n * n; ++i) m.v[size_t(i)] = e[size_t(i)].first;
    return m;
  }
  QMat m(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      QMat b = quad_mult(e[size_t(i * n + j)].first, e[size_t(i * n + j)].second, d);
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) m(2 * i + s, 2 * j + t) = b(s, t);
    }
  return m;
}

QMat k_scalar(const Q& x, const Q& y, int n, const Z& d) {
  std::vector<std::pair<Q, Q>> e(static_cast<size_t>(n * n));
  for (int i = 0; i < n; ++i) e[size_t(i * n + i)] = {x, y};
  return k_embed(e, n, d);
}

QMat random_k_matrix(int n, const Z& d, Rng& rng, bool unimodular) {
  for (;;) {
    std::vector<std::pair<Q, Q>> e(static_cast<size_t>(n * n));
    if (unimodular) {
      for (int i = 0; i < n; ++i) e[size_t(i * n + i)] = {Q(1), Q(0)};
      for (int k = 0; k < 3 * n; ++k) {
        int i = int(rand_int(rng, 0, n - 1)), j = int(rand_int(rng, 0, n - 1));
        if (i == j) continue;
        Q x = rand_int(rng, -2, 2), y = d == 0 ? 0 : rand_int(rng, -1, 1);
        for (int c = 0; c < n; ++c) {
          auto [px, py] = e[size_t(j * n + c)];
          e[size_t(i * n + c)].first += x * px + y * py * d;
          e[size_t(i * n + c)].second += x * py + y * px;
        }
      }
    } else {
      for (auto& [x, y] : e) x = rand_int(rng, -3, 3), y = d == 0 ? 0 : rand_int(rng, -3, 3);
    }
    QMat m = k_embed(e, n, d);
    if (det_rational(m) != 0) return m;
  }
}

// degree-1 generator swapping M_0 and M_1: B on M_0 -> M_1, A on M_1 -> M_0
QMat swap_gen(const QMat& B, const QMat& A) {
  int k = B.r;
  QMat X(2 * k, 2 * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) X(k + i, j) = B(i, j), X(i, k + j) = A(i, j);
  return X;
}

QMat diag2(const QMat& a, const QMat& b) {
  QMat X(a.r + b.r, a.c + b.c);
  for (int i = 0; i < a.r; ++i)
    for (int j = 0; j < a.c; ++j) X(i, j) = a(i, j);
  for (int i = 0; i < b.r; ++i)
    for (int j = 0; j < b.c; ++j) X(a.r + i, a.c + j) = b(i, j);
  return X;
}

}  // namespace

SquaresCase squares_spec(const Q& a0, const Q& a1, const Z& d, int n, Rng& rng, bool unimodular) {
  require(a0 != 0 || a1 != 0, Code::domain, "squares family: a must be nonzero");
  SquaresCase sc;
  sc.d = d, sc.a0 = a0, sc.a1 = a1, sc.n = n;
  Q N = d == 0 ? a0 : a0 * a0 - d * a1 * a1;
  sc.norm_power = 1;
  for (int i = 0; i < n; ++i) sc.norm_power *= N;
  int k = d == 0 ? n : 2 * n;
  GradedSpec& s = sc.spec;
  s.C.d = {2};
  s.dims = {k, k};
  if (d != 0) {
    QMat th = k_scalar(0, 1, n, d);
    s.gens.push_back({"theta", 0, diag2(th, th), 0});
  }
  QMat B = random_k_matrix(n, d, rng, unimodular);
  QMat A = k_scalar(a0, a1, n, d) * inverse(B);
  s.gens.push_back({"T", 1, swap_gen(B, A), int(s.gens.size())});
  return sc;
}

GradedSpec cyclic_spec(int m, int n, Rng& rng, bool integral, bool invertible_link) {
  std::vector<int> pi(static_cast<size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  for (int i = 0; i + 1 < n; ++i)
    if (pi[size_t(i)] == i && rand_int(rng, 0, 1)) {
      int j = int(rand_int(rng, i + 1, n - 1));
      if (pi[size_t(j)] == j) pi[size_t(i)] = j, pi[size_t(j)] = i;
    }
  GradedSpec s;
  s.C.d = {m};
  s.dims.assign(size_t(m), n);
  int N = m * n;
  auto tensor = [&](const std::vector<long>& x, int k) {
    QMat X(N, N);
    for (int c = 0; c < m; ++c)
      for (int j = 0; j < n; ++j) X(((c + k) % m) * n + j, c * n + j) = x[size_t(j)];
    return X;
  };
  int ngen = int(rand_int(rng, 1, 3));
  for (int g = 0; g < ngen; ++g) {
    int k = g == 0 && invertible_link ? 1 % m : int(rand_int(rng, 0, m - 1));
    std::vector<long> x(static_cast<size_t>(n)), y(static_cast<size_t>(n));
    for (auto& v : x) {
      if (g == 0 && invertible_link) v = (rand_int(rng, 0, 1) ? 1 : -1) * (integral ? 1 : rand_int(rng, 1, 3));
      else v = rand_int(rng, -3, 3);
    }
    for (int j = 0; j < n; ++j) y[size_t(j)] = x[size_t(pi[size_t(j)])];
    int mk = (m - k) % m;
    std::string lab = "X" + std::to_string(g + 1);
    int idx = int(s.gens.size());
    if (x == y && mk == k) {
      s.gens.push_back({lab, k, tensor(x, k), idx});
    } else {
      s.gens.push_back({lab, k, tensor(x, k), idx + 1});
      s.gens.push_back({"i" + lab, mk, tensor(y, mk), idx});
    }
  }
  QMat Qb(N, N);
  for (int c = 0; c < m; ++c) {
    QMat q = random_invertible(n, rng, integral);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Qb(c * n + i, c * n + j) = q(i, j);
  }
  QMat Qi = inverse(Qb);
  for (auto& g : s.gens) g.mat = Qb * g.mat * Qi;
  return s;
}

GradedSpec swap_counterexample() {
  GradedSpec s;
  s.C.d = {2};
  s.dims = {1, 1};
  QMat e1(2, 2), e2(2, 2);
  e1(0, 0) = 1, e2(1, 1) = 1;
  s.gens = {{"e1", 0, e1, 1}, {"e2", 0, e2, 0}};
  return s;
}

GradedSpec product_link_spec(const Q& a, const Q& b) {
  GradedSpec s;
  s.C.d = {2, 2};
  s.dims = {1, 1, 1, 1};
  QMat T1(4, 4), T2(4, 4);
  for (int t1 = 0; t1 < 2; ++t1) {
    // index = t0 + 2 t1
    T1(1 + 2 * t1, 2 * t1) = 1, T1(2 * t1, 1 + 2 * t1) = a;
    T2(t1 + 2, t1) = 1, T2(t1, t1 + 2) = b;
  }
  s.gens = {{"T1", s.C.index({1, 0}), T1, 0}, {"T2", s.C.index({0, 1}), T2, 1}};
  return s;
}

SplitCase split_spec(const Q& a0, const Q& a1, const Q& beta, Rng& rng) {
  SplitCase sc;
  Q Na = a0 * a0 - 2 * a1 * a1;
  sc.sqrt2_part = Na, sc.rational_part = beta, sc.total = Na * beta;
  GradedSpec& s = sc.spec;
  s.C.d = {2};
  s.dims = {3, 3};
  QMat one = QMat::identity(1);
  QMat th = diag2(quad_mult(0, 1, 2), one);
  s.gens.push_back({"theta", 0, diag2(th, th), 0});
  QMat b;
  do b = quad_mult(rand_int(rng, -3, 3), rand_int(rng, -3, 3), 2);
  while (det_rational(b) == 0);
  Q r = rand_int(rng, 1, 4) * (rand_int(rng, 0, 1) ? 1 : -1);
  QMat rr = one, rb = one;
  rr(0, 0) = r, rb(0, 0) = beta / r;
  s.gens.push_back({"T", 1, swap_gen(diag2(b, rr), diag2(quad_mult(a0, a1, 2) * inverse(b), rb)), 1});
  return sc;
}

GradedSpec galois_spec(const Z& d, const Z& a, int n, Rng& rng) {
  GradedSpec s;
  s.C.d = {2};
  s.dims = {2 * n, 2 * n};
  QMat th = k_scalar(0, 1, n, d);
  QMat full = diag2(th, th);
  s.gens.push_back({"theta", 0, full, 1});
  s.gens.push_back({"-theta", 0, scale(full, Q(-1)), 0});
  QMat B = random_k_matrix(n, d, rng, true);
  s.gens.push_back({"T", 1, swap_gen(B, k_scalar(Q(a), 0, n, d) * inverse(B)), 2});
  return s;
}

}  // namespace hcg
