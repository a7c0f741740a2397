#include <chrono>

#include "doctest.h"
#include "lattice/box.hpp"
#include "lattice/linalg.hpp"
#include "lattice/lll.hpp"
#include "lattice/squareclass.hpp"

using namespace hcg;

namespace {

ZMat zmat(std::initializer_list<std::initializer_list<long>> rows) {
  int r = int(rows.size()), c = int(rows.begin()->size());
  ZMat m(r, c);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

ZMat random_zmat(Rng& g, int r, int c, long b) {
  ZMat m(r, c);
  for (auto& x : m.v) x = rand_int(g, -b, b);
  return m;
}

// printed matrices: columns generate

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("hnf of identity and of a small sublattice") {
  auto h = hnf(ZMat::identity(3));
  CHECK(h.H == ZMat::identity(3));
  CHECK(h.U == ZMat::identity(3));
  ZMat M = zmat({{2, 0, 1}, {0, 2, 1}});
  auto g = hnf(M);
  CHECK(g.rank == 2);
  CHECK(is_hnf(g.H));
  CHECK(M * g.U == g.H);
  CHECK(abs(det_bareiss(block(g.H, 0, 0, 2, 2))) == 2);
  CHECK(abs(det_bareiss(g.U)) == 1);
}

TEST_CASE("hnf is idempotent and reproduces the lattice") {
  Rng g(11);
  for (int it = 0; it < 200; ++it) {
    int r = int(rand_int(g, 1, 5)), c = int(rand_int(g, 1, 6));
    ZMat M = random_zmat(g, r, c, 9);
    auto h = hnf(M);
    CHECK(is_hnf(h.H));
    CHECK(M * h.U == h.H);
    CHECK(abs(det_bareiss(h.U)) == 1);
    CHECK(hnf(h.H).H == h.H);
    // kernel columns really are kernel vectors and have the right count
    ZMat K = int_kernel(M);
    CHECK(K.c == c - h.rank);
    CHECK((M * K).is_zero());
  }
}

TEST_CASE("zero matrix has zero normal form") {
  ZMat M(3, 2);
  auto h = hnf(M);
  CHECK(h.rank == 0);
  CHECK(h.H.is_zero());
}

TEST_CASE("determinants") {
  CHECK(det_rational(QMat::identity(4)) == 1);
  QMat d(3, 3);
  d(0, 0) = Q(1, 2), d(1, 1) = Q(1, 4), d(2, 2) = Q(1, 4);
  CHECK(det_rational(d) == Q(1, 32));
  Rng g(5);
  for (int it = 0; it < 40; ++it) {
    QMat M = to_q(random_zmat(g, 5, 5, 9));
    CHECK(det_rational(M) == det_cofactor(M));
    QMat N = to_q(random_zmat(g, 5, 5, 9));
    for (auto& x : N.v) x /= Q(rand_int(g, 1, 7));
    CHECK(det_rational(M * N) == det_rational(M) * det_rational(N));
  }
  CHECK_THROWS_AS(det_rational(QMat(2, 3)), Error);
}

TEST_CASE("lll preserves the lattice and reduces") {
  Rng g(7);
  for (int it = 0; it < 100; ++it) {
    int n = int(rand_int(g, 1, 5));
    ZMat B = random_zmat(g, n + int(rand_int(g, 0, 2)), n, 30);
    if (rank_q(to_q(B)) < n) continue;
    ZMat R = lll_reduce(B);
    CHECK(same_lattice(R, B));
    CHECK(is_lll_reduced(R));
  }
  ZMat D = zmat({{3, 0}, {0, 5}});
  CHECK(same_lattice(lll_reduce(D), D));
  ZMat L = lll_reduce(D);
  for (int j = 0; j < 2; ++j) {
    int nz = 0;
    for (int i = 0; i < 2; ++i) nz += L(i, j) != 0;
    CHECK(nz == 1);
  }
  CHECK_THROWS_AS(lll_reduce(zmat({{1, 2}, {2, 4}})), Error);
}

TEST_CASE("printed k-lattices reduce to the printed reduced bases") {
  // B, B' from the three examples that print them (rows are basis vectors)
  struct Case { ZMat B, Bp; };
  std::vector<Case> cases = {
      {zmat({{2, -2, -3, 4}, {4, -9, -10, 6}, {-4, 9, 12, -10}}), zmat({{2, 0, -1}, {-1, 2, -1}, {1, 2, 3}})},
      {zmat({{4, -37, 50, 9}, {4, -38, 53, 9}, {4, -40, 51, 9}}), zmat({{1, -1, 1}, {1, 2, 0}, {1, 0, -2}})},
      {zmat({{1, 3, -2, 3}, {1, 3, -2, 5}, {-19, -33, 26, -52}}), zmat({{-1, -2, 1}, {1, -2, 1}, {0, 2, 5}})},
  };
  for (auto& cs : cases) {
    ZMat B = cs.B, Bp = cs.Bp;
    CHECK(same_lattice(hnf_basis(B), Bp));
    ZMat R = lll_reduce(hnf_basis(B));
    CHECK(same_lattice(R, Bp));
  }
}

TEST_CASE("box points on the printed lattices") {
  auto t0 = std::chrono::steady_clock::now();
  ZMat small = zmat({{2, 0, -1}, {-1, 2, -1}, {1, 2, 3}});
  ZMat zn1 = zmat({{1, -1, 1}, {1, 2, 0}, {1, 0, -2}});
  ZMat hn = zmat({{-1, -2, 1}, {1, -2, 1}, {0, 2, 5}});
  ZVec zero(3);
  CHECK(box_points(small, zero, {{-1, 0, 1}, {-1, 1}, {-1, 1}}).empty());
  CHECK(box_points(zn1, zero, {{0}, {-1, 1}, {-1, 1}}).empty());
  auto pts = box_points(zn1, zero, {{-1, 1}, {-1, 1}, {-1, 1}});
  CHECK(std::find(pts.begin(), pts.end(), ZVec{1, 1, 1}) != pts.end());
  CHECK(std::find(pts.begin(), pts.end(), ZVec{-1, -1, -1}) != pts.end());
  CHECK(box_points(hn, zero, {{-1, 1}, {-1, 1}, {-1, 1}}).empty());
  CHECK(box_points(ZMat::identity(3), zero, {{0}, {0}, {0}}) == std::vector<ZVec>{zero});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 1.0);
}

TEST_CASE("box points agree with naive enumeration") {
  Rng g(3);
  for (int it = 0; it < 150; ++it) {
    int m = int(rand_int(g, 1, 3)), r = int(rand_int(g, 0, m));
    ZMat L = random_zmat(g, m, r, 5);
    if (r && rank_q(to_q(L)) < r) continue;
    ZVec shift(m);
    for (auto& x : shift) x = rand_int(g, -3, 3);
    Box boxes(m);
    for (auto& b : boxes) {
      long lo = rand_int(g, -4, 2);
      int cnt = int(rand_int(g, 1, 4));
      for (int k = 0; k < cnt; ++k) b.push_back(lo + rand_int(g, 0, 4));
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
    }
    auto fast = box_points(L, shift, boxes);
    auto slow = box_points_naive(L, shift, boxes, 10);
    // the naive search sees exactly the fast points whose coordinates fit its range
    std::vector<ZVec> visible;
    for (auto& v : fast) {
      ZVec d = v;
      for (int i = 0; i < m; ++i) d[i] -= shift[i];
      auto y = lattice_coords(L, d);
      REQUIRE(bool(y));
      bool fits = true;
      for (auto& c : *y) fits = fits && abs(c) <= 10;
      if (fits) visible.push_back(v);
    }
    CHECK(visible == slow);
  }
}

TEST_CASE("rank zero lattice") {
  ZMat L(2, 0);
  CHECK(box_points(L, {1, 2}, {{1}, {2, 3}}) == std::vector<ZVec>{{1, 2}});
  CHECK(box_points(L, {1, 2}, {{0}, {2}}).empty());
}

TEST_CASE("square classes") {
  CHECK(square_class(Q(1, 2), Ring::Q).rep == 2);
  CHECK(square_class(Q(18), Ring::Q).rep == 2);
  auto c5 = square_class(Q(18), Ring::Zp, 5);
  CHECK(c5.val == 0);
  CHECK(c5.unit == -1);
  CHECK(square_class(Q(-12), Ring::Q).rep == -3);
  CHECK(square_class(Q(3, 4), Ring::Z).rep == Q(3, 4));
  auto c2 = square_class(Q(24), Ring::Zp, 2);
  CHECK(c2.val == 3);
  CHECK(c2.unit == 3);
  CHECK_THROWS_AS(square_class(Q(0), Ring::Q), Error);
  Rng g(9);
  for (int it = 0; it < 200; ++it) {
    Q x(rand_int(g, 1, 500) * (rand_int(g, 0, 1) ? 1 : -1), rand_int(g, 1, 300));
    Q y(rand_int(g, 1, 500) * (rand_int(g, 0, 1) ? 1 : -1), rand_int(g, 1, 300));
    x.canonicalize(), y.canonicalize();
    for (Ring rg : {Ring::Q, Ring::Z}) CHECK(square_class(x * y, rg) == square_class(x, rg) * square_class(y, rg));
    for (long p : {2L, 3L, 5L, 7L})
      CHECK(square_class(x * y, Ring::Zp, p) == square_class(x, Ring::Zp, p) * square_class(y, Ring::Zp, p));
  }
}

}
