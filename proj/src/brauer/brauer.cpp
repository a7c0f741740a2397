#include "brauer/brauer.hpp"

#include <algorithm>
#include <map>

#include "lattice/linalg.hpp"

namespace hcg {

namespace {

bool has(const Subgroup& H, int x) { return std::binary_search(H.begin(), H.end(), x); }

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  Subgroup c;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
  return c;
}

QMat coords_in(const QMat& B, const QMat& X, const char* what) {
  // B full column rank; solve B Y = X
  QMat Y(B.c, X.c);
  for (int j = 0; j < X.c; ++j) {
    auto y = solve(B, X.col(j));
    require(bool(y), Code::validation, what);
    Y.set_col(j, *y);
  }
  return Y;
}

}  // namespace

std::vector<DoubleCoset> double_cosets(const FiniteGroup& G, const Subgroup& H, const Subgroup& Hp) {
  check_subgroup(G, H);
  check_subgroup(G, Hp);
  std::vector<char> seen(G.order, 0);
  std::vector<DoubleCoset> out;
  for (int g = 0; g < G.order; ++g) {
    if (seen[g]) continue;
    DoubleCoset d;
    d.g = g;
    for (int a : Hp)
      for (int b : H) {
        int x = G(G(a, g), b);
        if (!seen[x]) seen[x] = 1, d.elems.push_back(x);
      }
    std::sort(d.elems.begin(), d.elems.end());
    Subgroup K = intersect(Hp, conjugate(G, H, g));
    std::vector<char> used(G.order, 0);
    for (int u : Hp) {
      if (used[u]) continue;
      d.us.push_back(u);
      for (int k : K) used[G(u, k)] = 1;
    }
    out.push_back(std::move(d));
  }
  return out;
}

QMat hecke_matrix(const FiniteGroup& G, const Subgroup& H, const Subgroup& Hp, int g, const RationalRep& V) {
  return hecke_matrix(G, H, Hp, g, V, to_q(fixed_basis(V, H)), to_q(fixed_basis(V, Hp)));
}

QMat hecke_matrix(const FiniteGroup& G, const Subgroup& H, const Subgroup& Hp, int g, const RationalRep& V,
                  const QMat& BH, const QMat& BHp) {
  Subgroup K = intersect(Hp, conjugate(G, H, g));
  std::vector<char> used(G.order, 0);
  QMat S(V.degree, V.degree);
  for (int u : Hp) {
    if (used[u]) continue;
    for (int k : K) used[G(u, k)] = 1;
    S = S + V.rho[G(u, g)];
  }
  return coords_in(BHp, S * BH, "hecke operator leaves the fixed subspace");
}

std::vector<std::pair<int, Z>> hecke_product(const FiniteGroup& G, const Subgroup& H, int g1, int g2) {
  auto cs = left_cosets(G, H);
  auto dcs = double_cosets(G, H, H);
  auto cosets_in = [&](int g) {
    std::vector<int> reps;
    for (auto& d : dcs)
      if (has(d.elems, g)) {
        std::vector<char> s(cs.reps.size(), 0);
        for (int x : d.elems)
          if (!s[cs.coset_of[x]]) s[cs.coset_of[x]] = 1, reps.push_back(cs.reps[cs.coset_of[x]]);
      }
    return reps;
  };
  auto X = cosets_in(g1), Y = cosets_in(g2);
  std::vector<Z> count(cs.reps.size(), 0);
  for (int x : X)
    for (int y : Y) count[cs.coset_of[G(x, y)]] += 1;
  std::vector<std::pair<int, Z>> out;
  for (auto& d : dcs) {
    Z c = count[cs.coset_of[d.g]];
    for (int x : d.elems) require(count[cs.coset_of[x]] == c, Code::validation, "hecke product: coefficient not constant");
    if (c != 0) out.push_back({d.g, c});
  }
  return out;
}

std::vector<long> perm_character(const FiniteGroup& G, const GSetSum& S) {
  std::vector<long> chi(G.order, 0);
  for (auto& H : S) {
    check_subgroup(G, H);
    auto cs = left_cosets(G, H);
    for (int g = 0; g < G.order; ++g)
      for (int x : cs.reps)
        if (has(H, G(G(G.inv[x], g), x))) ++chi[g];
  }
  return chi;
}

RationalRep gset_module(const FiniteGroup& G, const GSetSum& S) {
  require(!S.empty(), Code::validation, "empty G-set");
  RationalRep V = permutation_rep(G, S[0]);
  for (size_t i = 1; i < S.size(); ++i) V = direct_sum(V, permutation_rep(G, S[i]));
  return V;
}

std::vector<QMat> hom_basis(const FiniteGroup& G, const GSetSum& S1, const GSetSum& S2) {
  std::vector<Cosets> c1, c2;
  std::vector<int> o1{0}, o2{0};
  for (auto& H : S1) c1.push_back(left_cosets(G, H)), o1.push_back(o1.back() + int(c1.back().reps.size()));
  for (auto& H : S2) c2.push_back(left_cosets(G, H)), o2.push_back(o2.back() + int(c2.back().reps.size()));
  std::vector<QMat> out;
  for (size_t i = 0; i < S1.size(); ++i)
    for (size_t j = 0; j < S2.size(); ++j) {
      int n1 = int(c1[i].reps.size()), n2 = int(c2[j].reps.size());
      std::vector<int> orbit(size_t(n1) * n2, -1);
      int norb = 0;
      for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n2; ++b) {
          if (orbit[size_t(a) * n2 + b] >= 0) continue;
          for (int g = 0; g < G.order; ++g) {
            int ga = c1[i].coset_of[G(g, c1[i].reps[a])], gb = c2[j].coset_of[G(g, c2[j].reps[b])];
            orbit[size_t(ga) * n2 + gb] = norb;
          }
          ++norb;
        }
      for (int o = 0; o < norb; ++o) {
        QMat X(o1.back(), o2.back());
        for (int a = 0; a < n1; ++a)
          for (int b = 0; b < n2; ++b)
            if (orbit[size_t(a) * n2 + b] == o) X(o1[i] + a, o2[j] + b) = 1;
        out.push_back(X);
      }
    }
  return out;
}

BrauerCheck is_brauer_relation(const FiniteGroup& G, const GSetSum& S1, const GSetSum& S2, Rng& rng) {
  BrauerCheck r;
  auto basis = hom_basis(G, S1, S2);
  int n1 = basis.empty() ? 0 : basis[0].r, n2 = basis.empty() ? 0 : basis[0].c;
  auto sample = [&](long range) {
    QMat X(n1, n2);
    for (auto& B : basis) X = X + scale(B, Q(rand_int(rng, -range, range)));
    return X;
  };
  if (n1 == n2 && !basis.empty()) {
    for (; r.attempts < 32; ++r.attempts) {
      QMat X = sample(5);
      if (det_rational(X) != 0) {
        r.relation = true, r.witness = X, r.rule = "invertible equivariant map found";
        return r;
      }
    }
  }
  auto x1 = perm_character(G, S1), x2 = perm_character(G, S2);
  if (x1 != x2) {
    r.rule = "permutation characters differ";
    return r;
  }
  // equal characters: the modules are isomorphic, so keep sampling
  for (long range = 50; r.attempts < 4096; ++r.attempts, range = std::min(range * 2, 1L << 40)) {
    QMat X = sample(range);
    if (det_rational(X) != 0) {
      r.relation = true, r.witness = X, r.rule = "permutation characters agree; invertible map found";
      return r;
    }
  }
  fail(Code::undecided, "permutation characters agree but no invertible map was sampled");
}

std::vector<std::pair<GSetSum, GSetSum>> brauer_relations(const FiniteGroup& G) {
  auto cls = subgroup_classes(G);
  int m = int(cls.size());
  ZMat A(G.order, m);
  for (int j = 0; j < m; ++j) {
    auto chi = perm_character(G, {cls[j]});
    for (int g = 0; g < G.order; ++g) A(g, j) = chi[g];
  }
  ZMat K = int_kernel(A);
  std::vector<std::pair<GSetSum, GSetSum>> out;
  for (int c = 0; c < K.c; ++c) {
    GSetSum S1, S2;
    for (int j = 0; j < m; ++j) {
      long e = K(j, c).get_si();
      for (long k = 0; k < std::abs(e); ++k) (e > 0 ? S1 : S2).push_back(cls[j]);
    }
    out.push_back({S1, S2});
  }
  return out;
}

namespace {

Q sum_gram_dets(const QMat& M, const RationalRep& V, const GSetSum& S, int& dim) {
  Q d = 1;
  dim = 0;
  for (auto& H : S) {
    ZMat B = fixed_basis(V, H);
    dim += B.c;
    QMat Bq = to_q(B);
    Q g = det_rational(Bq.transpose() * M * Bq);
    for (int i = 0; i < B.c; ++i) g /= long(H.size());
    d *= g;
  }
  return d;
}

bool integral(const RationalRep& V) {
  for (auto& m : V.rho)
    for (auto& x : m.v)
      if (x.get_den() != 1) return false;
  return true;
}

}  // namespace

RegConst regconst_brauer(const FiniteGroup& G, const GSetSum& S1, const GSetSum& S2, const RationalRep& V,
                         const std::optional<QMat>& pairing, Rng& rng, Ring ring, const Z& p) {
  check_rep(G, V);
  for (auto& H : S1) check_subgroup(G, H);
  for (auto& H : S2) check_subgroup(G, H);
  require(perm_character(G, S1) == perm_character(G, S2), Code::validation, "not a Brauer relation");
  if (ring != Ring::Q) require(integral(V), Code::domain, "integral regulator constant needs an integral representation");
  QMat M = pairing ? *pairing : random_invariant_pairing(G, V, rng);
  check_pairing(G, V, M);
  int d1, d2;
  Q a = sum_gram_dets(M, V, S1, d1), b = sum_gram_dets(M, V, S2, d2);
  require(d1 == d2, Code::validation, "fixed-point dimensions differ");
  RegConst r;
  r.value = a / b;
  r.dim = d1;
  r.cls = square_class(r.value, ring, p);
  return r;
}

QMat induced_map(const FiniteGroup& G, const GSetSum& S1, const GSetSum& S2, const QMat& X, const RationalRep& V) {
  std::vector<Cosets> c1;
  std::vector<int> o1{0}, o2{0};
  for (auto& H : S1) c1.push_back(left_cosets(G, H)), o1.push_back(o1.back() + int(c1.back().reps.size()));
  for (auto& H : S2) o2.push_back(o2.back() + int(G.order / H.size()));
  require(X.r == o1.back() && X.c == o2.back(), Code::dimension, "induced map: witness has the wrong shape");
  std::vector<QMat> B1, B2;
  int d1 = 0, d2 = 0;
  for (auto& H : S1) B1.push_back(to_q(fixed_basis(V, H))), d1 += B1.back().c;
  for (auto& H : S2) B2.push_back(to_q(fixed_basis(V, H))), d2 += B2.back().c;
  QMat T(d2, d1);
  int col = 0;
  for (size_t i = 0; i < S1.size(); ++i)
    for (int k = 0; k < B1[i].c; ++k, ++col) {
      QVec v = B1[i].col(k);
      int row = 0;
      for (size_t j = 0; j < S2.size(); ++j) {
        // f(X e_{1 H'_j}) with f(e_{xH_i}) = x v; coset 0 of G/H'_j is H'_j itself
        QVec w(V.degree);
        for (int a = 0; a < int(c1[i].reps.size()); ++a) {
          const Q& x = X(o1[i] + a, o2[j]);
          if (x == 0) continue;
          QVec xv = mat_vec(V.rho[c1[i].reps[a]], v);
          for (int t = 0; t < V.degree; ++t) w[t] += x * xv[t];
        }
        auto y = solve(B2[j], w);
        require(bool(y), Code::validation, "induced map: image is not fixed");
        for (int t = 0; t < B2[j].c; ++t) T(row + t, col) = (*y)[t];
        row += B2[j].c;
      }
    }
  return T;
}

SquareClass adjoint_pair_invariant(const QMat& phi, const QMat& phistar, Ring ring, const Z& p) {
  require(phi.r == phi.c && phistar.r == phistar.c && phi.r == phistar.r, Code::dimension,
          "adjoint pair: maps must be square of the same size");
  Q a = det_rational(phi), b = det_rational(phistar);
  require(a != 0 && b != 0, Code::rank, "adjoint pair: map is not an isogeny");
  return square_class(a / b, ring, p);
}

}  // namespace hcg
