#include "brauer/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "lattice/linalg.hpp"

namespace hcg {

FiniteGroup make_group(std::vector<std::vector<int>> table) {
  FiniteGroup G;
  G.order = int(table.size());
  require(G.order > 0, Code::validation, "group: empty multiplication table");
  for (auto& row : table) {
    require(int(row.size()) == G.order, Code::validation, "group: multiplication table is not square");
    for (int x : row) require(x >= 0 && x < G.order, Code::validation, "group: table entry out of range");
  }
  int n = G.order;
  for (int a = 0; a < n; ++a)
    require(table[0][a] == a && table[a][0] == a, Code::validation, "group: element 0 is not the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        require(table[table[a][b]][c] == table[a][table[b][c]], Code::validation,
                "group: not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                    std::to_string(c) + ")");
  G.inv.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == 0) {
        G.inv[a] = b;
        break;
      }
    require(G.inv[a] >= 0 && table[G.inv[a]][a] == 0, Code::validation,
            "group: element " + std::to_string(a) + " has no inverse");
  }
  G.mul = std::move(table);
  return G;
}

namespace {

using Word = std::vector<int>;

// closure of generators under a composition law; identity listed first
FiniteGroup closure(const Word& id, const std::vector<Word>& gens, const std::function<Word(const Word&, const Word&)>& op,
                    std::vector<Word>* out) {
  std::vector<Word> el{id};
  std::map<Word, int> idx{{id, 0}};
  for (size_t i = 0; i < el.size(); ++i)
    for (auto& g : gens) {
      Word w = op(el[i], g);
      if (!idx.count(w)) {
        require(el.size() < 5000, Code::unsupported, "group closure: more than 5000 elements");
        idx[w] = int(el.size());
        el.push_back(w);
      }
    }
  int n = int(el.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = idx.at(op(el[a], el[b]));
  if (out) *out = el;
  return make_group(std::move(t));
}

Word compose(const Word& a, const Word& b) {  // (ab)(x) = a(b(x))
  Word c(b.size());
  for (size_t x = 0; x < b.size(); ++x) c[x] = a[b[x]];
  return c;
}

Word identity_perm(int n) {
  Word w(n);
  for (int i = 0; i < n; ++i) w[i] = i;
  return w;
}

}  // namespace

FiniteGroup perm_group(const std::vector<std::vector<int>>& gens, std::vector<std::vector<int>>* elems) {
  require(!gens.empty(), Code::validation, "permutation group: no generators");
  size_t n = gens[0].size();
  for (auto& g : gens) {
    require(g.size() == n, Code::validation, "permutation group: generators act on different sets");
    Word s = g;
    std::sort(s.begin(), s.end());
    require(s == identity_perm(int(n)), Code::validation, "permutation group: generator is not a permutation");
  }
  return closure(identity_perm(int(n)), gens, compose, elems);
}

FiniteGroup cyclic_group(int n) {
  require(n >= 1, Code::domain, "cyclic group of order < 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return make_group(t);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  int n = a.order * b.order;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = a(x / b.order, y / b.order) * b.order + b(x % b.order, y % b.order);
  return make_group(t);
}

FiniteGroup dihedral_group(int n) {
  // r^i s^a, index 2i + a
  int N = 2 * n;
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      int i = x / 2, a = x % 2, k = y / 2, b = y % 2;
      int j = ((i + (a ? -k : k)) % n + n) % n;
      t[x][y] = 2 * j + ((a + b) % 2);
    }
  return make_group(t);
}

FiniteGroup dicyclic_group(int n) {
  // a^i x^j, a of order 2n, x^2 = a^n, x a x^-1 = a^-1
  int m = 2 * n, N = 4 * n;
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) {
      int i = p / 2, j = p % 2, k = q / 2, l = q % 2;
      int e = i + (j ? -k : k);
      int f = j + l;
      if (f == 2) e += n, f = 0;
      e = ((e % m) + m) % m;
      t[p][q] = 2 * e + f;
    }
  return make_group(t);
}

FiniteGroup quaternion_group() { return dicyclic_group(2); }

FiniteGroup symmetric_group(int n) {
  require(n >= 1, Code::domain, "symmetric group of degree < 1");
  if (n == 1) return cyclic_group(1);
  Word t = identity_perm(n), c(n);
  std::swap(t[0], t[1]);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return perm_group({t, c});
}

FiniteGroup alternating_group(int n) {
  require(n >= 1, Code::domain, "alternating group of degree < 1");
  if (n < 3) return cyclic_group(1);
  std::vector<Word> gens;
  for (int k = 2; k < n; ++k) {
    Word w = identity_perm(n);
    w[0] = 1, w[1] = k, w[k] = 0;
    gens.push_back(w);
  }
  return perm_group(gens);
}

FiniteGroup sl2_3() {
  auto mm = [](const Word& a, const Word& b) {
    return Word{(a[0] * b[0] + a[1] * b[2]) % 3, (a[0] * b[1] + a[1] * b[3]) % 3, (a[2] * b[0] + a[3] * b[2]) % 3,
                (a[2] * b[1] + a[3] * b[3]) % 3};
  };
  return closure({1, 0, 0, 1}, {{1, 1, 0, 1}, {0, 2, 1, 0}}, mm, nullptr);
}

void check_subgroup(const FiniteGroup& G, const Subgroup& H) {
  require(!H.empty() && std::is_sorted(H.begin(), H.end()), Code::validation, "subgroup: elements must be sorted");
  require(std::adjacent_find(H.begin(), H.end()) == H.end(), Code::validation, "subgroup: repeated element");
  for (int h : H) require(h >= 0 && h < G.order, Code::validation, "subgroup: element out of range");
  for (int a : H) {
    require(std::binary_search(H.begin(), H.end(), G.inv[a]), Code::validation, "subgroup: not closed under inverse");
    for (int b : H)
      require(std::binary_search(H.begin(), H.end(), G(a, b)), Code::validation, "subgroup: not closed under product");
  }
}

Subgroup generated(const FiniteGroup& G, const std::vector<int>& gens) {
  std::vector<char> in(G.order, 0);
  std::vector<int> el{0};
  in[0] = 1;
  for (size_t i = 0; i < el.size(); ++i)
    for (int g : gens) {
      int x = G(el[i], g);
      if (!in[x]) in[x] = 1, el.push_back(x);
    }
  std::sort(el.begin(), el.end());
  return el;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& G) {
  std::set<Subgroup> S;
  for (int g = 0; g < G.order; ++g) S.insert(generated(G, {g}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subgroup> cur(S.begin(), S.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<int> gens = cur[i];
        gens.insert(gens.end(), cur[j].begin(), cur[j].end());
        if (S.insert(generated(G, gens)).second) grew = true;
      }
  }
  std::vector<Subgroup> out(S.begin(), S.end());
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return a.size() < b.size(); });
  return out;
}

Subgroup conjugate(const FiniteGroup& G, const Subgroup& H, int g) {
  Subgroup K;
  for (int h : H) K.push_back(G(G(g, h), G.inv[g]));
  std::sort(K.begin(), K.end());
  return K;
}

std::vector<Subgroup> subgroup_classes(const FiniteGroup& G) {
  std::vector<Subgroup> out;
  std::set<Subgroup> seen;
  for (auto& H : all_subgroups(G)) {
    if (seen.count(H)) continue;
    out.push_back(H);
    for (int g = 0; g < G.order; ++g) seen.insert(conjugate(G, H, g));
  }
  return out;
}

Cosets left_cosets(const FiniteGroup& G, const Subgroup& H) {
  Cosets c;
  c.coset_of.assign(G.order, -1);
  for (int g = 0; g < G.order; ++g) {
    if (c.coset_of[g] >= 0) continue;
    int id = int(c.reps.size());
    c.reps.push_back(g);
    for (int h : H) c.coset_of[G(g, h)] = id;
  }
  return c;
}

void check_rep(const FiniteGroup& G, const RationalRep& V) {
  require(int(V.rho.size()) == G.order, Code::validation, "representation: need one matrix per group element");
  for (auto& m : V.rho)
    require(m.r == V.degree && m.c == V.degree, Code::validation, "representation: matrix has the wrong size");
  require(V.rho[0] == QMat::identity(V.degree), Code::validation, "representation: identity does not act trivially");
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b)
      require(V.rho[a] * V.rho[b] == V.rho[G(a, b)], Code::validation,
              "representation: not a homomorphism at (" + std::to_string(a) + "," + std::to_string(b) + ")");
}

RationalRep trivial_rep(const FiniteGroup& G, int copies) {
  RationalRep V;
  V.degree = copies;
  V.rho.assign(G.order, QMat::identity(copies));
  return V;
}

RationalRep permutation_rep(const FiniteGroup& G, const Subgroup& H) {
  auto cs = left_cosets(G, H);
  int n = int(cs.reps.size());
  RationalRep V;
  V.degree = n;
  V.rho.resize(G.order);
  for (int g = 0; g < G.order; ++g) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m(cs.coset_of[G(g, cs.reps[i])], i) = 1;
    V.rho[g] = m;
  }
  return V;
}

RationalRep regular_rep(const FiniteGroup& G) { return permutation_rep(G, {0}); }

RationalRep direct_sum(const RationalRep& a, const RationalRep& b) {
  require(a.rho.size() == b.rho.size(), Code::dimension, "direct sum of representations of different groups");
  RationalRep V;
  V.degree = a.degree + b.degree;
  for (size_t g = 0; g < a.rho.size(); ++g) {
    QMat m(V.degree, V.degree);
    for (int i = 0; i < a.degree; ++i)
      for (int j = 0; j < a.degree; ++j) m(i, j) = a.rho[g](i, j);
    for (int i = 0; i < b.degree; ++i)
      for (int j = 0; j < b.degree; ++j) m(a.degree + i, a.degree + j) = b.rho[g](i, j);
    V.rho.push_back(m);
  }
  return V;
}

RationalRep conjugate_rep(const RationalRep& V, const QMat& P) {
  QMat Pi = inverse(P);
  RationalRep W = V;
  for (auto& m : W.rho) m = P * m * Pi;
  return W;
}

RationalRep subrep(const RationalRep& V, const QMat& B) {
  require(B.r == V.degree && rank_q(B) == B.c, Code::rank, "subrepresentation: basis is not independent");
  QMat Bt = B.transpose();
  QMat L = inverse(Bt * B) * Bt;
  RationalRep W;
  W.degree = B.c;
  for (auto& m : V.rho) {
    QMat img = m * B, r = L * img;
    require(B * r == img, Code::validation, "subrepresentation: subspace is not G-stable");
    W.rho.push_back(r);
  }
  return W;
}

RationalRep augmentation_rep(const FiniteGroup& G, const Subgroup& H) {
  auto P = permutation_rep(G, H);
  int n = P.degree;
  require(n >= 2, Code::domain, "augmentation of a one-point G-set is zero");
  QMat B(n, n - 1);
  for (int i = 1; i < n; ++i) B(0, i - 1) = 1, B(i, i - 1) = -1;
  return subrep(P, B);
}

RationalRep sign_rep(const FiniteGroup& G, const Subgroup& K) {
  check_subgroup(G, K);
  require(2 * int(K.size()) == G.order, Code::domain, "sign representation needs a subgroup of index 2");
  RationalRep V;
  V.degree = 1;
  for (int g = 0; g < G.order; ++g) {
    QMat m(1, 1);
    m(0, 0) = std::binary_search(K.begin(), K.end(), g) ? 1 : -1;
    V.rho.push_back(m);
  }
  return V;
}

ZMat fixed_basis(const RationalRep& V, const Subgroup& H) {
  int n = V.degree;
  QMat S(0, n);
  for (int h : H) {
    if (h == 0) continue;
    S = vcat(S, V.rho[h] - QMat::identity(n));
  }
  if (S.r == 0) return ZMat::identity(n);
  return int_kernel(clear_rows(S));
}

QMat random_invariant_pairing(const FiniteGroup&, const RationalRep& V, Rng& rng, bool definite) {
  int n = V.degree;
  for (int tries = 0; tries < 64; ++tries) {
    QMat M(n, n);
    if (definite) {
      QMat A(n, n);
      for (auto& x : A.v) x = rand_int(rng, -3, 3);
      M = A.transpose() * A + QMat::identity(n);
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) M(i, j) = M(j, i) = rand_int(rng, -4, 4);
    }
    QMat S(n, n);
    for (auto& r : V.rho) S = S + r.transpose() * M * r;
    if (det_rational(S) != 0) return S;
  }
  fail(Code::undecided, "no non-degenerate invariant pairing found in 64 attempts");
}

void check_pairing(const FiniteGroup& G, const RationalRep& V, const QMat& B) {
  require(B.r == V.degree && B.c == V.degree, Code::dimension, "pairing: Gram matrix has the wrong size");
  require(det_rational(B) != 0, Code::validation, "pairing is degenerate");
  for (int g = 0; g < G.order; ++g)
    require(V.rho[g].transpose() * B * V.rho[g] == B, Code::validation,
            "pairing is not G-invariant (element " + std::to_string(g) + ")");
}

}  // namespace hcg
