#include <doctest.h>

#include <map>
#include <set>

#include "brauer/brauer.hpp"
#include "brauer/catalog.hpp"
#include "lattice/linalg.hpp"

using namespace hcg;

namespace {

QMat hom_check(const FiniteGroup& G, const GSetSum& S1, const GSetSum& S2, const QMat& X) {
  auto M1 = gset_module(G, S1), M2 = gset_module(G, S2);
  for (int g = 0; g < G.order; ++g) REQUIRE(M1.rho[g] * X == X * M2.rho[g]);
  return X;
}

}  // namespace

TEST_SUITE("brauer") {

TEST_CASE("group tables") {
  CHECK(dihedral_group(4).order == 8);
  CHECK(quaternion_group().order == 8);
  CHECK(dicyclic_group(3).order == 12);
  CHECK(symmetric_group(4).order == 24);
  CHECK(alternating_group(4).order == 12);
  CHECK(sl2_3().order == 24);
  std::map<std::string, size_t> nsub{{"S3", 6}, {"D4", 10}, {"Q8", 6}, {"A4", 10}, {"C2^3", 16}, {"D6", 16}};
  for (auto& [name, G] : small_groups())
    if (nsub.count(name)) CHECK_MESSAGE(all_subgroups(G).size() == nsub[name], name);
  CHECK(all_subgroups(symmetric_group(4)).size() == 30);
  CHECK(all_subgroups(sl2_3()).size() == 15);
  CHECK(subgroup_classes(symmetric_group(4)).size() == 11);
  // Q8 has a unique involution
  auto Q8 = quaternion_group();
  int inv = 0;
  for (int g = 1; g < 8; ++g) inv += Q8(g, g) == 0;
  CHECK(inv == 1);

  auto t = cyclic_group(3).mul;
  t[1][2] = 1;
  CHECK_THROWS_AS(make_group(t), Error);
  CHECK_THROWS_AS(check_subgroup(symmetric_group(3), {0, 1, 2}), Error);
}

TEST_CASE("double cosets") {
  auto C2 = cyclic_group(2);
  CHECK(double_cosets(C2, {0}, {0}).size() == 2);
  auto S3 = symmetric_group(3);
  Subgroup H;
  for (auto& K : all_subgroups(S3))
    if (K.size() == 2) H = K;
  CHECK(double_cosets(S3, H, H).size() == 2);
  auto V4 = direct_product(C2, C2);
  CHECK(double_cosets(V4, {0}, {0, 1, 2, 3}).size() == 1);
  // the double cosets partition G and each splits into #us left cosets of H
  for (auto& [name, G] : small_groups()) {
    auto subs = all_subgroups(G);
    for (size_t a = 0; a < subs.size(); a += 3)
      for (size_t b = 0; b < subs.size(); b += 2) {
        auto ds = double_cosets(G, subs[a], subs[b]);
        size_t tot = 0;
        for (auto& d : ds) {
          tot += d.elems.size();
          CHECK(d.elems.size() == d.us.size() * subs[a].size());
        }
        CHECK(tot == size_t(G.order));
      }
  }
}

TEST_CASE("hecke operator examples") {
  auto C2 = cyclic_group(2);
  auto R = regular_rep(C2);
  CHECK(hecke_matrix(C2, {0}, {0}, 1, R) == R.rho[1]);
  auto S3 = symmetric_group(3);
  for (auto& H : all_subgroups(S3)) {
    auto V = regular_rep(S3);
    int d = fixed_basis(V, H).c;
    CHECK(hecke_matrix(S3, H, H, 0, V) == QMat::identity(d));
  }
  auto V4 = direct_product(C2, C2);
  auto T = trivial_rep(V4);
  auto subs = all_subgroups(V4);
  for (auto& H : subs)
    for (auto& Hp : subs)
      for (int g = 0; g < 4; ++g) {
        QMat m = hecke_matrix(V4, H, Hp, g, T);
        // #(H' / (H' cap H)) for abelian groups
        std::set<int> inter;
        for (int x : H)
          if (std::binary_search(Hp.begin(), Hp.end(), x)) inter.insert(x);
        CHECK(m(0, 0) == Q(long(Hp.size() / inter.size())));
      }
}

TEST_CASE("hecke algebra products match double coset multiplication") {
  Rng rng(11);
  for (auto& [name, G] : small_groups()) {
    if (G.order > 12) continue;
    auto subs = all_subgroups(G);
    RationalRep V = direct_sum(regular_rep(G), random_rep(G, rng, false));
    for (auto& H : subs) {
      if (H.size() == size_t(G.order)) continue;
      auto dcs = double_cosets(G, H, H);
      QMat B = to_q(fixed_basis(V, H));
      std::map<int, QMat> T;
      for (auto& d : dcs) T[d.g] = hecke_matrix(G, H, H, d.g, V, B, B);
      for (auto& a : dcs)
        for (auto& b : dcs) {
          QMat sum(B.c, B.c);
          for (auto& [z, c] : hecke_product(G, H, a.g, b.g)) sum = sum + scale(T.at(z), Q(c));
          CHECK_MESSAGE(T[a.g] * T[b.g] == sum, name);
        }
    }
  }
}

TEST_CASE("adjointness of T_{H'gH} and T_{Hg^-1H'}, exhaustive on groups of order <= 16") {
  Rng rng(5);
  long checked = 0;
  for (auto& [name, G] : small_groups()) {
    REQUIRE(G.order <= 16);
    auto subs = all_subgroups(G);
    std::vector<RationalRep> reps{random_rep(G, rng, false)};
    if (G.order <= 8) reps.push_back(regular_rep(G));
    for (auto& V : reps) {
      QMat M = random_invariant_pairing(G, V, rng, false);
      std::vector<QMat> B, Gram;
      for (auto& H : subs) {
        B.push_back(to_q(fixed_basis(V, H)));
        Gram.push_back(scale(B.back().transpose() * M * B.back(), Q(1, long(H.size()))));
      }
      for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = 0; j < subs.size(); ++j)
          for (auto& d : double_cosets(G, subs[i], subs[j])) {
            QMat A = hecke_matrix(G, subs[i], subs[j], d.g, V, B[i], B[j]);
            QMat As = hecke_matrix(G, subs[j], subs[i], G.inv[d.g], V, B[j], B[i]);
            // <T v, v'>_{H'} = <v, T* v'>_H for all basis vectors v, v'
            bool ok = A.transpose() * Gram[j] == Gram[i] * As;
            if (!ok) CHECK_MESSAGE(ok, name << " H" << i << " H'" << j << " g" << d.g);
            ++checked;
          }
    }
  }
  MESSAGE("adjoint pairs checked: " << checked);
  CHECK(checked > 1000);
}

TEST_CASE("Brauer relation detection") {
  Rng rng(3);
  auto C2 = cyclic_group(2);
  auto V4 = direct_product(C2, C2);
  auto r = is_brauer_relation(V4, {{0, 1}}, {{0, 1}}, rng);
  CHECK(r.relation);
  Subgroup G4{0, 1, 2, 3};
  GSetSum S1{{0}, G4, G4}, S2{{0, 1}, {0, 2}, {0, 3}};
  auto v = is_brauer_relation(V4, S1, S2, rng);
  REQUIRE(v.relation);
  hom_check(V4, S1, S2, *v.witness);
  CHECK(det_rational(*v.witness) != 0);
  auto n = is_brauer_relation(C2, {{0}}, {{0, 1}}, rng);
  CHECK_FALSE(n.relation);
  CHECK(n.rule == "permutation characters differ");
  // same dimension, different modules
  auto C4 = cyclic_group(4);
  CHECK_FALSE(is_brauer_relation(C4, {{0, 2}, {0, 2}}, {{0}}, rng).relation);

  for (auto& [name, G] : small_groups()) {
    auto rels = brauer_relations(G);
    bool cyclic = false;
    for (int g = 0; g < G.order; ++g) cyclic |= generated(G, {g}).size() == size_t(G.order);
    CHECK_MESSAGE(rels.empty() == cyclic, name);  // only cyclic groups have no relations
    for (auto& [A, B] : rels) {
      auto c = is_brauer_relation(G, A, B, rng);
      REQUIRE(c.relation);
      hom_check(G, A, B, *c.witness);
    }
  }
}

TEST_CASE("regulator constants: examples") {
  Rng rng(9);
  auto C2 = cyclic_group(2);
  auto V4 = direct_product(C2, C2);
  Subgroup G4{0, 1, 2, 3};
  GSetSum S1{{0}, G4, G4}, S2{{0, 1}, {0, 2}, {0, 3}};
  auto triv = regconst_brauer(V4, S1, S2, trivial_rep(V4), std::nullopt, rng);
  CHECK(triv.value == Q(1, 2));
  CHECK(triv.cls.rep == 2);
  CHECK(regconst_brauer(V4, S1, S1, regular_rep(V4), std::nullopt, rng).cls.is_trivial());
  // regular representation = sum of the four characters
  SquareClass prod = square_class(1, Ring::Q);
  prod = prod * triv.cls;
  for (auto K : {Subgroup{0, 1}, Subgroup{0, 2}, Subgroup{0, 3}})
    prod = prod * regconst_brauer(V4, S1, S2, sign_rep(V4, K), std::nullopt, rng).cls;
  CHECK(regconst_brauer(V4, S1, S2, regular_rep(V4), std::nullopt, rng).cls == prod);
  // an explicit pairing must be invariant and non-degenerate
  auto R = regular_rep(V4);
  QMat bad = QMat::identity(4);
  bad(0, 1) = bad(1, 0) = 1;
  CHECK_THROWS_AS(regconst_brauer(V4, S1, S2, R, bad, rng), Error);
  CHECK_THROWS_AS(regconst_brauer(V4, S1, S2, R, QMat(4, 4), rng), Error);
  CHECK_THROWS_AS(regconst_brauer(V4, S1, {{0, 1}}, R, std::nullopt, rng), Error);
  RationalRep broken = R;
  broken.rho[1] = R.rho[2];
  CHECK_THROWS_AS(check_rep(V4, broken), Error);
}

TEST_CASE("regulator constants are independent of the pairing") {
  Rng rng(2024);
  std::vector<NamedGroup> gs = small_groups();
  gs.push_back({"S4", symmetric_group(4)});
  gs.push_back({"SL(2,3)", sl2_3()});
  gs.push_back({"C2xA4", direct_product(cyclic_group(2), alternating_group(4))});
  int cases = 0;
  for (auto& [name, G] : gs) {
    REQUIRE(G.order <= 24);
    auto rels = brauer_relations(G);
    if (rels.empty()) continue;
    for (int k = 0; k < 2; ++k) {
      auto& [S1, S2] = rels[size_t(rand_int(rng, 0, long(rels.size()) - 1))];
      bool integral = k == 1;
      RationalRep V = random_rep(G, rng, integral);
      auto ref = regconst_brauer(G, S1, S2, V, std::nullopt, rng, integral ? Ring::Z : Ring::Q);
      for (int t = 0; t < 6; ++t) {
        QMat M = random_invariant_pairing(G, V, rng, t % 2 == 0);
        auto c = regconst_brauer(G, S1, S2, V, M, rng, integral ? Ring::Z : Ring::Q);
        CHECK_MESSAGE(c.cls == ref.cls, name << " " << c.cls.str() << " vs " << ref.cls.str());
      }
      // the same number as det(T) / det(T*) for an isogeny T
      auto w = is_brauer_relation(G, S1, S2, rng);
      REQUIRE(w.relation);
      QMat X = *w.witness;
      QMat T = induced_map(G, S1, S2, X, V), Ts = induced_map(G, S2, S1, X.transpose(), V);
      CHECK(adjoint_pair_invariant(T, Ts) == square_class(ref.value, Ring::Q));
      CHECK(det_rational(T) / det_rational(Ts) == ref.value);
      ++cases;
    }
  }
  MESSAGE("cases: " << cases);
  CHECK(cases >= 20);
}

TEST_CASE("regulator constants are multiplicative over direct sums") {
  Rng rng(77);
  for (auto G : {symmetric_group(3), dihedral_group(4), alternating_group(4)}) {
    auto rels = brauer_relations(G);
    auto& [S1, S2] = rels[0];
    auto V = random_rep(G, rng, false), W = random_rep(G, rng, false);
    auto a = regconst_brauer(G, S1, S2, V, std::nullopt, rng), b = regconst_brauer(G, S1, S2, W, std::nullopt, rng);
    auto s = regconst_brauer(G, S1, S2, direct_sum(V, W), std::nullopt, rng);
    CHECK(s.cls == a.cls * b.cls);
  }
}

TEST_CASE("adjoint pair invariant") {
  CHECK(adjoint_pair_invariant(QMat::identity(2), QMat::identity(2)).is_trivial());
  QMat two(1, 1), one(1, 1);
  two(0, 0) = 2;
  one(0, 0) = 1;
  CHECK(adjoint_pair_invariant(two, one).rep == 2);
  CHECK(adjoint_pair_invariant(one, two).rep == 2);
  QMat phi(2, 2);
  phi(0, 1) = 2, phi(1, 0) = 1;
  CHECK(adjoint_pair_invariant(phi, phi).is_trivial());
  CHECK(adjoint_pair_invariant(scale(phi, Q(7, 3)), scale(phi, Q(7, 3))) == adjoint_pair_invariant(phi, phi));
  CHECK_THROWS_AS(adjoint_pair_invariant(QMat(2, 2), phi), Error);
  CHECK(adjoint_pair_invariant(two, one, Ring::Zp, 2).val == 1);
}

}
