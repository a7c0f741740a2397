#include "brauer/catalog.hpp"

#include "lattice/linalg.hpp"

namespace hcg {

std::vector<NamedGroup> small_groups() {
  return {{"C2", cyclic_group(2)},
          {"C3", cyclic_group(3)},
          {"C4", cyclic_group(4)},
          {"V4", direct_product(cyclic_group(2), cyclic_group(2))},
          {"C6", cyclic_group(6)},
          {"S3", symmetric_group(3)},
          {"C8", cyclic_group(8)},
          {"C2xC4", direct_product(cyclic_group(2), cyclic_group(4))},
          {"C2^3", direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2)))},
          {"D4", dihedral_group(4)},
          {"Q8", quaternion_group()},
          {"C3xC3", direct_product(cyclic_group(3), cyclic_group(3))},
          {"D5", dihedral_group(5)},
          {"A4", alternating_group(4)},
          {"D6", dihedral_group(6)},
          {"Dic3", dicyclic_group(3)},
          {"D7", dihedral_group(7)},
          {"D8", dihedral_group(8)},
          {"Q16", dicyclic_group(4)},
          {"C2xD4", direct_product(cyclic_group(2), dihedral_group(4))}};
}

QMat random_invertible(int n, Rng& rng, bool unimodular) {
  for (;;) {
    QMat P(n, n);
    if (unimodular) {
      P = QMat::identity(n);
      for (int k = 0; k < 3 * n; ++k) {
        int i = int(rand_int(rng, 0, n - 1)), j = int(rand_int(rng, 0, n - 1));
        if (i == j) continue;
        long m = rand_int(rng, -2, 2);
        for (int c = 0; c < n; ++c) P(i, c) += m * P(j, c);
      }
      return P;
    }
    for (auto& x : P.v) x = qfrac(rand_int(rng, -3, 3), rand_int(rng, 1, 3));
    if (det_rational(P) != 0) return P;
  }
}

// a non-permutation representation of moderate degree
RationalRep random_rep(const FiniteGroup& G, Rng& rng, bool integral) {
  auto subs = all_subgroups(G);
  RationalRep V;
  int parts = int(rand_int(rng, 1, 2));
  for (int k = 0; k < parts; ++k) {
    RationalRep W;
    for (;;) {
      auto& H = subs[size_t(rand_int(rng, 0, long(subs.size()) - 1))];
      long idx = G.order / long(H.size());
      if (idx > 8) continue;
      if (idx >= 2 && rand_int(rng, 0, 1)) W = augmentation_rep(G, H);
      else W = permutation_rep(G, H);
      break;
    }
    V = k ? direct_sum(V, W) : W;
  }
  return conjugate_rep(V, random_invertible(V.degree, rng, integral));
}

}  // namespace hcg
