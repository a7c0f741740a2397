#pragma once
#include <optional>
#include <string>

#include "brauer/group.hpp"
#include "lattice/squareclass.hpp"

namespace hcg {

struct DoubleCoset {
  int g;                  // representative
  std::vector<int> elems; // H' g H, sorted
  std::vector<int> us;    // representatives of H' / (H' cap gHg^-1)
};
// H' \ G / H
std::vector<DoubleCoset> double_cosets(const FiniteGroup& G, const Subgroup& H, const Subgroup& Hp);

// T_{H'gH}: V^H -> V^H', v -> sum_u u g v, in the fixed_basis coordinates
QMat hecke_matrix(const FiniteGroup& G, const Subgroup& H, const Subgroup& Hp, int g, const RationalRep& V);
// same, with the fixed-point bases supplied
QMat hecke_matrix(const FiniteGroup& G, const Subgroup& H, const Subgroup& Hp, int g, const RationalRep& V,
                  const QMat& BH, const QMat& BHp);

// T_{H g1 H} T_{H g2 H} = sum c_i T_{H z_i H}, by counting cosets in the group
std::vector<std::pair<int, Z>> hecke_product(const FiniteGroup& G, const Subgroup& H, int g1, int g2);

using GSetSum = std::vector<Subgroup>;  // disjoint union of G/H_i

std::vector<long> perm_character(const FiniteGroup& G, const GSetSum& S);
RationalRep gset_module(const FiniteGroup& G, const GSetSum& S);
// basis of Hom_G(Q[S2], Q[S1]): orbit indicator matrices of G on S1 x S2
std::vector<QMat> hom_basis(const FiniteGroup& G, const GSetSum& S1, const GSetSum& S2);

struct BrauerCheck {
  bool relation = false;
  std::optional<QMat> witness;  // Q[S2] -> Q[S1]
  int attempts = 0;
  std::string rule;
};
BrauerCheck is_brauer_relation(const FiniteGroup& G, const GSetSum& S1, const GSetSum& S2, Rng& rng);
// integral basis of relations between subgroup classes, split into (S1, S2)
std::vector<std::pair<GSetSum, GSetSum>> brauer_relations(const FiniteGroup& G);

struct RegConst {
  Q value;  // exact det quotient in the fixed-point bases
  SquareClass cls;
  int dim = 0;  // dim V^{S1} = dim V^{S2}
};
// pairing defaults to a random invariant one; ring Z needs integral rho
RegConst regconst_brauer(const FiniteGroup& G, const GSetSum& S1, const GSetSum& S2, const RationalRep& V,
                         const std::optional<QMat>& pairing, Rng& rng, Ring ring = Ring::Q, const Z& p = 0);

// T: V^{S1} -> V^{S2} induced by X in Hom_G(Q[S2], Q[S1]) (f -> f o X), fixed_basis coordinates
QMat induced_map(const FiniteGroup& G, const GSetSum& S1, const GSetSum& S2, const QMat& X, const RationalRep& V);

SquareClass adjoint_pair_invariant(const QMat& phi, const QMat& phistar, Ring ring = Ring::Q, const Z& p = 0);

}  // namespace hcg
