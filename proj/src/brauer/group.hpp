#pragma once
// finite groups as multiplication tables, subgroups, rational representations
#include <vector>

#include "core/num.hpp"

namespace hcg {

struct FiniteGroup {
  int order = 0;
  std::vector<std::vector<int>> mul;  // mul[a][b] = ab
  std::vector<int> inv;
  int operator()(int a, int b) const { return mul[a][b]; }
};

// checks identity at 0, associativity and inverses exhaustively; fills inv
FiniteGroup make_group(std::vector<std::vector<int>> table);
// closure of permutation generators (0-based images); element 0 is the identity
FiniteGroup perm_group(const std::vector<std::vector<int>>& gens, std::vector<std::vector<int>>* elems = nullptr);
FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup dihedral_group(int n);   // order 2n
FiniteGroup symmetric_group(int n);
FiniteGroup alternating_group(int n);
FiniteGroup quaternion_group();      // Q8
FiniteGroup dicyclic_group(int n);   // order 4n
FiniteGroup sl2_3();

using Subgroup = std::vector<int>;  // sorted element indices

void check_subgroup(const FiniteGroup& G, const Subgroup& H);
Subgroup generated(const FiniteGroup& G, const std::vector<int>& gens);
// every subgroup, ordered by size then lexicographically
std::vector<Subgroup> all_subgroups(const FiniteGroup& G);
Subgroup conjugate(const FiniteGroup& G, const Subgroup& H, int g);  // g H g^-1
// one subgroup per conjugacy class
std::vector<Subgroup> subgroup_classes(const FiniteGroup& G);

// left cosets gH; coset_of[g] = index of gH, reps[i] a representative
struct Cosets {
  std::vector<int> coset_of, reps;
};
Cosets left_cosets(const FiniteGroup& G, const Subgroup& H);

struct RationalRep {
  int degree = 0;
  std::vector<QMat> rho;  // one matrix per group element
};

void check_rep(const FiniteGroup& G, const RationalRep& V);
RationalRep trivial_rep(const FiniteGroup& G, int copies = 1);
// Q[G/H] on the left coset basis
RationalRep permutation_rep(const FiniteGroup& G, const Subgroup& H);
RationalRep regular_rep(const FiniteGroup& G);
RationalRep direct_sum(const RationalRep& a, const RationalRep& b);
// rho'(g) = P rho(g) P^-1
RationalRep conjugate_rep(const RationalRep& V, const QMat& P);
// action on a G-stable subspace with basis the columns of B
RationalRep subrep(const RationalRep& V, const QMat& B);
// sum-zero vectors of Q[G/H]
RationalRep augmentation_rep(const FiniteGroup& G, const Subgroup& H);
// one-dimensional rep g -> +-1 with kernel K (K of index 2)
RationalRep sign_rep(const FiniteGroup& G, const Subgroup& K);

// basis (integer columns, HNF) of V^H
ZMat fixed_basis(const RationalRep& V, const Subgroup& H);

// random symmetric G-invariant pairing: sum over G of rho(g)^T M rho(g)
QMat random_invariant_pairing(const FiniteGroup& G, const RationalRep& V, Rng& rng, bool definite = true);
void check_pairing(const FiniteGroup& G, const RationalRep& V, const QMat& B);

}  // namespace hcg
