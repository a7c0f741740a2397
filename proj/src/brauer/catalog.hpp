#pragma once
// named small groups and random test representations
#include "brauer/group.hpp"

namespace hcg {

struct NamedGroup {
  const char* name;
  FiniteGroup G;
};
// twenty groups of order <= 16
std::vector<NamedGroup> small_groups();

QMat random_invertible(int n, Rng& rng, bool unimodular = false);
// sums of permutation and augmentation modules, conjugated at random
RationalRep random_rep(const FiniteGroup& G, Rng& rng, bool integral);

}  // namespace hcg
