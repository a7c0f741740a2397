#pragma once
#include "core/num.hpp"

namespace hcg {

// exact integral LLL on the columns of B; delta = p/q with 1/4 < delta < 1
ZMat lll_reduce(const ZMat& B, const Q& delta = Q(99, 100));
bool is_lll_reduced(const ZMat& B, const Q& delta = Q(99, 100));

// exact Gram-Schmidt of the columns: mu(i,j) for j < i and squared norms
struct GramSchmidt {
  QMat mu;
  QVec norm2;
};
GramSchmidt gram_schmidt(const ZMat& B);

}  // namespace hcg
