#pragma once
#include <functional>
#include <vector>

#include "core/num.hpp"

namespace hcg {

using Box = std::vector<std::vector<Z>>;  // per coordinate, finite admissible set

// all v in shift + lattice(L) with v[i] in boxes[i]; L may have dependent columns.
// Sorted lexicographically, no duplicates.
std::vector<ZVec> box_points(const ZMat& L, const ZVec& shift, const Box& boxes);
// reference enumeration over coefficients in [-bound, bound]
std::vector<ZVec> box_points_naive(const ZMat& L, const ZVec& shift, const Box& boxes, int bound);

// Fincke-Pohst: all integer y with (y - y0)^T G (y - y0) <= R2, G positive definite Gram
// matrix (exact), y0 rational centre. Callback receives y.
void enumerate_ellipsoid(const QMat& G, const QVec& y0, const Q& R2,
                         const std::function<void(const ZVec&)>& emit);

}  // namespace hcg
