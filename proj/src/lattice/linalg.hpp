#pragma once
#include <optional>

#include "core/num.hpp"

namespace hcg {

struct Hnf {
  ZMat H;  // column HNF, zero columns last
  ZMat U;  // unimodular, H = M U
  int rank = 0;
};

// column Hermite normal form: pivot rows strictly increase with the column index,
// pivots positive, entries left of a pivot reduced into [0, pivot)
Hnf hnf(const ZMat& M);
// the nonzero columns of hnf(M)
ZMat hnf_basis(const ZMat& M);
bool same_lattice(const ZMat& A, const ZMat& B);
bool is_hnf(const ZMat& H);
// basis (HNF-normalised columns) of {x in Z^n : M x = 0}
ZMat int_kernel(const ZMat& M);
// intersection of the column lattices of A and B (same ambient dimension)
ZMat lattice_intersection(const ZMat& A, const ZMat& B);
// is v in the column lattice of B (B any generating set)
std::optional<ZVec> lattice_coords(const ZMat& B, const ZVec& v);

Z det_bareiss(ZMat M);
Q det_rational(const QMat& M);
Q det_cofactor(const QMat& M);  // oracle, tiny sizes only

struct Rref {
  QMat R;
  std::vector<int> pivots;
};
Rref rref(QMat M);
int rank_q(const QMat& M);
// columns span the right nullspace
QMat nullspace(const QMat& M);
// some solution of M x = b, if one exists
std::optional<QVec> solve(const QMat& M, const QVec& b);
QMat inverse(const QMat& M);
// clear denominators row-wise (scaling each row by a positive integer)
ZMat clear_rows(const QMat& M);
// primitive integer multiple of a rational vector
ZVec primitive(const QVec& v);

}  // namespace hcg
