#pragma once
// constructed graded modules with known regulator constants
#include "graded/graded.hpp"

namespace hcg {

// x + y sqrt(d) acting on Q^2 in the basis (1, sqrt d)
QMat quad_mult(const Q& x, const Q& y, const Z& d);

// C2-graded, M_0 = M_1 = K^n with K = Q (d = 0) or Q(sqrt d), one degree-1 generator T with T^2 = a,
// iota = id. unimodular: B in GL_n(Z), so the module is integral when a is.
struct SquaresCase {
  GradedSpec spec;
  Z d;            // 0 for K = Q
  Q a0, a1;       // a = a0 + a1 sqrt d
  int n;
  Q norm_power;   // N(a)^n
};
SquaresCase squares_spec(const Q& a0, const Q& a1, const Z& d, int n, Rng& rng, bool unimodular = false);

// C_m-graded Q^n (x) Q[C_m]: generators X_i (x) S^k_i with X_i diagonal, iota = conjugation by
// (involutive permutation) (x) (c -> -c), then a random block-diagonal change of basis.
// invertible_link: a degree-1 generator with units on the diagonal, so all components are linked.
GradedSpec cyclic_spec(int m, int n, Rng& rng, bool integral, bool invertible_link = true);

// Q x Q with iota swapping the factors, M_0 on one factor and M_1 on the other: not polarisable
GradedSpec swap_counterexample();

// C2 x C2 graded, rank one components; T1 and T2 of degrees (1,0), (0,1) with T1^2 = a, T2^2 = b.
// The link (0,0) -> (1,1) needs the product T1 T2.
GradedSpec product_link_spec(const Q& a, const Q& b);

// degree-1 algebra Q(sqrt 2) x Q via theta with minimal polynomial (x^2-2)(x-1); T^2 = (alpha, beta)
struct SplitCase {
  GradedSpec spec;
  Q total, sqrt2_part, rational_part;  // N(alpha) beta, N(alpha), beta (classes)
};
SplitCase split_spec(const Q& a0, const Q& a1, const Q& beta, Rng& rng);

// Q(sqrt d) with iota the Galois conjugation (generators theta and -theta), T^2 = a rational
GradedSpec galois_spec(const Z& d, const Z& a, int n, Rng& rng);

}  // namespace hcg
