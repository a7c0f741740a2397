#pragma once
#include <string>
#include <utility>
#include <vector>

#include "nf/poly.hpp"

namespace hcg {

// {0,1}-collections on 2m embeddings that take the value 1 on exactly one member of each pair
std::vector<std::vector<int>> balanced_collections(const std::vector<std::pair<int, int>>& pairing, int n_embeddings);
bool is_balanced(const std::vector<int>& h, const std::vector<std::pair<int, int>>& pairing);

struct SSetModulus {
  std::string label;
  std::vector<ZPoly> units;  // polynomials in the primitive element of L
};

struct SSetInput {
  ZPoly F_poly;
  ZPoly L_poly;      // monic, absolute
  ZPoly alpha_in_L;  // the generator of F as a polynomial in that of L
  Z L_disc;
  std::vector<Z> L_disc_primes;
  int class_group_exponent = 1;
  Z delta_level_norm = 1;  // N(delta_D N)
  std::vector<SSetModulus> moduli;
  int ramified_primes_of_D = 0;  // count; the alpha conditions are not supported
};

struct SSetResult {
  bool finite = true;
  std::vector<Z> primes;
  std::vector<Z> base;
  std::vector<Z> candidates;  // before the exact per-prime test
  std::vector<Z> conservative;  // p | disc(L_poly), p not | disc(L): kept without a test
  std::vector<int> witness_h;   // balanced collection with y_h(u) = 1 for all generators
  std::string witness_modulus;
  std::string rule;
};

SSetResult sset(const SSetInput& in);

// arithmetic in Z[x]/(g), g monic
ZPoly lmul(const ZPoly& a, const ZPoly& b, const ZPoly& g);
ZPoly lreduce(const ZPoly& a, const ZPoly& g);
ZPoly linv(const ZPoly& a, const ZPoly& g);  // a must be a unit of Z[x]/(g)... or have integral inverse
ZPoly lcompose(const ZPoly& f, const ZPoly& a, const ZPoly& g);  // f(a) mod g

}  // namespace hcg
