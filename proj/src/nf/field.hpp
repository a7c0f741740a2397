#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nf/poly.hpp"

namespace hcg {

struct NumberField {
  std::string label;
  ZPoly f;  // monic, irreducible
  int n = 0, r1 = 0, r2 = 0;
  Z poly_disc;
  Z disc;       // field discriminant
  Z index = 1;  // [Z_F : Z[a]]
  // p -> list of (residue degree f, ramification e), for p | index
  std::map<Z, std::vector<std::pair<int, int>>> overrides;
  std::vector<std::pair<Q, Q>> real_roots;  // isolating intervals, ascending
};

struct Splitting {
  Z p;
  std::vector<std::pair<int, int>> fe;  // (f, e), sorted
  bool from_override = false;
  bool flagged = false;  // p | index and no override: pattern of f mod p, not trustworthy
};

// checks monicity, irreducibility; computes disc(f) and the signature.  Field disc = poly disc
NumberField parse_field(const ZPoly& f);
// with an asserted index: disc(F) = disc(f) / index^2; overrides keyed by p
NumberField parse_field(const ZPoly& f, const Z& index,
                        const std::map<Z, std::vector<std::pair<int, int>>>& overrides);
Splitting splitting_type(const NumberField& F, const Z& p);

// real roots of f at which g is negative (indices into F.real_roots)
std::vector<int> negative_real_places(const NumberField& F, const QPoly& g);

}  // namespace hcg
