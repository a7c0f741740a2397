#pragma once
// polynomials over F_p (p < 2^63) and over F_{p^m}
#include <cstdint>
#include <utility>
#include <vector>

#include "core/num.hpp"

namespace hcg::modp {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;  // low -> high, trimmed

inline u64 mulm(u64 a, u64 b, u64 p) { return u64((unsigned __int128)a * b % p); }
inline u64 addm(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
inline u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 powm(u64 a, u64 e, u64 p);
u64 invm(u64 a, u64 p);
u64 reduce(const Z& x, u64 p);
u64 to_u64(const Z& p);  // throws unsupported if p does not fit

void trim(Poly& f);
inline int deg(const Poly& f) { return int(f.size()) - 1; }
Poly reduce(const ZVec& f, u64 p);
ZVec lift(const Poly& f);  // coefficients in [0, p)
Poly monic(Poly f, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p);
Poly mod(const Poly& a, const Poly& b, u64 p);
Poly gcd(Poly a, Poly b, u64 p);  // monic
Poly powmod(const Poly& base, const Z& e, const Poly& m, u64 p);
Poly deriv(const Poly& f, u64 p);
u64 eval(const Poly& f, u64 x, u64 p);

// (irreducible monic factor, multiplicity), sorted by degree then coefficients
std::vector<std::pair<Poly, int>> factor(const Poly& f, u64 p, std::uint64_t seed = 1);
// (degree, multiplicity) of each irreducible factor, sorted
std::vector<std::pair<int, int>> factor_degrees(const Poly& f, u64 p);
bool squarefree(const Poly& f, u64 p);

// F_q = F_p[y]/(r), r monic irreducible of degree m
struct GF {
  u64 p;
  Poly r;
  int m;
  using E = Poly;  // length exactly m
  GF(u64 p, Poly r);
  E zero() const { return E(m, 0); }
  E one() const;
  E from(u64 a) const;
  E add(const E& a, const E& b) const;
  E sub(const E& a, const E& b) const;
  E neg(const E& a) const;
  E mul(const E& a, const E& b) const;
  E inv(const E& a) const;
  E pow(const E& a, const Z& e) const;
  bool is_zero(const E& a) const;
  Z order() const;  // q
};
using GPoly = std::vector<GF::E>;

// all roots in F_q of f (integer polynomial, squarefree mod p), sorted
std::vector<GF::E> roots_in(const GF& K, const ZVec& f, std::uint64_t seed = 1);
// evaluate an integer polynomial at an element of F_q
GF::E eval_in(const GF& K, const ZVec& f, const GF::E& x);
// a field containing the splitting field of f (squarefree mod p): degree lcm of factor degrees
GF splitting_field(const ZVec& f, u64 p);

}  // namespace hcg::modp
