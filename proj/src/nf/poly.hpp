#pragma once
// dense univariate polynomials, coefficients low -> high
#include <optional>
#include <utility>
#include <vector>

#include "core/num.hpp"
#include "core/real.hpp"

namespace hcg {

using ZPoly = ZVec;
using QPoly = QVec;

template <class T>
void trim(std::vector<T>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
template <class T>
int deg(const std::vector<T>& p) {
  int d = int(p.size()) - 1;
  while (d >= 0 && p[d] == 0) --d;
  return d;
}

ZPoly zpoly(const std::vector<std::string>& coeffs);
QPoly to_qpoly(const ZPoly& p);
ZPoly pmul(const ZPoly& a, const ZPoly& b);
QPoly pmul(const QPoly& a, const QPoly& b);
QPoly padd(const QPoly& a, const QPoly& b);
QPoly psub(const QPoly& a, const QPoly& b);
ZPoly deriv(const ZPoly& p);
QPoly deriv(const QPoly& p);
// division over Q: a = q b + r
std::pair<QPoly, QPoly> pdivmod(const QPoly& a, const QPoly& b);
QPoly pgcd(QPoly a, QPoly b);  // monic
std::optional<ZPoly> exact_div(const ZPoly& a, const ZPoly& b);
Z content(const ZPoly& p);
ZPoly primpart(const QPoly& p);
Q peval(const QPoly& p, const Q& x);
Z peval(const ZPoly& p, const Z& x);
Real peval(const ZPoly& p, const Real& x);
Cx peval(const QPoly& p, const Cx& x);
std::string pstr(const ZPoly& p);

Z resultant(const ZPoly& a, const ZPoly& b);
Z discriminant(const ZPoly& f);

// real roots via Sturm sequences (f squarefree over Q)
int count_real_roots(const QPoly& f);
// disjoint intervals (a, b], ascending, each containing exactly one root of f
std::vector<std::pair<Q, Q>> isolate_real_roots(const QPoly& f);
// sign of g at the unique root of f in (a, b]; refines the interval in place
int sign_at_root(const QPoly& g, const QPoly& f, std::pair<Q, Q>& iv);

// all complex roots of a squarefree integer polynomial at the current Real precision
std::vector<Cx> complex_roots(const ZPoly& f);

// factorisation over Z into primitive irreducibles with multiplicity (content dropped)
std::vector<std::pair<ZPoly, int>> factor_z(const ZPoly& f);
bool is_irreducible(const ZPoly& f);

}  // namespace hcg
