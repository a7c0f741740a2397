#pragma once
#include <string>

#include "core/num.hpp"

namespace hcg {

enum class Ring { Z, Q, Zp };

// element of Q^x / (R^x)^2
struct SquareClass {
  Ring ring = Ring::Q;
  Z p = 0;        // Zp only
  Q rep = 1;      // Q: squarefree integer; Z: the rational itself
  long val = 0;   // Zp: p-adic valuation
  int unit = 1;   // Zp, p odd: Legendre symbol of the unit part; p = 2: unit part mod 8

  bool operator==(const SquareClass& o) const {
    return ring == o.ring && p == o.p && rep == o.rep && val == o.val && unit == o.unit;
  }
  bool is_trivial() const;
  std::string str() const;
};

SquareClass square_class(const Q& x, Ring ring, const Z& p = 0);
SquareClass operator*(const SquareClass& a, const SquareClass& b);
SquareClass inv(const SquareClass& a);

// p-adic valuation of a nonzero rational
long padic_val(const Q& x, const Z& p);
int legendre(const Z& a, const Z& p);

}  // namespace hcg
