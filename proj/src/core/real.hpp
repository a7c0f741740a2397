#pragma once
// arbitrary precision reals (MPFR) and a minimal complex type on top
#include <boost/multiprecision/mpfr.hpp>

#include "core/num.hpp"

namespace hcg {

using Real = boost::multiprecision::mpfr_float;

// sets the working precision (decimal digits) for newly created Reals in this thread
struct PrecisionScope {
  unsigned old;
  explicit PrecisionScope(unsigned digits10) : old(Real::default_precision()) { Real::default_precision(digits10); }
  ~PrecisionScope() { Real::default_precision(old); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;
};

Real to_real(const Q& q);
Real to_real(const Z& z);
Real parse_real(const std::string& s);
// nearest integer; caller checks closeness
Z round_to_z(const Real& x);
std::string fmt(const Real& x, int digits);

struct Cx {
  Real re, im;
  Cx() : re(0), im(0) {}
  Cx(Real a, Real b = Real(0)) : re(std::move(a)), im(std::move(b)) {}
};
inline Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Cx operator/(const Cx& a, const Cx& b) {
  Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Real abs2(const Cx& a) { return a.re * a.re + a.im * a.im; }
inline Real cabs(const Cx& a) { return sqrt(abs2(a)); }
inline Cx conj(const Cx& a) { return {a.re, -a.im}; }
Cx cpow(const Cx& a, unsigned long n);

}  // namespace hcg
