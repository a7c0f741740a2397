#include "core/real.hpp"

#include <sstream>

namespace hcg {

Real to_real(const Z& z) { return Real(z.get_str()); }

Real to_real(const Q& q) { return to_real(q.get_num()) / to_real(q.get_den()); }

Real parse_real(const std::string& s) {
  try {
    return Real(s);
  } catch (...) {
    fail(Code::validation, "not a decimal number: '" + s + "'");
  }
}

Z round_to_z(const Real& x) {
  Real r = floor(x + Real(0.5));
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), r.backend().data(), MPFR_RNDN);
  return z;
}

std::string fmt(const Real& x, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

Cx cpow(const Cx& a, unsigned long n) {
  Cx r(Real(1)), b = a;
  while (n) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

}  // namespace hcg
