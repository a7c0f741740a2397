#include "lattice/squareclass.hpp"

#include "core/factor.hpp"

namespace hcg {

long padic_val(const Q& x, const Z& p) {
  require(x != 0, Code::domain, "valuation of zero");
  long v = 0;
  Z n = x.get_num(), d = x.get_den();
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p, ++v;
  while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) d /= p, --v;
  return v;
}

int legendre(const Z& a, const Z& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

namespace {

// unit part u of x = p^v u, as (num, den) coprime to p
void unit_part(const Q& x, const Z& p, Z& n, Z& d) {
  n = x.get_num();
  d = x.get_den();
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
  while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) d /= p;
}

int mod8(const Z& n) {
  Z r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), 8);
  return int(r.get_si());
}

int inv_mod8(int u) { return u;  // odd residues are self-inverse mod 8
}

}  // namespace

SquareClass square_class(const Q& x, Ring ring, const Z& p) {
  require(x != 0, Code::domain, "square class of zero");
  SquareClass s;
  s.ring = ring;
  switch (ring) {
    case Ring::Q: {
      Z nd = x.get_num() * x.get_den();
      s.rep = Q(squarefree_part(nd));
      break;
    }
    case Ring::Z:
      s.rep = x;
      break;
    case Ring::Zp: {
      require(is_probable_prime(p), Code::domain, "square class over Zp: p is not prime");
      s.p = p;
      s.rep = 0;
      s.val = padic_val(x, p);
      Z n, d;
      unit_part(x, p, n, d);
      if (p == 2) s.unit = (mod8(n) * inv_mod8(mod8(d))) % 8;
      else s.unit = legendre(n, p) * legendre(d, p);
      break;
    }
  }
  return s;
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
  require(a.ring == b.ring && a.p == b.p, Code::domain, "square classes over different rings");
  SquareClass s = a;
  switch (a.ring) {
    case Ring::Q: s.rep = Q(squarefree_part(Z(a.rep.get_num() * b.rep.get_num()))); break;
    case Ring::Z: s.rep = a.rep * b.rep; break;
    case Ring::Zp:
      s.val = a.val + b.val;
      s.unit = a.p == 2 ? (a.unit * b.unit) % 8 : a.unit * b.unit;
      break;
  }
  return s;
}

SquareClass inv(const SquareClass& a) {
  SquareClass s = a;
  switch (a.ring) {
    case Ring::Q: break;
    case Ring::Z: s.rep = 1 / a.rep; break;
    case Ring::Zp: s.val = -a.val; break;  // unit classes have order 2
  }
  return s;
}

bool SquareClass::is_trivial() const {
  switch (ring) {
    case Ring::Q:
    case Ring::Z: return rep == 1;
    case Ring::Zp: return val == 0 && unit == 1;
  }
  return false;
}

std::string SquareClass::str() const {
  switch (ring) {
    case Ring::Q: return rep.get_str() + " mod (Q^x)^2";
    case Ring::Z: return rep.get_str() + " mod (Z^x)^2";
    case Ring::Zp: {
      std::string u = p == 2 ? ("unit=" + std::to_string(unit) + " mod 8")
                             : (unit == 1 ? "unit square" : "unit non-square");
      return "p=" + p.get_str() + " val=" + std::to_string(val) + " " + u;
    }
  }
  return "?";
}

}  // namespace hcg
