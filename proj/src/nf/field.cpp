#include "nf/field.hpp"

#include <algorithm>

#include "core/factor.hpp"
#include "nf/modp.hpp"

namespace hcg {

NumberField parse_field(const ZPoly& f0) { return parse_field(f0, 1, {}); }

NumberField parse_field(const ZPoly& f0, const Z& index,
                        const std::map<Z, std::vector<std::pair<int, int>>>& overrides) {
  ZPoly f = f0;
  trim(f);
  NumberField F;
  F.f = f;
  F.n = deg(f);
  require(F.n >= 1, Code::validation, "field polynomial has degree < 1");
  require(f.back() == 1, Code::validation, "field polynomial is not monic");
  require(is_irreducible(f), Code::validation, "field polynomial " + pstr(f) + " is reducible");
  F.poly_disc = F.n == 1 ? Z(1) : discriminant(f);
  require(index > 0, Code::validation, "index must be positive");
  Z i2 = index * index;
  require(F.poly_disc % i2 == 0, Code::validation, "index^2 does not divide disc(f)");
  F.index = index;
  F.disc = F.poly_disc / i2;
  F.real_roots = isolate_real_roots(to_qpoly(f));
  F.r1 = int(F.real_roots.size());
  require((F.n - F.r1) % 2 == 0, Code::validation, "real root count parity");
  F.r2 = (F.n - F.r1) / 2;
  require(sgn(F.disc) == (F.r2 % 2 ? -1 : 1), Code::validation, "discriminant sign does not match signature");
  for (auto& [p, fe] : overrides) {
    int s = 0;
    for (auto& [ff, e] : fe) s += ff * e;
    require(s == F.n, Code::validation, "splitting override at " + p.get_str() + " does not sum to the degree");
    require(index % p == 0, Code::validation, "splitting override at a prime not dividing the index");
    auto v = fe;
    std::sort(v.begin(), v.end());
    F.overrides[p] = v;
  }
  return F;
}

Splitting splitting_type(const NumberField& F, const Z& p) {
  require(is_probable_prime(p), Code::domain, "splitting_type: " + p.get_str() + " is not prime");
  Splitting s;
  s.p = p;
  if (F.index % p == 0) {
    auto it = F.overrides.find(p);
    if (it != F.overrides.end()) {
      s.fe = it->second;
      s.from_override = true;
      return s;
    }
    s.flagged = true;
  }
  auto q = modp::to_u64(p);
  for (auto& [d, e] : modp::factor_degrees(modp::reduce(F.f, q), q)) s.fe.push_back({d, e});
  std::sort(s.fe.begin(), s.fe.end());
  return s;
}

std::vector<int> negative_real_places(const NumberField& F, const QPoly& g) {
  std::vector<int> out;
  QPoly fq = to_qpoly(F.f);
  for (int i = 0; i < F.r1; ++i) {
    auto iv = F.real_roots[i];
    int s = sign_at_root(g, fq, iv);
    require(s != 0, Code::domain, "radicand vanishes at a real place");
    if (s < 0) out.push_back(i);
  }
  return out;
}

}  // namespace hcg
