#include "nf/modp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "core/error.hpp"

namespace hcg::modp {

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invm(u64 a, u64 p) {
  require(a % p != 0, Code::domain, "inverse of 0 mod p");
  return powm(a, p - 2, p);
}

u64 reduce(const Z& x, u64 p) {
  Z r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return r.get_ui();
}

u64 to_u64(const Z& p) {
  require(p > 1 && mpz_sizeinbase(p.get_mpz_t(), 2) <= 62, Code::unsupported, "prime " + p.get_str() + " too large for word arithmetic");
  return p.get_ui();
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(const ZVec& f, u64 p) {
  Poly r;
  for (auto& c : f) r.push_back(reduce(c, p));
  trim(r);
  return r;
}

ZVec lift(const Poly& f) {
  ZVec r;
  for (auto c : f) r.push_back(Z(static_cast<unsigned long>(c)));
  return r;
}

Poly monic(Poly f, u64 p) {
  trim(f);
  if (f.empty()) return f;
  u64 li = invm(f.back(), p);
  for (auto& c : f) c = mulm(c, li, p);
  return f;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = addm(c[i + j], mulm(a[i], b[j], p), p);
  }
  trim(c);
  return c;
}

Poly add(const Poly& a, const Poly& b, u64 p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = addm(c[i], b[i], p);
  trim(c);
  return c;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = subm(c[i], b[i], p);
  trim(c);
  return c;
}

std::pair<Poly, Poly> divmod(const Poly& a0, const Poly& b0, u64 p) {
  Poly a = a0, b = b0;
  trim(a), trim(b);
  require(!b.empty(), Code::domain, "division by zero polynomial mod p");
  int db = deg(b);
  u64 li = invm(b.back(), p);
  Poly q(std::max(0, deg(a) - db + 1), 0);
  while (deg(a) >= db) {
    int da = deg(a);
    u64 f = mulm(a[da], li, p);
    q[da - db] = f;
    for (int i = 0; i <= db; ++i) a[da - db + i] = subm(a[da - db + i], mulm(f, b[i], p), p);
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly mod(const Poly& a, const Poly& b, u64 p) { return divmod(a, b, p).second; }

Poly gcd(Poly a, Poly b, u64 p) {
  trim(a), trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly powmod(const Poly& base, const Z& e, const Poly& m, u64 p) {
  Poly r{1 % p}, b = mod(base, m, p);
  trim(r);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = mod(mul(r, r, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, b, p), m, p);
  }
  return r;
}

Poly deriv(const Poly& f, u64 p) {
  Poly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(mulm(f[i], i % p, p));
  trim(d);
  return d;
}

u64 eval(const Poly& f, u64 x, u64 p) {
  u64 r = 0;
  for (size_t i = f.size(); i-- > 0;) r = addm(mulm(r, x, p), f[i], p);
  return r;
}

namespace {

// f = g(x^p) -> g^(1/p) (coefficients are fixed by Frobenius)
Poly pth_root(const Poly& f, u64 p) {
  Poly g;
  for (size_t i = 0; i < f.size(); i += p) g.push_back(f[i]);
  trim(g);
  return g;
}

std::vector<std::pair<Poly, int>> ddf(Poly f, u64 p) {
  std::vector<std::pair<Poly, int>> out;
  Poly x{0, 1}, h = x;
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = powmod(h, Z(static_cast<unsigned long>(p)), f, p);
    Poly g = gcd(sub(h, x, p), f, p);
    if (deg(g) > 0) {
      out.push_back({g, d});
      f = divmod(f, g, p).first;
      h = mod(h, f, p);
    }
  }
  if (deg(f) > 0) out.push_back({monic(f, p), deg(f)});
  return out;
}

void edf(const Poly& f, int d, u64 p, std::mt19937_64& g, std::vector<Poly>& out) {
  int n = deg(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  std::uniform_int_distribution<u64> U(0, p - 1);
  for (;;) {
    Poly a(n);
    for (auto& c : a) c = U(g);
    trim(a);
    if (deg(a) < 1) continue;
    Poly b;
    if (p == 2) {
      Poly t = a, s = a;
      for (int i = 1; i < d; ++i) {
        s = mod(mul(s, s, p), f, p);
        t = add(t, s, p);
      }
      b = t;
    } else {
      Z pd;
      mpz_ui_pow_ui(pd.get_mpz_t(), p, unsigned(d));
      b = sub(powmod(a, (pd - 1) / 2, f, p), Poly{1}, p);
    }
    Poly h = gcd(b, f, p);
    if (deg(h) > 0 && deg(h) < n) {
      edf(h, d, p, g, out);
      edf(monic(divmod(f, h, p).first, p), d, p, g, out);
      return;
    }
  }
}

void distinct_irreducibles(const Poly& f, u64 p, std::mt19937_64& g, std::vector<Poly>& out) {
  if (deg(f) <= 0) return;
  Poly d = deriv(f, p);
  if (d.empty()) {
    distinct_irreducibles(pth_root(f, p), p, g, out);
    return;
  }
  Poly c = gcd(f, d, p);
  Poly r = monic(divmod(f, c, p).first, p);
  for (auto& [h, dd] : ddf(r, p)) edf(h, dd, p, g, out);
  distinct_irreducibles(c, p, g, out);
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f0, u64 p, std::uint64_t seed) {
  Poly f = monic(f0, p);
  require(!f.empty(), Code::domain, "factor of zero polynomial mod p");
  std::mt19937_64 g(seed);
  std::vector<Poly> irr;
  distinct_irreducibles(f, p, g, irr);
  std::sort(irr.begin(), irr.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  irr.erase(std::unique(irr.begin(), irr.end()), irr.end());
  std::vector<std::pair<Poly, int>> out;
  for (auto& h : irr) {
    int e = 0;
    for (;;) {
      auto [q, r] = divmod(f, h, p);
      if (!r.empty()) break;
      f = q;
      ++e;
    }
    out.push_back({h, e});
  }
  require(deg(f) == 0, Code::domain, "mod-p factorisation incomplete");
  return out;
}

std::vector<std::pair<int, int>> factor_degrees(const Poly& f, u64 p) {
  std::vector<std::pair<int, int>> out;
  for (auto& [h, e] : factor(f, p)) out.push_back({deg(h), e});
  std::sort(out.begin(), out.end());
  return out;
}

bool squarefree(const Poly& f, u64 p) { return deg(gcd(f, deriv(f, p), p)) == 0; }

// ---- F_q ----

GF::GF(u64 p_, Poly r_) : p(p_), r(monic(r_, p_)), m(deg(r)) {
  require(m >= 1, Code::domain, "GF modulus must have positive degree");
}

GF::E GF::one() const {
  E e = zero();
  e[0] = 1 % p;
  return e;
}
GF::E GF::from(u64 a) const {
  E e = zero();
  e[0] = a % p;
  return e;
}
GF::E GF::add(const E& a, const E& b) const {
  E c(m);
  for (int i = 0; i < m; ++i) c[i] = addm(a[i], b[i], p);
  return c;
}
GF::E GF::sub(const E& a, const E& b) const {
  E c(m);
  for (int i = 0; i < m; ++i) c[i] = subm(a[i], b[i], p);
  return c;
}
GF::E GF::neg(const E& a) const { return sub(zero(), a); }
GF::E GF::mul(const E& a, const E& b) const {
  Poly c = modp::mod(modp::mul(a, b, p), r, p);
  c.resize(m, 0);
  return c;
}
bool GF::is_zero(const E& a) const {
  return std::all_of(a.begin(), a.end(), [](u64 x) { return x == 0; });
}
GF::E GF::pow(const E& a, const Z& e) const {
  E res = one(), b = a;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    res = mul(res, res);
    if (mpz_tstbit(e.get_mpz_t(), i)) res = mul(res, b);
  }
  return res;
}
Z GF::order() const {
  Z q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, unsigned(m));
  return q;
}
GF::E GF::inv(const E& a) const {
  require(!is_zero(a), Code::domain, "inverse of 0 in F_q");
  return pow(a, order() - 2);
}

namespace {

struct GPolyOps {
  const GF& K;
  void trim(GPoly& f) const {
    while (!f.empty() && K.is_zero(f.back())) f.pop_back();
  }
  GPoly mul(const GPoly& a, const GPoly& b) const {
    if (a.empty() || b.empty()) return {};
    GPoly c(a.size() + b.size() - 1, K.zero());
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] = K.add(c[i + j], K.mul(a[i], b[j]));
    trim(c);
    return c;
  }
  std::pair<GPoly, GPoly> divmod(GPoly a, GPoly b) const {
    trim(a), trim(b);
    int db = int(b.size()) - 1;
    GF::E li = K.inv(b.back());
    GPoly q(std::max(0, int(a.size()) - db), K.zero());
    while (int(a.size()) - 1 >= db) {
      int da = int(a.size()) - 1;
      GF::E f = K.mul(a[da], li);
      q[da - db] = f;
      for (int i = 0; i <= db; ++i) a[da - db + i] = K.sub(a[da - db + i], K.mul(f, b[i]));
      trim(a);
    }
    trim(q);
    return {q, a};
  }
  GPoly monic(GPoly f) const {
    trim(f);
    if (f.empty()) return f;
    GF::E li = K.inv(f.back());
    for (auto& c : f) c = K.mul(c, li);
    return f;
  }
  GPoly gcd(GPoly a, GPoly b) const {
    trim(a), trim(b);
    while (!b.empty()) {
      GPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  GPoly powmod(const GPoly& base, const Z& e, const GPoly& m) const {
    GPoly r{K.one()}, b = divmod(base, m).second;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
      r = divmod(mul(r, r), m).second;
      if (mpz_tstbit(e.get_mpz_t(), i)) r = divmod(mul(r, b), m).second;
    }
    return r;
  }
  GPoly sub(GPoly a, const GPoly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), K.zero());
    for (size_t i = 0; i < b.size(); ++i) a[i] = K.sub(a[i], b[i]);
    trim(a);
    return a;
  }
};

}  // namespace

GF::E eval_in(const GF& K, const ZVec& f, const GF::E& x) {
  GF::E r = K.zero();
  for (size_t i = f.size(); i-- > 0;) r = K.add(K.mul(r, x), K.from(reduce(f[i], K.p)));
  return r;
}

std::vector<GF::E> roots_in(const GF& K, const ZVec& f, std::uint64_t seed) {
  require(K.p != 2, Code::unsupported, "root finding in characteristic 2");
  GPolyOps O{K};
  GPoly F;
  for (auto& c : f) F.push_back(K.from(reduce(c, K.p)));
  F = O.monic(F);
  require(!F.empty(), Code::domain, "roots of zero polynomial");
  Z q = K.order();
  GPoly X{K.zero(), K.one()};
  GPoly g = O.gcd(O.sub(O.powmod(X, q, F), X), F);
  std::vector<GF::E> out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> U(0, K.p - 1);
  std::function<void(const GPoly&)> split = [&](const GPoly& h) {
    int n = int(h.size()) - 1;
    if (n <= 0) return;
    if (n == 1) {
      out.push_back(K.neg(K.mul(h[0], K.inv(h[1]))));
      return;
    }
    for (;;) {
      GF::E d = K.zero();
      for (auto& c : d) c = U(rng);
      GPoly a{d, K.one()};
      GPoly b = O.sub(O.powmod(a, (q - 1) / 2, h), GPoly{K.one()});
      GPoly s = O.gcd(b, h);
      int ds = int(s.size()) - 1;
      if (ds > 0 && ds < n) {
        split(s);
        split(O.monic(O.divmod(h, s).first));
        return;
      }
    }
  };
  split(g);
  std::sort(out.begin(), out.end());
  return out;
}

GF splitting_field(const ZVec& f, u64 p) {
  int m = 1;
  for (auto& [d, e] : factor_degrees(reduce(f, p), p)) m = std::lcm(m, d);
  if (m == 1) return GF(p, Poly{0, 1});
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<u64> U(0, p - 1);
  for (;;) {
    Poly r(m + 1);
    for (auto& c : r) c = U(rng);
    r[m] = 1;
    auto fd = factor_degrees(r, p);
    if (fd.size() == 1 && fd[0] == std::make_pair(m, 1)) return GF(p, r);
  }
}

}  // namespace hcg::modp
