#include "nf/zeta.hpp"

#include <cmath>

#include "core/factor.hpp"
#include "nf/modp.hpp"

namespace hcg {

namespace {

using u64 = std::uint64_t;
using uv = std::vector<u64>;

// word-size arithmetic for p < 2^32
struct Small {
  u64 p;
  void trim(uv& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  u64 inv(u64 a) const {
    u64 r = 1, b = a % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  // a*b mod m, m monic of degree n; a, b of degree < n
  uv mulmod(const uv& a, const uv& b, const uv& m) const {
    int n = int(m.size()) - 1;
    if (a.empty() || b.empty()) return {};
    std::vector<u64> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    for (int k = int(c.size()) - 1; k >= n; --k) {
      u64 t = c[k];
      if (!t) continue;
      for (int i = 0; i < n; ++i) c[k - n + i] = (c[k - n + i] + (p - t) * m[i]) % p;
      c[k] = 0;
    }
    c.resize(std::min<size_t>(c.size(), n));
    trim(c);
    return c;
  }
  uv rem(uv a, const uv& b) const {
    int db = int(b.size()) - 1;
    u64 li = inv(b.back());
    while (int(a.size()) - 1 >= db) {
      int da = int(a.size()) - 1;
      u64 f = a[da] * li % p;
      for (int i = 0; i <= db; ++i) a[da - db + i] = (a[da - db + i] + (p - f) * b[i]) % p;
      trim(a);
    }
    return a;
  }
  uv quo(uv a, const uv& b) const {
    int db = int(b.size()) - 1;
    u64 li = inv(b.back());
    uv q(std::max(0, int(a.size()) - db), 0);
    while (int(a.size()) - 1 >= db) {
      int da = int(a.size()) - 1;
      u64 f = a[da] * li % p;
      q[da - db] = f;
      for (int i = 0; i <= db; ++i) a[da - db + i] = (a[da - db + i] + (p - f) * b[i]) % p;
      trim(a);
    }
    trim(q);
    return q;
  }
  uv gcd(uv a, uv b) const {
    trim(a), trim(b);
    while (!b.empty()) {
      uv r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.empty()) {
      u64 li = inv(a.back());
      for (auto& x : a) x = x * li % p;
    }
    return a;
  }
};

}  // namespace

std::vector<int> factor_degree_counts(const ZPoly& f, std::uint32_t p32) {
  Small S{p32};
  u64 p = p32;
  int n = deg(f);
  uv m(n + 1);
  for (int i = 0; i <= n; ++i) m[i] = modp::reduce(f[i], p);
  std::vector<int> cnt(n + 1, 0);
  if (n == 1) {
    cnt[1] = 1;
    return cnt;
  }
  // Frobenius: x^p mod m by square and multiply, then columns x^{ip}
  uv x{0, 1}, xp{1};
  for (int b = 63 - __builtin_clzll(p); b >= 0; --b) {
    xp = S.mulmod(xp, xp, m);
    if ((p >> b) & 1) xp = S.mulmod(xp, x, m);
  }
  std::vector<uv> cols(n);
  cols[0] = uv{1};
  for (int i = 1; i < n; ++i) cols[i] = S.mulmod(cols[i - 1], xp, m);
  auto frob = [&](const uv& a) {
    uv r(n, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (size_t j = 0; j < cols[i].size(); ++j) r[j] = (r[j] + a[i] * cols[i][j]) % p;
    }
    S.trim(r);
    return r;
  };
  uv rest = m, h = xp;
  int left = n;
  for (int d = 1; d <= n && left > 0; ++d) {
    if (2 * d > left) {
      cnt[left] += 1;
      break;
    }
    uv hm = h;
    hm.resize(std::max<size_t>(hm.size(), 2), 0);
    hm[1] = (hm[1] + p - 1) % p;
    S.trim(hm);
    uv g = S.gcd(hm, rest);
    int dg = int(g.size()) - 1;
    if (dg > 0) {
      cnt[d] += dg / d;
      rest = S.quo(rest, g);
      left -= dg;
    }
    h = frob(h);  // x^{p^{d+1}} mod m; reducing mod rest is not needed for the gcd
  }
  return cnt;
}

long double euler_factor2(const Splitting& s) {
  long double r = 1, p = mpz_get_d(s.p.get_mpz_t());
  for (auto& [f, e] : s.fe) r /= (1.0L - std::pow(p, -2.0L * f));
  return r;
}

Zeta2Result zeta2(const NumberField& F, std::uint64_t P) {
  require(P >= 2 && P < (1ULL << 32), Code::domain, "prime bound must lie in [2, 2^32)");
  Zeta2Result R;
  R.bound = P;
  auto primes = primes_upto(uint32_t(P));
  Z pd = F.poly_disc;
  long double prod = 1, widen = 1;
  int n = F.n;
  for (uint32_t p : primes) {
    bool bad = mpz_divisible_ui_p(pd.get_mpz_t(), p);
    long double fac;
    if (!bad || n == 1) {
      if (n == 1) {
        fac = 1.0L / (1.0L - 1.0L / ((long double)p * p));
      } else {
        auto cnt = factor_degree_counts(F.f, p);
        fac = 1;
        for (int d = 1; d <= n; ++d)
          for (int k = 0; k < cnt[d]; ++k) fac /= (1.0L - std::pow((long double)p, -2.0L * d));
      }
    } else {
      Splitting s = splitting_type(F, Z(static_cast<unsigned long>(p)));
      if (s.flagged) {
        // local factor lies in [1, (1 - p^-2)^-n]
        R.bracketed_primes.push_back(Z(static_cast<unsigned long>(p)));
        fac = 1;
        widen *= std::pow(1.0L - 1.0L / ((long double)p * p), -(long double)n);
      } else {
        fac = euler_factor2(s);
      }
    }
    prod *= fac;
  }
  long double Pl = (long double)P;
  long double tail = n * 2.51L / (Pl * std::log(Pl)) / (1.0L - 1.0L / (Pl * Pl));
  long double rnd = 4.0L * primes.size() * (n + 2) * 1.1e-19L;  // accumulated long double rounding
  R.lower = prod * (1 - rnd);
  R.upper = prod * widen * std::exp(tail) * (1 + rnd);
  R.z.value = (R.lower + R.upper) / 2;
  R.z.err = (R.upper - R.lower) / 2;
  return R;
}

VolumeResult covolume(const NumberField& F, const VolumeConfig& cfg, std::uint64_t P) {
  require(F.r2 == 1, Code::unsupported, "covolume: only signature (r1, 1) is supported");
  require(cfg.D_all_real_ramified, Code::unsupported, "covolume: D must be ramified at every real place");
  require(cfg.delta_D_norm == 1 && cfg.level_norm == 1, Code::unsupported,
          "covolume: only delta_D = (1) and N = (1) are supported");
  VolumeResult V;
  V.zeta = zeta2(F, P);
  long double d = std::fabs(mpz_get_d(F.disc.get_mpz_t()));
  int r1 = F.r1;
  long double pi = 3.141592653589793238462643383279502884L;
  long double c = std::pow(d, 1.5L) / (std::pow(2.0L, 2 * r1 + 4) * std::pow(pi, 2 * r1 + 2));
  V.vol.value = c * V.zeta.z.value;
  V.vol.err = c * V.zeta.z.err + std::fabs(V.vol.value) * 1e-17L;
  return V;
}

}  // namespace hcg
