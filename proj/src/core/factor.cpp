#include "core/factor.hpp"

#include <algorithm>
#include <map>

namespace hcg {

bool is_probable_prime(const Z& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 32) > 0; }

std::vector<uint32_t> primes_upto(uint32_t bound) {
  std::vector<uint32_t> ps;
  if (bound < 2) return ps;
  std::vector<bool> comp(bound + 1, false);
  for (uint64_t i = 2; i <= bound; ++i) {
    if (comp[i]) continue;
    ps.push_back(uint32_t(i));
    for (uint64_t j = i * i; j <= bound; j += i) comp[j] = true;
  }
  return ps;
}

namespace {

// Brent's variant of Pollard rho; n odd composite
Z rho(const Z& n, unsigned long c0) {
  for (unsigned long c = c0;; ++c) {
    Z y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1, m = 64;
    auto f = [&](const Z& a) {
      Z t = a * a + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Z d = abs(x - y);
          q = q * d;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Z d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const Z& n, std::map<Z, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  // perfect powers defeat rho's cycle detection less often than they slow it; peel them
  for (unsigned long k = 2; k <= 6; ++k) {
    Z root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
      std::map<Z, int> sub;
      split(root, sub);
      for (auto& [p, e] : sub) out[p] += e * int(k);
      return;
    }
  }
  Z d = rho(n, 1);
  split(d, out);
  split(Z(n / d), out);
}

}  // namespace

std::vector<std::pair<Z, int>> factor(const Z& n0) {
  require(n0 != 0, Code::domain, "factor: zero");
  Z n = abs(n0);
  std::map<Z, int> out;
  static const std::vector<uint32_t> small = primes_upto(10000);
  for (uint32_t p : small) {
    if (n == 1) break;
    if (Z(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out[Z(p)] += 1;
      n /= p;
    }
  }
  split(n, out);
  return {out.begin(), out.end()};
}

std::vector<Z> prime_divisors(const Z& n) {
  std::vector<Z> ps;
  for (auto& [p, e] : factor(n)) ps.push_back(p);
  return ps;
}

Z squarefree_part(const Z& n) {
  require(n != 0, Code::domain, "squarefree part of zero");
  Z s = n < 0 ? -1 : 1;
  for (auto& [p, e] : factor(n))
    if (e % 2) s *= p;
  return s;
}

}  // namespace hcg
