#include "nf/sset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>

#include "core/factor.hpp"
#include "lattice/linalg.hpp"
#include "nf/modp.hpp"

namespace hcg {

std::vector<std::vector<int>> balanced_collections(const std::vector<std::pair<int, int>>& pairing, int n) {
  std::vector<int> seen(n, 0);
  for (auto& [a, b] : pairing) {
    require(a >= 0 && a < n && b >= 0 && b < n && a != b, Code::validation, "pairing index out of range");
    ++seen[a], ++seen[b];
  }
  for (int s : seen) require(s == 1, Code::validation, "pairing is not a perfect matching");
  size_t m = pairing.size();
  require(m < 31, Code::unsupported, "too many pairs");
  std::vector<std::vector<int>> out;
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    std::vector<int> h(n, 0);
    for (size_t i = 0; i < m; ++i) h[(mask >> i) & 1 ? pairing[i].second : pairing[i].first] = 1;
    out.push_back(h);
  }
  return out;
}

bool is_balanced(const std::vector<int>& h, const std::vector<std::pair<int, int>>& pairing) {
  for (auto& [a, b] : pairing) {
    if (a >= int(h.size()) || b >= int(h.size())) return false;
    if ((h[a] != 0 && h[a] != 1) || h[a] + h[b] != 1) return false;
  }
  return true;
}

ZPoly lreduce(const ZPoly& a0, const ZPoly& g) {
  ZPoly a = a0;
  trim(a);
  int n = deg(g);
  for (int k = deg(a); k >= n; --k) {
    Z t = a[k];
    if (t == 0) continue;
    for (int i = 0; i <= n; ++i) a[k - n + i] -= t * g[i];
  }
  trim(a);
  return a;
}

ZPoly lmul(const ZPoly& a, const ZPoly& b, const ZPoly& g) { return lreduce(pmul(a, b), g); }

ZPoly lcompose(const ZPoly& f, const ZPoly& a, const ZPoly& g) {
  ZPoly r;
  for (size_t i = f.size(); i-- > 0;) {
    r = lmul(r, a, g);
    if (r.empty()) r.push_back(0);
    r[0] += f[i];
    trim(r);
  }
  return r;
}

ZPoly linv(const ZPoly& a, const ZPoly& g) {
  int n = deg(g);
  QMat M(n, n);
  ZPoly col = lreduce(a, g);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) M(i, j) = i < int(col.size()) ? Q(col[i]) : Q(0);
    ZPoly x{0, 1};
    col = lmul(col, x, g);
  }
  QVec e(n, 0);
  e[0] = 1;
  auto s = solve(M, e);
  require(s.has_value(), Code::domain, "element is not invertible");
  ZPoly r;
  for (auto& q : *s) {
    require(q.get_den() == 1, Code::domain, "inverse is not integral");
    r.push_back(q.get_num());
  }
  trim(r);
  return r;
}

namespace {

struct Numeric {
  std::vector<std::pair<int, int>> pairs;
  std::vector<Cx> roots;
};

Numeric embed(const SSetInput& in) {
  Numeric N;
  N.roots = complex_roots(in.L_poly);
  int m = int(N.roots.size());
  std::vector<Cx> a(m);
  QPoly al = to_qpoly(in.alpha_in_L);
  for (int j = 0; j < m; ++j) a[j] = peval(al, N.roots[j]);
  Real tol = Real(1e-8);
  std::vector<int> used(m, 0);
  for (int j = 0; j < m; ++j) {
    if (used[j]) continue;
    int partner = -1;
    for (int k = j + 1; k < m; ++k)
      if (!used[k] && cabs(a[j] - a[k]) < tol) {
        require(partner < 0, Code::precision, "sset: embeddings of L do not pair uniquely over F");
        partner = k;
      }
    require(partner >= 0, Code::validation, "sset: embedding without partner over F");
    used[j] = used[partner] = 1;
    N.pairs.push_back({j, partner});
  }
  return N;
}

Cx yh(const Numeric& N, unsigned long mask, const ZPoly& u) {
  QPoly uq = to_qpoly(u);
  Cx r(Real(1));
  for (size_t i = 0; i < N.pairs.size(); ++i) {
    int j = (mask >> i) & 1 ? N.pairs[i].second : N.pairs[i].first;
    r = r * peval(uq, N.roots[j]);
  }
  return r;
}

struct GroupNorms {
  // pattern of generators with y_h(u) != 1  ->  (h masks, Q_U(u) for u in pattern)
  std::map<std::vector<int>, std::pair<std::vector<unsigned long>, std::vector<Z>>> groups;
  std::vector<unsigned long> trivial;  // h with y_h(u) = 1 for every generator
};

GroupNorms norms_at(const SSetInput& in, const std::vector<ZPoly>& units, unsigned digits) {
  PrecisionScope ps(digits);
  Numeric N = embed(in);
  size_t m = N.pairs.size();
  Real one_tol = pow(Real(10), -int(digits) / 2);
  GroupNorms G;
  std::map<std::vector<int>, std::vector<unsigned long>> byU;
  std::vector<std::vector<Cx>> Y(1UL << m);
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    std::vector<int> U;
    for (size_t k = 0; k < units.size(); ++k) {
      Cx y = yh(N, mask, units[k]);
      Y[mask].push_back(y);
      if (cabs(y - Cx(Real(1))) > one_tol) U.push_back(int(k));
    }
    if (U.empty()) G.trivial.push_back(mask);
    else byU[U].push_back(mask);
  }
  for (auto& [U, masks] : byU) {
    std::vector<Z> vals;
    for (int k : U) {
      Cx prod(Real(1));
      for (auto mask : masks) prod = prod * (Y[mask][k] - Cx(Real(1)));
      Z z = round_to_z(prod.re);
      Real dev = abs(prod.re - to_real(z)) + abs(prod.im);
      require(dev < Real(1e-6), Code::precision, "sset: norm expression is not close to an integer");
      vals.push_back(z);
    }
    G.groups[U] = {masks, vals};
  }
  return G;
}

// magnitude estimate (decimal digits) of the largest norm expression
unsigned digits_needed(const SSetInput& in, const std::vector<ZPoly>& units) {
  PrecisionScope ps(40);
  Numeric N = embed(in);
  size_t m = N.pairs.size();
  double total = 0;
  for (auto& u : units) {
    double s = 0;
    for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
      Cx y = yh(N, mask, u);
      double a = cabs(y - Cx(Real(1))).convert_to<double>();
      s += std::log10(std::max(a, 1.0));
    }
    total = std::max(total, s);
  }
  return unsigned(total) + 50;
}

GroupNorms certified_norms(const SSetInput& in, const std::vector<ZPoly>& units) {
  unsigned d = digits_needed(in, units);
  for (int attempt = 0; attempt < 4; ++attempt, d *= 2) {
    try {
      GroupNorms a = norms_at(in, units, d), b = norms_at(in, units, d + 20);
      // masks depend on root order, which may differ between precisions; compare the norms only
      bool same = a.trivial.empty() == b.trivial.empty() && a.groups.size() == b.groups.size();
      if (same)
        for (auto& [U, v] : a.groups) {
          auto it = b.groups.find(U);
          if (it == b.groups.end() || it->second.second != v.second) same = false;
        }
      if (same) return a;
      if (std::getenv("HCG_DEBUG")) std::fprintf(stderr, "sset: disagreement at %u digits\n", d);
    } catch (const Error& e) {
      if (std::getenv("HCG_DEBUG")) std::fprintf(stderr, "sset: %s at %u digits\n", e.what(), d);
      if (e.code != Code::precision) throw;
    }
  }
  fail(Code::precision, "sset: norm expressions did not stabilise under precision doubling");
}

// exact test at an odd prime p not dividing disc(L_poly)
bool prime_in_S(const SSetInput& in, const std::vector<ZPoly>& units, modp::u64 p) {
  modp::GF K = modp::splitting_field(in.L_poly, p);
  auto roots = modp::roots_in(K, in.L_poly);
  require(int(roots.size()) == deg(in.L_poly), Code::domain, "L_poly does not split in the chosen field");
  int m = int(roots.size());
  std::vector<modp::GF::E> a(m);
  for (int j = 0; j < m; ++j) a[j] = modp::eval_in(K, in.alpha_in_L, roots[j]);
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> used(m, 0);
  for (int j = 0; j < m; ++j) {
    if (used[j]) continue;
    int partner = -1;
    for (int k = j + 1; k < m; ++k)
      if (!used[k] && a[k] == a[j]) partner = k;
    if (partner < 0) return true;  // alpha collides mod p: cannot separate, keep p
    used[j] = used[partner] = 1;
    pairs.push_back({j, partner});
  }
  std::vector<std::vector<modp::GF::E>> uv(units.size());
  for (size_t k = 0; k < units.size(); ++k)
    for (int j = 0; j < m; ++j) uv[k].push_back(modp::eval_in(K, units[k], roots[j]));
  for (unsigned long mask = 0; mask < (1UL << pairs.size()); ++mask) {
    bool all = true;
    for (size_t k = 0; k < units.size() && all; ++k) {
      auto y = K.one();
      for (size_t i = 0; i < pairs.size(); ++i) y = K.mul(y, uv[k][(mask >> i) & 1 ? pairs[i].second : pairs[i].first]);
      if (y != K.one()) all = false;
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

SSetResult sset(const SSetInput& in) {
  require(in.ramified_primes_of_D == 0, Code::unsupported,
          "sset: primes ramified in D (the alpha conditions) are not supported");
  int N = deg(in.L_poly), n = deg(in.F_poly);
  require(N >= 2 && in.L_poly.back() == 1, Code::validation, "sset: L_poly must be monic of degree >= 2");
  require(N == 2 * n, Code::validation, "sset: [L:Q] must be 2 [F:Q]");
  require(lcompose(in.F_poly, in.alpha_in_L, in.L_poly).empty(), Code::validation,
          "sset: alpha_in_L is not a root of the F polynomial");
  Z pd = discriminant(in.L_poly);
  require(in.L_disc != 0 && pd % in.L_disc == 0, Code::validation, "sset: L_disc does not divide disc(L_poly)");
  Z cof = pd / in.L_disc;
  require(mpz_perfect_square_p(cof.get_mpz_t()), Code::validation, "sset: disc(L_poly)/L_disc is not a square");
  {
    auto pr = prime_divisors(in.L_disc);
    auto listed = in.L_disc_primes;
    std::sort(listed.begin(), listed.end());
    require(pr == listed, Code::validation, "sset: L_disc_primes do not match L_disc");
  }
  SSetResult R;
  std::set<Z> base(in.L_disc_primes.begin(), in.L_disc_primes.end());
  base.insert(2);
  for (auto& p : prime_divisors(in.delta_level_norm)) base.insert(p);
  R.base.assign(base.begin(), base.end());

  std::set<Z> cand;
  for (auto& M : in.moduli) {
    require(!M.units.empty(), Code::validation, "sset: modulus " + M.label + " has no unit generators");
    std::vector<ZPoly> units;
    for (auto& u : M.units) {
      ZPoly r = lreduce(u, in.L_poly);
      Z nr = resultant(in.L_poly, r.empty() ? ZPoly{0} : r);
      require(abs(nr) == 1, Code::validation, "sset: generator " + pstr(u) + " is not a unit (norm " + nr.get_str() + ")");
      units.push_back(r);
    }
    GroupNorms G = certified_norms(in, units);
    if (!G.trivial.empty()) {
      Numeric Nm;
      {
        PrecisionScope ps(40);
        Nm = embed(in);
      }
      unsigned long mask = G.trivial.front();
      R.witness_h.assign(N, 0);
      for (size_t i = 0; i < Nm.pairs.size(); ++i)
        R.witness_h[(mask >> i) & 1 ? Nm.pairs[i].second : Nm.pairs[i].first] = 1;
      R.witness_modulus = M.label;
      R.finite = false;
      R.rule = "a balanced h has prod tau(u)^h_tau = 1 for every unit generator";
      return R;
    }
    for (auto& [U, mv] : G.groups) {
      Z g = 0;
      for (auto& v : mv.second) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      for (auto& p : prime_divisors(g))
        if (!base.count(p)) cand.insert(p);
    }
    for (auto& p : cand) {
      if (std::find(R.candidates.begin(), R.candidates.end(), p) == R.candidates.end()) R.candidates.push_back(p);
    }
    for (auto& p : cand) {
      if (pd % p == 0) {
        if (std::find(R.conservative.begin(), R.conservative.end(), p) == R.conservative.end())
          R.conservative.push_back(p);
        base.insert(p);
        continue;
      }
      if (prime_in_S(in, units, modp::to_u64(p))) base.insert(p);
    }
    cand.clear();
  }
  std::sort(R.candidates.begin(), R.candidates.end());
  R.primes.assign(base.begin(), base.end());
  R.rule = "finite: no balanced h is trivial on all unit generators";
  return R;
}

}  // namespace hcg
