#include "nf/poly.hpp"

#include <algorithm>
#include <functional>

#include "lattice/linalg.hpp"
#include "nf/modp.hpp"

namespace hcg {

ZPoly zpoly(const std::vector<std::string>& coeffs) {
  ZPoly p;
  for (auto& s : coeffs) p.push_back(parse_z(s));
  trim(p);
  return p;
}

QPoly to_qpoly(const ZPoly& p) { return QPoly(p.begin(), p.end()); }

template <class T>
static std::vector<T> mul_impl(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

ZPoly pmul(const ZPoly& a, const ZPoly& b) { return mul_impl(a, b); }
QPoly pmul(const QPoly& a, const QPoly& b) { return mul_impl(a, b); }

QPoly padd(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  trim(c);
  return c;
}

QPoly psub(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

ZPoly deriv(const ZPoly& p) {
  ZPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * long(i));
  trim(d);
  return d;
}

QPoly deriv(const QPoly& p) {
  QPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * long(i));
  trim(d);
  return d;
}

std::pair<QPoly, QPoly> pdivmod(const QPoly& a0, const QPoly& b0) {
  QPoly a = a0, b = b0;
  trim(a), trim(b);
  require(!b.empty(), Code::domain, "polynomial division by zero");
  int db = deg(b);
  QPoly q(std::max(0, deg(a) - db + 1));
  Q lc = b.back();
  while (deg(a) >= db) {
    int da = deg(a);
    Q f = a[da] / lc;
    q[da - db] = f;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

QPoly pgcd(QPoly a, QPoly b) {
  trim(a), trim(b);
  while (!b.empty()) {
    auto r = pdivmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Q lc = a.back();
    for (auto& x : a) x /= lc;
  }
  return a;
}

std::optional<ZPoly> exact_div(const ZPoly& a, const ZPoly& b) {
  auto [q, r] = pdivmod(to_qpoly(a), to_qpoly(b));
  if (!r.empty()) return std::nullopt;
  ZPoly z;
  for (auto& x : q) {
    if (x.get_den() != 1) return std::nullopt;
    z.push_back(x.get_num());
  }
  return z;
}

Z content(const ZPoly& p) {
  Z g = 0;
  for (auto& x : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

ZPoly primpart(const QPoly& p) {
  ZPoly z = primitive(p);
  trim(z);
  if (!z.empty() && z.back() < 0)
    for (auto& x : z) x = -x;
  return z;
}

Q peval(const QPoly& p, const Q& x) {
  Q r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

Z peval(const ZPoly& p, const Z& x) {
  Z r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

Real peval(const ZPoly& p, const Real& x) {
  Real r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + to_real(p[i]);
  return r;
}

Cx peval(const QPoly& p, const Cx& x) {
  Cx r;
  for (size_t i = p.size(); i-- > 0;) r = r * x + Cx(to_real(p[i]));
  return r;
}

std::string pstr(const ZPoly& p) {
  std::string s;
  for (int i = deg(p); i >= 0; --i) {
    if (p[i] == 0) continue;
    Z c = p[i];
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    Z a = abs(c);
    if (a != 1 || i == 0) s += a.get_str();
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Z resultant(const ZPoly& a0, const ZPoly& b0) {
  ZPoly a = a0, b = b0;
  trim(a), trim(b);
  int m = deg(a), n = deg(b);
  require(m >= 0 && n >= 0, Code::domain, "resultant of zero polynomial");
  if (m == 0 && n == 0) return 1;
  int N = m + n;
  ZMat S(N, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) S(i, i + j) = a[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) S(n + i, i + j) = b[n - j];
  return det_bareiss(S);
}

Z discriminant(const ZPoly& f) {
  int n = deg(f);
  require(n >= 1, Code::domain, "discriminant of a constant");
  Z r = resultant(f, deriv(f));
  Z d = r / f[n];
  if ((long(n) * (n - 1) / 2) % 2) d = -d;
  return d;
}

namespace {

std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> s{f, deriv(f)};
  while (deg(s.back()) > 0) {
    QPoly r = pdivmod(s[s.size() - 2], s.back()).second;
    if (r.empty()) break;
    for (auto& x : r) x = -x;
    s.push_back(r);
  }
  return s;
}

int sign_changes(const std::vector<QPoly>& s, const Q& x) {
  int ch = 0, last = 0;
  for (auto& p : s) {
    Q v = peval(p, x);
    int sg = sgn(v);
    if (sg == 0) continue;
    if (last && sg != last) ++ch;
    last = sg;
  }
  return ch;
}

Q cauchy_bound(const QPoly& f) {
  int n = deg(f);
  Q m = 0;
  for (int i = 0; i < n; ++i) m = std::max(m, Q(abs(f[i] / f[n])));
  return m + 1;
}

}  // namespace

int count_real_roots(const QPoly& f) {
  auto s = sturm_chain(f);
  Q b = cauchy_bound(f);
  return sign_changes(s, -b) - sign_changes(s, b);
}

std::vector<std::pair<Q, Q>> isolate_real_roots(const QPoly& f) {
  auto s = sturm_chain(f);
  Q b = cauchy_bound(f);
  std::vector<std::pair<Q, Q>> out;
  std::function<void(Q, Q, int, int)> rec = [&](Q lo, Q hi, int vlo, int vhi) {
    int n = vlo - vhi;
    if (n == 0) return;
    if (n == 1) {
      out.push_back({lo, hi});
      return;
    }
    Q mid = (lo + hi) / 2;
    int vm = sign_changes(s, mid);
    rec(lo, mid, vlo, vm);
    rec(mid, hi, vm, vhi);
  };
  rec(-b, b, sign_changes(s, -b), sign_changes(s, b));
  return out;
}

int sign_at_root(const QPoly& g, const QPoly& f, std::pair<Q, Q>& iv) {
  auto s = sturm_chain(f);
  // g vanishes at the root iff gcd(f, g) has a root there
  QPoly h = pgcd(f, g);
  if (deg(h) > 0) {
    auto sh = sturm_chain(h);
    if (sign_changes(sh, iv.first) - sign_changes(sh, iv.second) > 0) return 0;
  }
  auto sg = sturm_chain(g);
  for (int it = 0; it < 4000; ++it) {
    if (deg(g) <= 0) return sgn(g.empty() ? Q(0) : g[0]);
    int roots_g = sign_changes(sg, iv.first) - sign_changes(sg, iv.second);
    if (roots_g == 0) {
      Q v = peval(g, iv.second);
      if (v != 0) return sgn(v);
    }
    Q mid = (iv.first + iv.second) / 2;
    if (sign_changes(s, iv.first) - sign_changes(s, mid) == 1) iv.second = mid;
    else iv.first = mid;
  }
  fail(Code::precision, "sign_at_root: interval refinement did not separate");
}

std::vector<Cx> complex_roots(const ZPoly& f0) {
  ZPoly f = f0;
  trim(f);
  int n = deg(f);
  require(n >= 1, Code::domain, "complex_roots of a constant");
  QPoly fq = to_qpoly(f), dq = deriv(fq);
  Real eps = pow(Real(10), -int(Real::default_precision()) + 5);
  std::vector<Cx> z(n);
  Real R = to_real(cauchy_bound(fq));
  for (int k = 0; k < n; ++k) {
    Real th = (Real(2) * acos(Real(-1)) * k) / n + Real(0.4);
    z[k] = Cx(R * Real(0.5) * cos(th), R * Real(0.5) * sin(th));
  }
  for (int it = 0; it < 5000; ++it) {
    Real maxstep = 0;
    for (int k = 0; k < n; ++k) {
      Cx p = peval(fq, z[k]), d = peval(dq, z[k]);
      if (abs2(p) == 0) continue;
      Cx ratio = p / d;
      Cx s;
      for (int j = 0; j < n; ++j)
        if (j != k) s = s + Cx(Real(1)) / (z[k] - z[j]);
      Cx w = ratio / (Cx(Real(1)) - ratio * s);
      z[k] = z[k] - w;
      Real st = cabs(w) / (Real(1) + cabs(z[k]));
      if (st > maxstep) maxstep = st;
    }
    if (maxstep < eps) break;
    if (it == 4999) fail(Code::precision, "complex_roots: Aberth iteration did not converge");
  }
  // Newton polish
  for (int k = 0; k < n; ++k)
    for (int it = 0; it < 3; ++it) {
      Cx d = peval(dq, z[k]);
      if (abs2(d) == 0) break;
      z[k] = z[k] - peval(fq, z[k]) / d;
    }
  std::sort(z.begin(), z.end(), [](const Cx& a, const Cx& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return z;
}

namespace {

// Yun squarefree decomposition over Q: f = prod g_i^i
std::vector<std::pair<ZPoly, int>> squarefree_decomp(const ZPoly& f) {
  std::vector<std::pair<ZPoly, int>> out;
  QPoly a = to_qpoly(f), a1 = deriv(a);
  QPoly b = pgcd(a, a1);
  QPoly c = pdivmod(a, b).first, d = psub(pdivmod(a1, b).first, deriv(c));
  for (int i = 1; deg(c) > 0; ++i) {
    QPoly g = pgcd(c, d);
    QPoly cn = pdivmod(c, g).first;
    QPoly dn = psub(pdivmod(d, g).first, deriv(cn));
    if (deg(g) > 0) out.push_back({primpart(g), i});
    c = cn;
    d = dn;
  }
  return out;
}

// irreducible factors of a primitive squarefree f with f(0) handled generally
std::vector<ZPoly> factor_squarefree(const ZPoly& f) {
  int n = deg(f);
  if (n <= 1) return {f};
  // cheap certificate: irreducible modulo some good prime
  Z lc = f[n], disc = discriminant(f);
  for (uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL, 41ULL, 43ULL, 47ULL}) {
    if (mpz_divisible_ui_p(lc.get_mpz_t(), p) || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    auto pat = modp::factor_degrees(modp::reduce(f, p), p);
    if (pat.size() == 1 && pat[0].first == n) return {f};
  }
  // monic transform g(y) = lc^(n-1) f(y / lc)
  ZPoly g(n + 1);
  for (int i = 0; i < n; ++i) {
    Z e;
    mpz_pow_ui(e.get_mpz_t(), lc.get_mpz_t(), (unsigned long)(n - 1 - i));
    g[i] = f[i] * e;
  }
  g[n] = 1;
  // Mignotte-style bound on factor coefficients to set precision
  Z norm2 = 0;
  for (auto& x : g) norm2 += x * x;
  size_t bits = mpz_sizeinbase(norm2.get_mpz_t(), 2) / 2 + size_t(n) + 8;
  unsigned digits = unsigned(bits * 0.30103) + 40;
  std::vector<ZPoly> found;
  std::vector<int> remaining;
  std::vector<Cx> roots;
  {
    PrecisionScope ps(digits);
    roots = complex_roots(g);
  }
  for (int i = 0; i < n; ++i) remaining.push_back(i);
  ZPoly rest = g;
  // subsets in increasing size
  for (int k = 1; 2 * k <= int(remaining.size()); ++k) {
    bool again = true;
    while (again) {
      again = false;
      int m = int(remaining.size());
      if (2 * k > m) break;
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        ZPoly cand;
        {
          PrecisionScope ps(digits);
          std::vector<Cx> c{Cx(Real(1))};
          for (int t : idx) {
            const Cx& r = roots[remaining[t]];
            std::vector<Cx> nc(c.size() + 1);
            for (size_t j = 0; j < c.size(); ++j) {
              nc[j + 1] = nc[j + 1] + c[j];
              nc[j] = nc[j] - c[j] * r;
            }
            c = nc;
          }
          bool ok = true;
          for (auto& x : c) {
            if (abs(x.im) > Real(0.01)) ok = false;
            Z zr = round_to_z(x.re);
            if (abs(x.re - to_real(zr)) > Real(0.01)) ok = false;
            cand.push_back(zr);
          }
          if (!ok) cand.clear();
        }
        if (!cand.empty()) {
          auto q = exact_div(rest, cand);
          if (q) {
            found.push_back(cand);
            rest = *q;
            std::vector<int> nr;
            for (int i = 0; i < m; ++i)
              if (std::find(idx.begin(), idx.end(), i) == idx.end()) nr.push_back(remaining[i]);
            remaining = nr;
            again = true;
            break;
          }
        }
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  found.push_back(rest);
  // undo the transform: h(x) = primpart(g_factor(lc x))
  std::vector<ZPoly> out;
  for (auto& h : found) {
    QPoly hx(h.size());
    Q pw2 = 1;
    for (size_t i = 0; i < h.size(); ++i) {
      hx[i] = Q(h[i]) * pw2;
      pw2 *= Q(lc);
    }
    out.push_back(primpart(hx));
  }
  return out;
}

}  // namespace

std::vector<std::pair<ZPoly, int>> factor_z(const ZPoly& f0) {
  ZPoly f = f0;
  trim(f);
  require(deg(f) >= 0, Code::domain, "factor of zero polynomial");
  std::vector<std::pair<ZPoly, int>> out;
  if (deg(f) == 0) return out;
  for (auto& [g, e] : squarefree_decomp(primpart(to_qpoly(f))))
    for (auto& h : factor_squarefree(g)) out.push_back({h, e});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (deg(a.first) != deg(b.first)) return deg(a.first) < deg(b.first);
    return a.first < b.first;
  });
  return out;
}

bool is_irreducible(const ZPoly& f) {
  auto fs = factor_z(f);
  return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace hcg
