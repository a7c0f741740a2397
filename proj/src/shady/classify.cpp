#include "shady/classify.hpp"

#include <algorithm>
#include <map>

#include "lattice/linalg.hpp"

namespace hcg {

Kind parse_kind(const std::string& s) {
  if (s == "l2") return Kind::l2;
  if (s == "omega-all") return Kind::omega_all;
  if (s == "omega-0") return Kind::omega_0;
  if (s == "h-bullet") return Kind::h_bullet;
  if (s == "omega-i") return Kind::omega_i;
  fail(Code::validation, "unknown shady kind " + s);
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::l2: return "l2";
    case Kind::omega_all: return "omega-all";
    case Kind::omega_0: return "omega-0";
    case Kind::h_bullet: return "h-bullet";
    case Kind::omega_i: return "omega-i";
  }
  return "?";
}

bool ShadyReport::finite() const {
  for (auto& f : families)
    if (f.ker.c > 0) return false;
  return true;
}

std::vector<ZVec> ShadyReport::finite_members() const {
  std::vector<ZVec> v;
  for (auto& f : families) v.push_back(f.rep);
  std::sort(v.begin(), v.end());
  return v;
}

ZMat minus_subgroup(const Dump& d) {
  ZMat S = d.sigma;
  for (int i = 0; i < d.r; ++i) S(i, i) += 1;
  return int_kernel(S);
}

std::vector<int> default_k_coords(const Dump& d) {
  std::vector<int> c;
  for (auto& p : d.places) c.push_back(p.emb[0]);
  return c;
}

ZMat k_projection(const Dump& d, const ZMat& sub, const std::vector<int>& coords) {
  ZMat K = d.kmat(), P(int(coords.size()), d.r);
  for (size_t i = 0; i < coords.size(); ++i) {
    require(coords[i] >= 0 && coords[i] < d.m, Code::validation, "k-projection coordinate out of range");
    for (int j = 0; j < d.r; ++j) P(int(i), j) = K(coords[i], j);
  }
  return P * sub;
}

namespace {

struct Problem {
  ZMat X;                        // domain lattice, r x d
  std::vector<int> coords;       // boxed embedding classes
  Box boxes;
  std::vector<ZVec> cong;        // rows over Z^r (functionals on x), mod 2
  std::vector<int> cong_rhs;
  std::string impossible;        // non-empty: no solutions for structural reasons
  std::string rule;
};

std::vector<Z> zs(std::initializer_list<int> l) {
  std::vector<Z> v;
  for (int x : l) v.push_back(Z(x));
  return v;
}

Problem build(const Dump& d, Kind kind) {
  Problem P;
  P.X = minus_subgroup(d);
  ZMat K = d.kmat();
  auto krow = [&](int e) { return K.row(e); };
  auto box = [&](int e, std::vector<Z> b) {
    P.coords.push_back(e);
    P.boxes.push_back(std::move(b));
  };
  for (auto& p : d.places) {
    int e = p.emb[0];
    switch (kind) {
      case Kind::l2:
        if (p.kind == PlaceKind::real_ramified) {
          P.cong.push_back(krow(e));
          P.cong_rhs.push_back(1);
        } else if (p.kind == PlaceKind::real_split) {
          if (p.ramified_in_D) P.impossible = "place " + p.label + " ramifies in D but splits in L";
          ZVec a = krow(p.emb[0]), b = krow(p.emb[1]);
          for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
          P.cong.push_back(a);
          P.cong_rhs.push_back(0);
        }
        break;
      case Kind::omega_all:
      case Kind::omega_i:
      case Kind::omega_0:
        if (p.kind == PlaceKind::real_ramified) {
          if (kind == Kind::omega_0 && !p.ramified_in_D)
            P.impossible = "place " + p.label + " is ramified in L but not in D";
          box(e, zs({-1, 1}));
        } else if (p.kind == PlaceKind::real_split) {
          ZVec a = krow(p.emb[0]), b = krow(p.emb[1]);
          for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
          P.cong.push_back(a);
          P.cong_rhs.push_back(0);
        } else {
          box(e, kind == Kind::omega_0 ? zs({0}) : zs({-1, 0, 1}));
        }
        break;
      case Kind::h_bullet:
        if (p.kind == PlaceKind::real_split) P.impossible = "real place " + p.label + " is split in L";
        box(e, zs({-1, 1}));
        break;
    }
  }
  switch (kind) {
    case Kind::l2:
      P.rule = "L2: s = 0 and k odd at real places ramified in L; k + k' even at real split places";
      break;
    case Kind::omega_all:
      P.rule = "Omega-bullet: k in {-1,0,1} at complex places, k = +-1 at real places ramified in L";
      break;
    case Kind::omega_i:
      P.rule = "Omega-i: Omega-bullet conditions and degree i attainable from the per-place degrees";
      break;
    case Kind::omega_0:
      P.rule = "Omega-0: k = 0 at complex places, k = +-1 at real places ramified in both L and D";
      break;
    case Kind::h_bullet:
      P.rule = "H-bullet: all real places ramified in L, k = +-1 everywhere, all s = 0 (s_kernel)";
      P.X = P.X.c && d.s_kernel.c ? lattice_intersection(P.X, d.s_kernel) : ZMat(d.r, 0);
      break;
  }
  return P;
}

// solve A y = b over F_2; A is c x d with entries reduced mod 2
std::optional<ZVec> solve_f2(std::vector<std::vector<int>> A, std::vector<int> b, int dcols) {
  int c = int(A.size()), row = 0;
  std::vector<int> piv;
  for (int col = 0; col < dcols && row < c; ++col) {
    int s = -1;
    for (int i = row; i < c; ++i)
      if (A[i][col]) s = i;
    if (s < 0) continue;
    std::swap(A[s], A[row]);
    std::swap(b[s], b[row]);
    for (int i = 0; i < c; ++i)
      if (i != row && A[i][col]) {
        for (int j = 0; j < dcols; ++j) A[i][j] ^= A[row][j];
        b[i] ^= b[row];
      }
    piv.push_back(col);
    ++row;
  }
  for (int i = row; i < c; ++i)
    if (b[i]) return std::nullopt;
  ZVec y(dcols, 0);
  for (int i = 0; i < row; ++i) y[piv[i]] = b[i];
  return y;
}

std::pair<int, int> degree_range(const Dump& d, const ZVec& k) {
  int lo = 0, hi = 0;
  for (auto& p : d.places) {
    Z kv = k[p.emb[0]];
    if (p.kind == PlaceKind::complex) {
      if (kv == 0) hi += 3;
      else lo += 1, hi += 2;
    } else if (p.kind == PlaceKind::real_ramified) {
      if (!p.ramified_in_D) lo += 1, hi += 1;
    } else {
      hi += 2;
    }
  }
  return {lo, hi};
}

ZVec add(const ZVec& a, const ZVec& b) {
  ZVec c = a;
  for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

}  // namespace

ShadyReport classify_shady(const Dump& d, Kind kind, const ShadyContext& ctx, int degree) {
  require(kind != Kind::omega_i || degree >= 0, Code::validation, "omega-i needs a degree");
  ShadyReport R;
  R.kind = kind;
  R.degree = degree;
  Problem P = build(d, kind);
  R.rule = P.rule;
  R.coords = P.coords;
  // level: delta_{L/F} N(cond) | N delta_D, via the dump's conductor bound
  Z ND = ctx.level_norm * ctx.delta_D_norm;
  if (ctx.rel_disc_norm == 0) R.level_check = "unknown relative discriminant: not checked";
  else if (ND % (ctx.rel_disc_norm * d.conductor_bound) == 0)
    R.level_check = ctx.level_norm == 1 ? "pass (conductor bound divides N delta_D)"
                                        : "pass (conductor bound divides N delta_D; conservative for K0 levels)";
  else if (ND % ctx.rel_disc_norm != 0) {
    R.level_check = "fail: delta_{L/F} does not divide N delta_D";
    R.rule += "; level condition fails";
    return R;
  } else
    R.level_check = "conservative: conductor bound does not divide N delta_D, per-character conductors not checked";
  if (!P.impossible.empty()) {
    R.structural_block = true;
    R.rule += "; " + P.impossible;
    return R;
  }
  int dd = P.X.c;
  // congruences on y (x = X y)
  ZVec y0(dd, 0);
  ZMat Yb = ZMat::identity(dd);
  if (!P.cong.empty() && dd > 0) {
    int c = int(P.cong.size());
    std::vector<std::vector<int>> A(c, std::vector<int>(dd));
    ZMat Aint(c, dd + c);
    for (int i = 0; i < c; ++i) {
      for (int j = 0; j < dd; ++j) {
        Z s = 0;
        for (int l = 0; l < d.r; ++l) s += P.cong[i][l] * P.X(l, j);
        A[i][j] = mpz_odd_p(s.get_mpz_t()) ? 1 : 0;
        Aint(i, j) = A[i][j];
      }
      Aint(i, dd + i) = 2;
    }
    auto sol = solve_f2(A, P.cong_rhs, dd);
    if (!sol) {
      R.rule += "; parity conditions inconsistent on the minus lattice";
      return R;
    }
    y0 = *sol;
    ZMat ker = int_kernel(Aint);
    ZMat top(dd, ker.c);
    for (int i = 0; i < dd; ++i)
      for (int j = 0; j < ker.c; ++j) top(i, j) = ker(i, j);
    Yb = hnf_basis(top);
  } else if (!P.cong.empty()) {
    auto sol = solve_f2(std::vector<std::vector<int>>(P.cong.size()), P.cong_rhs, 0);
    if (!sol) {
      R.rule += "; parity conditions inconsistent on the minus lattice";
      return R;
    }
  }
  ZMat XB = P.X * Yb;
  ZVec x0 = mat_vec(P.X, y0);
  if (dd == 0) x0 = ZVec(d.r, 0);
  std::vector<std::pair<ZVec, ZVec>> points;  // (kpoint, rep)
  ZMat kerB(d.r, 0);
  if (P.coords.empty()) {
    points.push_back({{}, x0});
    kerB = XB;
  } else {
    ZMat Kc(int(P.coords.size()), d.r), K = d.kmat();
    for (size_t i = 0; i < P.coords.size(); ++i)
      for (int j = 0; j < d.r; ++j) Kc(int(i), j) = K(P.coords[i], j);
    ZMat Lam = Kc * XB;
    ZVec shift = mat_vec(Kc, x0);
    ZMat kz = XB.c ? int_kernel(Lam) : ZMat(0, 0);
    kerB = XB.c ? XB * kz : ZMat(d.r, 0);
    for (auto& p : box_points(Lam, shift, P.boxes)) {
      ZVec diff = p;
      for (size_t i = 0; i < diff.size(); ++i) diff[i] -= shift[i];
      ZVec rep = x0;
      if (XB.c) {
        auto z = lattice_coords(Lam, diff);
        require(z.has_value(), Code::domain, "box point outside the projected lattice");
        rep = add(x0, mat_vec(XB, *z));
      }
      points.push_back({p, rep});
    }
  }
  bool degen = kerB.c > 0 && d.s_kernel.c > 0 && lattice_intersection(kerB, d.s_kernel).c > 0;
  for (auto& [kp, rep] : points) {
    Family f;
    f.kpoint = kp;
    f.rep = rep;
    f.ker = kerB;
    f.degenerate = degen;
    if (kind != Kind::l2) {
      auto [lo, hi] = degree_range(d, d.k_of(rep));
      f.deg_lo = lo, f.deg_hi = hi;
      if (kind == Kind::omega_i && (degree < lo || degree > hi)) continue;
    }
    R.families.push_back(f);
  }
  R.exists = !R.families.empty();
  return R;
}

bool is_shady(const Dump& d, Kind kind, const ZVec& x, int degree, std::string* why) {
  auto no = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  require(int(x.size()) == d.r, Code::dimension, "exponent vector has the wrong length");
  ZVec sx = mat_vec(d.sigma, x);
  for (int i = 0; i < d.r; ++i)
    if (sx[i] + x[i] != 0) return no("not in the minus subgroup");
  Problem P = build(d, kind);
  if (!P.impossible.empty()) return no(P.impossible);
  if (kind == Kind::h_bullet && !(d.s_kernel.c && lattice_coords(d.s_kernel, x))) return no("s is not zero");
  ZVec k = d.k_of(x);
  for (size_t i = 0; i < P.coords.size(); ++i) {
    auto& b = P.boxes[i];
    if (std::find(b.begin(), b.end(), k[P.coords[i]]) == b.end())
      return no("k at embedding " + std::to_string(P.coords[i]) + " outside its box");
  }
  for (size_t i = 0; i < P.cong.size(); ++i) {
    Z s = 0;
    for (int l = 0; l < d.r; ++l) s += P.cong[i][l] * x[l];
    if ((mpz_odd_p(s.get_mpz_t()) ? 1 : 0) != P.cong_rhs[i]) return no("parity condition");
  }
  if (kind == Kind::omega_i) {
    auto [lo, hi] = degree_range(d, k);
    if (degree < lo || degree > hi) return no("degree not attainable");
  }
  return true;
}

bool in_solution_set(const ShadyReport& R, const ZVec& x) {
  for (auto& f : R.families) {
    ZVec diff = x;
    for (size_t i = 0; i < diff.size(); ++i) diff[i] -= f.rep[i];
    bool zero = std::all_of(diff.begin(), diff.end(), [](const Z& z) { return z == 0; });
    if (zero) return true;
    if (f.ker.c > 0 && lattice_coords(f.ker, diff)) return true;
  }
  return false;
}

CasimirResult casimir_lambda(const Dump& d, const ZVec& x) {
  ZVec sx = mat_vec(d.sigma, x);
  for (int i = 0; i < d.r; ++i)
    require(sx[i] + x[i] == 0, Code::domain, "casimir_lambda: character is not in the minus subgroup");
  ZVec k = d.k_of(x);
  QVec t = d.t_of(x), e = d.err_of(x);
  CasimirResult C;
  C.total = 0, C.err = 0;
  for (auto& p : d.places) {
    int a = p.emb[0];
    Q lam, err;
    Q ta = abs(t[a]);
    switch (p.kind) {
      case PlaceKind::complex:
        require(abs(k[a]) <= 1, Code::domain, "casimir_lambda: |k| > 1 at complex place " + p.label);
        lam = Q(1) - Q(k[a] * k[a]) + 4 * t[a] * t[a];
        err = 4 * (2 * ta * e[a] + e[a] * e[a]);
        break;
      case PlaceKind::real_ramified: {
        require(abs(k[a]) == 1, Code::domain, "casimir_lambda: |k| != 1 at real place " + p.label);
        Q m = Q(1 + abs(k[a]));
        lam = m / 2 * (1 - m / 2);
        err = 0;
        break;
      }
      case PlaceKind::real_split:
        require(((k[a] + k[p.emb[1]]) % 2) == 0, Code::domain, "casimir_lambda: parity fails at real place " + p.label);
        lam = Q(1, 4) + t[a] * t[a];
        err = 2 * ta * e[a] + e[a] * e[a];
        break;
    }
    C.per_place.push_back(lam);
    C.per_place_err.push_back(err);
    C.total += lam;
    C.err += err;
  }
  return C;
}

std::vector<Lambda> enumerate_upto(const Dump& d, const ShadyReport& R, const Q& T) {
  require(R.kind != Kind::l2, Code::unsupported, "eigenvalues are defined for the Omega and H kinds only");
  std::vector<Lambda> out;
  QMat Tm = d.tmat();
  for (auto& f : R.families) {
    int q = f.ker.c;
    if (q == 0) {
      auto C = casimir_lambda(d, f.rep);
      if (C.total <= T) {
        require(T - C.total > C.err || C.total == T, Code::precision, "eigenvalue straddles the bound");
        out.push_back({f.rep, C.total, C.err});
      }
      continue;
    }
    require(!f.degenerate, Code::undecided,
            "a free direction of the solution set has all s = 0: every eigenvalue has infinite multiplicity");
    // lambda(y) = c + |a0 + A y|^2
    std::vector<QVec> rows;
    for (auto& p : d.places) {
      if (p.kind == PlaceKind::real_ramified) continue;
      Q sc = p.kind == PlaceKind::complex ? Q(2) : Q(1);
      QVec r(d.r);
      for (int j = 0; j < d.r; ++j) r[j] = sc * Tm(p.emb[0], j);
      rows.push_back(r);
    }
    int nr = int(rows.size());
    QMat A(nr, q);
    QVec a0(nr, 0);
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j < d.r; ++j) a0[i] += rows[i][j] * Q(f.rep[j]);
      for (int c = 0; c < q; ++c) {
        Q s = 0;
        for (int j = 0; j < d.r; ++j) s += rows[i][j] * Q(f.ker(j, c));
        A(i, c) = s;
      }
    }
    QMat G(q, q);
    QVec h(q, 0);
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < q; ++j) {
        Q s = 0;
        for (int l = 0; l < nr; ++l) s += A(l, i) * A(l, j);
        G(i, j) = s;
      }
      for (int l = 0; l < nr; ++l) h[i] += A(l, i) * a0[l];
    }
    require(rank_q(G) == q, Code::undecided, "eigenvalue form is degenerate on a solution family");
    QVec y0 = *solve(G, h);
    for (auto& v : y0) v = -v;
    Q minv = 0;
    for (int l = 0; l < nr; ++l) {
      Q s = a0[l];
      for (int c = 0; c < q; ++c) s += A(l, c) * y0[c];
      minv += s * s;
    }
    auto C0 = casimir_lambda(d, f.rep);
    Q a2 = 0;
    for (auto& v : a0) a2 += v * v;
    Q cst = C0.total - a2;
    if (cst + minv > T + C0.err + 1) continue;
    // widen by the error growth until it is covered
    Q slack = C0.err + Q(1, 1000000000);
    for (int round = 0; round < 20; ++round) {
      std::vector<Lambda> got;
      Q maxerr = 0;
      Q R2 = T - cst - minv + slack;
      if (R2 >= 0)
        enumerate_ellipsoid(G, y0, R2, [&](const ZVec& y) {
          ZVec x = f.rep;
          for (int c = 0; c < q; ++c)
            if (y[c] != 0)
              for (int j = 0; j < d.r; ++j) x[j] += y[c] * f.ker(j, c);
          auto C = casimir_lambda(d, x);
          if (C.err > maxerr) maxerr = C.err;
          got.push_back({x, C.total, C.err});
        });
      if (maxerr <= slack) {
        for (auto& l : got) {
          if (l.value > T + l.err) continue;
          require(l.value + l.err <= T || l.value == T, Code::precision,
                  "eigenvalue " + to_str(l.value) + " straddles the bound at the dump precision");
          out.push_back(l);
        }
        break;
      }
      require(round < 19, Code::precision, "t error bounds too large to enumerate the ball");
      slack = 2 * maxerr;
    }
  }
  std::sort(out.begin(), out.end(), [](const Lambda& a, const Lambda& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.x < b.x;
  });
  return out;
}

std::vector<Cluster> cluster(const Dump& d, const std::vector<Lambda>& ls) {
  std::vector<Cluster> out;
  auto same = [&](const ZVec& a, const ZVec& b) {
    ZVec ka = d.k_of(a), kb = d.k_of(b);
    for (auto& p : d.places)
      if (abs(ka[p.emb[0]]) != abs(kb[p.emb[0]])) return false;
    ZVec dm = a, dp = a;
    for (size_t i = 0; i < a.size(); ++i) dm[i] -= b[i], dp[i] += b[i];
    auto zero = [](const ZVec& v) { return std::all_of(v.begin(), v.end(), [](const Z& z) { return z == 0; }); };
    if (zero(dm) || zero(dp)) return true;
    if (d.s_kernel.c == 0) return false;
    return lattice_coords(d.s_kernel, dm).has_value() || lattice_coords(d.s_kernel, dp).has_value();
  };
  for (auto& l : ls) {
    Q lo = l.value - l.err, hi = l.value + l.err;
    if (!out.empty() && lo <= out.back().hi) {
      auto& c = out.back();
      c.members.push_back(l.x);
      if (hi > c.hi) c.hi = hi;
      if (!same(c.members.front(), l.x)) c.exact = false;
    } else {
      out.push_back({lo, hi, l.value, {l.x}, true});
    }
  }
  return out;
}

std::vector<Cluster> first_eigenvalues(const Dump& d, const ShadyReport& R, size_t n, Q T, Q Tmax) {
  for (;;) {
    auto cl = cluster(d, enumerate_upto(d, R, T));
    std::vector<Cluster> done;
    for (auto& c : cl)
      if (c.hi < T) done.push_back(c);
    if (done.size() >= n || T >= Tmax) {
      if (done.size() > n) done.resize(n);
      return done;
    }
    T *= 2;
  }
}

long count_upto(const Dump& d, const ShadyReport& R, const Q& T) { return long(enumerate_upto(d, R, T).size()); }

std::optional<Certificate> non_isospectral_certificate(const Dump& d, const ShadyContext& ctx, const CertContext& cc,
                                                       int degree, Q Tmax) {
  require(cc.D_all_real_ramified && cc.delta_D_norm == 1 && cc.C_order == 2, Code::validation,
          "certificate preconditions: D ramified at every real place, delta_D = (1), |C| = 2");
  require(degree >= 0, Code::validation, "degree must be non-negative");
  ShadyReport R = classify_shady(d, Kind::omega_i, ctx, degree);
  if (!R.exists) return std::nullopt;
  Q T = 16;
  for (;;) {
    auto cl = cluster(d, enumerate_upto(d, R, T));
    for (auto& c : cl) {
      if (c.hi >= T) break;
      require(c.exact, Code::precision,
              "eigenvalues near " + to_str(c.value) + " cannot be separated at the dump precision");
      if (c.members.size() != 2) continue;
      ZVec a = c.members[0], b = c.members[1];
      bool pair = true;
      for (size_t i = 0; i < a.size(); ++i) pair &= a[i] == -b[i];
      if (!pair) continue;
      Certificate C;
      C.degree = degree;
      C.psi = std::max(a, b);
      auto cas = casimir_lambda(d, C.psi);
      C.lambda = cas.total;
      C.err = cas.err;
      // conductor: N / N(cond) a square; cond bounded by the basis conductors involved
      Z cn = 1;
      for (int j = 0; j < d.r; ++j)
        if (C.psi[j] != 0) cn *= d.basis[j].cond_norm;
      C.conductor_square = cc.level_norm % cn == 0 && mpz_perfect_square_p(Z(cc.level_norm / cn).get_mpz_t());
      if (!C.conductor_square) continue;
      ZVec k = d.k_of(C.psi);
      QVec t = d.t_of(C.psi);
      std::string ex;
      for (auto& p : d.places) {
        if (p.kind == PlaceKind::real_ramified) continue;
        int e = p.emb[0];
        if (!ex.empty()) ex += " + ";
        if (p.kind == PlaceKind::complex) ex += (k[e] == 0 ? "1+4t^2" : "4t^2");
        else ex += "1/4+t^2";
        (void)t;
      }
      C.lambda_expr = ex;
      C.verdict = "not " + std::to_string(degree) + "-isospectral";
      C.rule = "unique pair {Psi, Psi^-1} of Omega^" + std::to_string(degree) +
               "-shady characters at this eigenvalue, conductor condition holds (odd multiplicity lemma)";
      (void)ctx;
      return C;
    }
    if (T >= Tmax) return std::nullopt;
    T *= 2;
  }
}

}  // namespace hcg
