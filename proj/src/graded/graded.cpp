#include "graded/graded.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <sstream>

#include "core/factor.hpp"
#include "core/real.hpp"
#include "lattice/linalg.hpp"
#include "nf/modp.hpp"
#include "nf/poly.hpp"

namespace hcg {

int Grading::order() const {
  int o = 1;
  for (int x : d) o *= x;
  return o;
}

std::vector<int> Grading::tuple(int a) const {
  std::vector<int> t(d.size());
  for (size_t i = 0; i < d.size(); ++i) t[i] = a % d[i], a /= d[i];
  return t;
}

int Grading::index(const std::vector<int>& t) const {
  require(t.size() == d.size(), Code::validation, "grading element has the wrong length");
  int a = 0;
  for (size_t i = d.size(); i-- > 0;) a = a * d[i] + ((t[i] % d[i]) + d[i]) % d[i];
  return a;
}

int Grading::add(int a, int b) const {
  auto x = tuple(a), y = tuple(b);
  for (size_t i = 0; i < d.size(); ++i) x[i] += y[i];
  return index(x);
}

int Grading::neg(int a) const {
  auto x = tuple(a);
  for (auto& v : x) v = -v;
  return index(x);
}

int GradedSpec::n() const {
  int s = 0;
  for (int x : dims) s += x;
  return s;
}

int GradedSpec::off(int c) const {
  int s = 0;
  for (int b = 0; b < c; ++b) s += dims[b];
  return s;
}

QMat GradedSpec::block(const QMat& X, int from, int to) const { return hcg::block(X, off(to), off(from), dims[to], dims[from]); }

void validate_spec(const GradedSpec& s) {
  for (int x : s.C.d) require(x >= 1, Code::validation, "grading: invariant factors must be positive");
  require(int(s.dims.size()) == s.C.order(), Code::validation, "graded spec: need one dimension per grading element");
  for (int x : s.dims) require(x >= 0, Code::validation, "graded spec: negative dimension");
  int n = s.n(), G = s.C.order();
  for (size_t i = 0; i < s.gens.size(); ++i) {
    auto& g = s.gens[i];
    std::string nm = "generator " + (g.label.empty() ? std::to_string(i) : g.label);
    require(g.mat.r == n && g.mat.c == n, Code::validation, nm + ": matrix has the wrong size");
    require(g.degree >= 0 && g.degree < G, Code::validation, nm + ": degree out of range");
    require(g.partner >= 0 && g.partner < int(s.gens.size()), Code::validation, nm + ": iota partner out of range");
    auto& q = s.gens[size_t(g.partner)];
    require(q.partner == int(i), Code::validation, nm + ": iota is not an involution on generators");
    require(q.degree == s.C.neg(g.degree), Code::validation, nm + ": iota partner has the wrong degree");
    for (int b = 0; b < G; ++b)
      for (int t = 0; t < G; ++t)
        if (t != s.C.add(g.degree, b))
          require(s.block(g.mat, b, t).is_zero(), Code::validation,
                  nm + ": matrix maps M_" + std::to_string(b) + " outside M_" + std::to_string(s.C.add(g.degree, b)));
  }
  for (size_t i = 0; i < s.gens.size(); ++i)
    for (size_t j = i + 1; j < s.gens.size(); ++j)
      require(s.gens[i].mat * s.gens[j].mat == s.gens[j].mat * s.gens[i].mat, Code::validation,
              "generators " + s.gens[i].label + " and " + s.gens[j].label + " do not commute");
}

void add_w_generator(GradedSpec& s, const std::string& label, int degree, const QMat& w) {
  require(w.r == w.c && det_rational(w) != 0, Code::validation, "W generator " + label + " is not invertible");
  QMat wi = inverse(w);
  int k = int(s.gens.size());
  if (wi == w) {
    s.gens.push_back({label, degree, w, k});
    return;
  }
  s.gens.push_back({label, degree, w, k + 1});
  s.gens.push_back({label + "^-1", s.C.neg(degree), wi, k});
}

QMat word_matrix(const GradedSpec& s, const Word& w) {
  QMat m = QMat::identity(s.n());
  for (int g : w) m = m * s.gens[size_t(g)].mat;
  return m;
}

QMat element_matrix(const GradedSpec& s, const Element& e) {
  QMat m(s.n(), s.n());
  for (auto& [q, w] : e.terms) m = m + scale(word_matrix(s, w), q);
  return m;
}

namespace {

Word iota_word(const GradedSpec& s, const Word& w) {
  Word r;
  for (size_t i = w.size(); i-- > 0;) r.push_back(s.gens[size_t(w[i])].partner);
  return r;
}

QVec vec(const QMat& m) { return m.v; }

// incremental echelon form with coefficient tracking
struct Echelon {
  std::vector<QVec> rows;
  std::vector<int> piv;
  std::vector<QVec> coef;  // rows[i] = sum coef[i][k] basis_k
  int nbasis = 0;

  // returns true if v was new (and adds it as basis element nbasis-1); else fills c with v = sum c_k basis_k
  bool insert(QVec v, QVec* c = nullptr) {
    QVec cf(nbasis + 1);
    for (size_t i = 0; i < rows.size(); ++i) {
      Q lam = v[piv[i]];
      if (lam == 0) continue;
      for (size_t t = 0; t < v.size(); ++t)
        if (rows[i][t] != 0) v[t] -= lam * rows[i][t];
      for (size_t k = 0; k < coef[i].size(); ++k) cf[k] += lam * coef[i][k];
    }
    int p = -1;
    for (size_t t = 0; t < v.size(); ++t)
      if (v[t] != 0) {
        p = int(t);
        break;
      }
    if (p < 0) {
      if (c) {
        cf.resize(nbasis);
        *c = cf;
      }
      return false;
    }
    // v_residual = basis_new - sum cf_k basis_k
    QVec nc(nbasis + 1);
    for (int k = 0; k < nbasis; ++k) nc[k] = -cf[k];
    nc[nbasis] = 1;
    Q inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (auto& x : nc) x *= inv;
    rows.push_back(v);
    piv.push_back(p);
    coef.push_back(nc);
    ++nbasis;
    return true;
  }
};

QMat poly_at(const QVec& f, const QMat& X) {
  int n = X.r;
  QMat r(n, n);
  for (size_t i = f.size(); i-- > 0;) {
    r = r * X;
    for (int k = 0; k < n; ++k) r(k, k) += f[i];
  }
  return r;
}

// s with s a = 1 mod f over Q
QVec qinvmod(const QVec& a, const QVec& f) {
  QVec r0 = f, r1 = pdivmod(a, f).second, s0{}, s1{Q(1)};
  while (deg(r1) > 0) {
    auto [q, r] = pdivmod(r0, r1);
    QVec s2 = psub(s0, pmul(q, s1));
    r0 = r1, r1 = r, s0 = s1, s1 = s2;
  }
  require(deg(r1) == 0, Code::validation, "idempotent: factors are not coprime");
  Q c = 1 / r1[0];
  for (auto& x : s1) x *= c;
  return pdivmod(s1, f).second;
}

}  // namespace

Element iota(const GradedSpec& s, const Element& e) {
  Element r;
  for (auto& [q, w] : e.terms) r.terms.push_back({q, iota_word(s, w)});
  return r;
}

std::string element_str(const GradedSpec& s, const Element& e) {
  std::ostringstream o;
  bool first = true;
  for (auto& [q, w] : e.terms) {
    if (q == 0) continue;
    if (!first) o << (q > 0 ? " + " : " - ");
    else if (q < 0) o << "-";
    first = false;
    Q a = abs(q);
    bool coeff = a != 1 || w.empty();
    if (coeff) o << a.get_str();
    for (size_t i = 0; i < w.size(); ++i) o << (coeff || i ? "*" : "") << s.gens[size_t(w[i])].label;
  }
  if (first) o << "0";
  return o.str();
}

int Algebra::dim() const {
  int d = 0;
  for (auto& m : mats) d += int(m.size());
  return d;
}

Algebra algebra_closure(const GradedSpec& s) {
  validate_spec(s);
  int G = s.C.order(), n = s.n();
  Algebra A;
  A.words.assign(size_t(G), {});
  A.mats.assign(size_t(G), {});
  std::vector<Echelon> ech(static_cast<size_t>(G));
  struct Rel {
    int deg;
    Word w;
    QVec c;
  };
  std::vector<Rel> rels;
  std::deque<std::pair<int, int>> queue;
  QMat I = QMat::identity(n);
  ech[0].insert(vec(I));
  A.words[0].push_back({});
  A.mats[0].push_back(I);
  queue.push_back({0, 0});
  while (!queue.empty()) {
    auto [c, k] = queue.front();
    queue.pop_front();
    for (size_t g = 0; g < s.gens.size(); ++g) {
      int d = s.C.add(s.gens[g].degree, c);
      QMat Y = s.gens[g].mat * A.mats[c][k];
      Word w{int(g)};
      w.insert(w.end(), A.words[c][k].begin(), A.words[c][k].end());
      QVec cf;
      if (ech[d].insert(vec(Y), &cf)) {
        require(ech[d].nbasis <= n * n, Code::validation, "algebra closure did not terminate");
        A.words[d].push_back(w);
        A.mats[d].push_back(Y);
        queue.push_back({d, int(A.mats[d].size()) - 1});
      } else {
        rels.push_back({d, w, cf});
      }
    }
  }
  // iota must respect every relation among the spanning words
  std::vector<std::vector<QMat>> im(static_cast<size_t>(G));
  for (int c = 0; c < G; ++c)
    for (auto& w : A.words[c]) im[c].push_back(word_matrix(s, iota_word(s, w)));
  for (auto& r : rels) {
    QMat lhs = word_matrix(s, iota_word(s, r.w)), rhs(n, n);
    for (size_t k = 0; k < r.c.size(); ++k)
      if (r.c[k] != 0) rhs = rhs + scale(im[r.deg][k], r.c[k]);
    require(lhs == rhs, Code::validation, "iota does not descend to the algebra: relation violated by its image");
  }
  return A;
}

namespace {

QVec common_kernel(const std::vector<QMat>& ms, int cols) {
  QMat S(0, cols);
  for (auto& m : ms) S = vcat(S, m);
  if (cols == 0) return {};
  if (S.r == 0) {
    QVec v(static_cast<size_t>(cols));
    v[0] = 1;
    return v;
  }
  QMat N = nullspace(S);
  if (N.c == 0) return {};
  return N.col(0);
}

Element combo(const std::vector<Word>& words, const std::vector<long>& cf) {
  Element e;
  for (size_t i = 0; i < words.size(); ++i)
    if (cf[i] != 0) e.terms.push_back({Q(cf[i]), words[i]});
  return e;
}

QMat combo_mat(const std::vector<QMat>& ms, const std::vector<long>& cf, int r, int c) {
  QMat m(r, c);
  for (size_t i = 0; i < ms.size(); ++i)
    if (cf[i] != 0) m = m + scale(ms[i], Q(cf[i]));
  return m;
}

}  // namespace

Invertible component_invertible(const GradedSpec& s, const Algebra& A, int c, Rng& rng) {
  Invertible r;
  int n = s.n();
  auto& ms = A.mats[size_t(c)];
  auto& ws = A.words[size_t(c)];
  QVec k = common_kernel(ms, n);
  if (!k.empty()) {
    r.obstruction = k;
    return r;
  }
  for (size_t i = 0; i < ms.size(); ++i)
    if (det_rational(ms[i]) != 0) {
      r.elem = Element{{{Q(1), ws[i]}}};
      r.mat = ms[i];
      return r;
    }
  for (int t = 0; t < 64; ++t) {
    std::vector<long> cf(ms.size());
    for (auto& x : cf) x = rand_int(rng, -5, 5);
    QMat m = combo_mat(ms, cf, n, n);
    if (det_rational(m) != 0) {
      r.elem = combo(ws, cf);
      r.mat = m;
      return r;
    }
  }
  fail(Code::undecided, "no common kernel in degree " + std::to_string(c) + " but no invertible element was sampled");
}

LinkResult linked(const GradedSpec& s, const Algebra& A, int c, int cp, Rng& rng, bool random) {
  LinkResult r;
  int nc = s.dims[size_t(c)], ncp = s.dims[size_t(cp)];
  if (nc != ncp) {
    r.reason = "components have different dimensions";
    return r;
  }
  if (nc == 0) {
    r.witness = LinkWitness{c, cp, Element{{{Q(1), Word{}}}}, QMat(0, 0)};
    r.reason = "both components are zero";
    return r;
  }
  if (c == cp && !random) {
    r.witness = LinkWitness{c, cp, Element{{{Q(1), Word{}}}}, QMat::identity(nc)};
    r.reason = "identity";
    return r;
  }
  int d = s.C.add(cp, s.C.neg(c));
  auto& ws = A.words[size_t(d)];
  std::vector<QMat> bl;
  for (auto& m : A.mats[size_t(d)]) bl.push_back(s.block(m, c, cp));
  QVec k = common_kernel(bl, nc);
  if (!k.empty()) {
    r.obstruction = k;
    r.reason = "a vector of M_" + std::to_string(c) + " is killed by every element of degree " + std::to_string(d);
    return r;
  }
  auto take = [&](const std::vector<long>& cf) -> bool {
    QMat b = combo_mat(bl, cf, nc, nc);
    if (det_rational(b) == 0) return false;
    r.witness = LinkWitness{c, cp, combo(ws, cf), b};
    return true;
  };
  if (!random)
    for (size_t i = 0; i < bl.size(); ++i) {
      std::vector<long> cf(bl.size(), 0);
      cf[i] = 1;
      if (take(cf)) {
        r.reason = "single monomial";
        return r;
      }
    }
  for (int t = 0; t < 64; ++t) {
    std::vector<long> cf(bl.size());
    for (auto& x : cf) x = rand_int(rng, -5, 5);
    if (take(cf)) {
      r.reason = "random combination";
      return r;
    }
  }
  auto inv = component_invertible(s, A, d, rng);
  if (inv.elem) {
    r.witness = LinkWitness{c, cp, *inv.elem, s.block(inv.mat, c, cp)};
    r.reason = "element invertible on M";
    return r;
  }
  fail(Code::undecided, "linkage undecided between M_" + std::to_string(c) + " and M_" + std::to_string(cp));
}

bool is_polarisation(const GradedSpec& s, const QMat& P) {
  int n = s.n(), G = s.C.order();
  if (P.r != n || P.c != n || det_rational(P) == 0) return false;
  for (int a = 0; a < G; ++a)
    for (int b = 0; b < G; ++b)
      if (a != b && !s.block(P, a, b).is_zero()) return false;
  for (auto& g : s.gens)
    if (!(g.mat.transpose() * P == P * s.gens[size_t(g.partner)].mat)) return false;
  return true;
}

namespace {

bool squarefree_q(const QVec& f) { return deg(pgcd(f, deriv(f))) == 0; }

void require_reduced(const GradedSpec& s, const Algebra& A) {
  for (auto& g : s.gens)
    require(squarefree_q(min_poly(g.mat)), Code::unsupported,
            "image of the algebra is not reduced: generator " + g.label + " is not semisimple");
  for (size_t i = 0; i < A.mats[0].size(); ++i)
    require(squarefree_q(min_poly(A.mats[0][i])), Code::unsupported,
            "image of the algebra is not reduced: a degree-1 element is not semisimple");
}

struct Generic {
  Element e;
  QMat th, ith;
  QVec minpoly;
};

// an element of degree 0 generating the degree-0 image (integral coefficients)
Generic generic_element(const GradedSpec& s, const Algebra& A, Rng& rng,
                        const std::function<bool(const QVec&)>& accept = nullptr) {
  int n = s.n();
  auto& ms = A.mats[0];
  auto& ws = A.words[0];
  int dimA1 = int(ms.size());
  for (int t = 0; t < 64; ++t) {
    std::vector<long> cf(ms.size());
    for (size_t i = 0; i < cf.size(); ++i) cf[i] = t == 0 ? long(i) : rand_int(rng, -9, 9);
    Generic g;
    g.e = combo(ws, cf);
    g.th = combo_mat(ms, cf, n, n);
    g.minpoly = min_poly(g.th);
    if (deg(g.minpoly) != dimA1) continue;
    if (accept && !accept(g.minpoly)) continue;
    g.ith = element_matrix(s, iota(s, g.e));
    return g;
  }
  if (accept) fail(Code::unsupported, "no sampled generator of the degree-1 algebra has an admissible minimal polynomial");
  fail(Code::undecided, "could not sample a generator of the degree-1 algebra");
}

// idempotents of the iota-orbits of simple factors of the degree-1 image
std::vector<QMat> orbit_idempotents(const Generic& gen) {
  ZPoly mz = primpart(gen.minpoly);
  std::vector<QVec> fs;
  for (auto& [f, e] : factor_z(mz)) {
    require(e == 1, Code::unsupported, "minimal polynomial of the degree-1 algebra is not squarefree");
    QVec q = to_qpoly(f);
    Q lc = q.back();
    for (auto& x : q) x /= lc;
    fs.push_back(q);
  }
  std::vector<QMat> E, iE;
  for (auto& f : fs) {
    QVec cof = pdivmod(gen.minpoly, f).first;
    QVec e = pdivmod(pmul(cof, qinvmod(cof, f)), gen.minpoly).second;
    E.push_back(poly_at(e, gen.th));
    iE.push_back(poly_at(e, gen.ith));
  }
  std::vector<QMat> out;
  std::vector<char> used(fs.size(), 0);
  for (size_t i = 0; i < fs.size(); ++i) {
    if (used[i]) continue;
    QMat tot = E[i];
    used[i] = 1;
    size_t j = 0;
    while (j < fs.size() && !(E[j] == iE[i])) ++j;
    require(j < fs.size(), Code::validation, "iota does not permute the primitive idempotents");
    if (!used[j]) tot = tot + E[j], used[j] = 1;
    out.push_back(tot);
  }
  return out;
}

// the part of s cut out by the idempotent E (commuting with everything); B gets the homogeneous basis used
GradedSpec restrict_to(const GradedSpec& s, const QMat& E, QMat* Bout = nullptr) {
  int G = s.C.order(), n = s.n();
  GradedSpec f;
  f.C = s.C;
  std::vector<QVec> cols;
  for (int c = 0; c < G; ++c) {
    QMat b = s.block(E, c, c);
    auto rr = rref(b);
    f.dims.push_back(int(rr.pivots.size()));
    for (int p : rr.pivots) {
      QVec v(static_cast<size_t>(n));
      for (int i = 0; i < s.dims[size_t(c)]; ++i) v[size_t(s.off(c) + i)] = b(i, p);
      cols.push_back(v);
    }
  }
  QMat B(n, int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) B.set_col(int(j), cols[j]);
  for (auto& g : s.gens) {
    QMat XB = g.mat * B, Y(B.c, B.c);
    for (int j = 0; j < B.c; ++j) {
      auto y = solve(B, XB.col(j));
      require(bool(y), Code::validation, "idempotent does not cut out a submodule");
      Y.set_col(j, *y);
    }
    f.gens.push_back({g.label, g.degree, Y, g.partner});
  }
  if (Bout) *Bout = B;
  return f;
}

// one iota-stable factor: data for the constructive polarisation apart from random choices
struct FactorData {
  GradedSpec f;
  QMat B;  // columns: homogeneous basis of this factor inside M
  std::vector<int> tilde, reps;
  std::vector<Invertible> T;  // per tilde element
  std::vector<QMat> nulls;    // per rep: basis of the adjointness solutions, as n_d^2 columns
};

struct PolData {
  bool ok = false;
  std::string reason;
  std::vector<FactorData> parts;
};

PolData pol_data(const GradedSpec& s, const Algebra& A, Rng& rng) {
  require_reduced(s, A);
  PolData pd;
  int G = s.C.order();
  auto gen = generic_element(s, A, rng);
  for (int c = 0; c < G; ++c) {
    if (s.dims[size_t(c)] == 0) continue;
    if (char_poly(s.block(gen.th, c, c)) != char_poly(s.block(gen.ith, c, c))) {
      pd.reason = "M_" + std::to_string(c) + " is not self-dual over the degree-1 algebra";
      return pd;
    }
  }
  for (auto& E : orbit_idempotents(gen)) {
    FactorData fd;
    fd.f = restrict_to(s, E, &fd.B);
    auto& f = fd.f;
    auto Af = algebra_closure(f);
    for (int c = 0; c < G; ++c) {
      auto inv = component_invertible(f, Af, c, rng);
      if (inv.elem) {
        fd.tilde.push_back(c), fd.T.push_back(inv);
      } else if (!Af.mats[size_t(c)].empty()) {
        pd.reason = "degree " + std::to_string(c) + " acts nonzero but not invertibly on an iota-stable factor";
        return pd;
      }
    }
    std::vector<char> cov(static_cast<size_t>(G), 0);
    for (int c = 0; c < G; ++c) {
      if (cov[size_t(c)]) continue;
      fd.reps.push_back(c);
      for (int t : fd.tilde) cov[size_t(f.C.add(t, c))] = 1;
    }
    for (int d : fd.reps) {
      int m = f.dims[size_t(d)];
      QMat Eq(0, m * m);
      for (size_t i = 0; i < Af.mats[0].size(); ++i) {
        QMat X = f.block(Af.mats[0][i], d, d);
        QMat Y = f.block(word_matrix(f, iota_word(f, Af.words[0][i])), d, d);
        // (X^T P - P Y)_{ab} = sum_k X_{ka} P_{kb} - P_{ak} Y_{kb}
        QMat rows(m * m, m * m);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            for (int k = 0; k < m; ++k) {
              rows(a * m + b, k * m + b) += X(k, a);
              rows(a * m + b, a * m + k) -= Y(k, b);
            }
        Eq = vcat(Eq, rows);
      }
      fd.nulls.push_back(m == 0 ? QMat(0, 0) : (Eq.r ? nullspace(Eq) : QMat::identity(m * m)));
    }
    pd.parts.push_back(std::move(fd));
  }
  pd.ok = true;
  return pd;
}

// P_cd = (T_c^-1)^T P_d iota(T_c) on a factor, given the P_d; S is Q or Cx
template <class S, class Conv>
std::vector<Mat<S>> spread(const FactorData& fd, const std::vector<Mat<S>>& Pd, Conv conv) {
  auto& f = fd.f;
  std::vector<Mat<S>> out(static_cast<size_t>(f.C.order()));
  for (size_t ri = 0; ri < fd.reps.size(); ++ri) {
    int d = fd.reps[ri];
    for (size_t ti = 0; ti < fd.tilde.size(); ++ti) {
      int e = f.C.add(fd.tilde[ti], d);
      QMat Ti = inverse(fd.T[ti].mat), iT = element_matrix(f, iota(f, *fd.T[ti].elem));
      out[size_t(e)] = conv(f.block(Ti, e, d).transpose()) * Pd[ri] * conv(f.block(iT, e, d));
    }
  }
  return out;
}

}  // namespace

Polarisation polarisable(const GradedSpec& s, const Algebra& A, Rng& rng) {
  Polarisation pol;
  auto pd = pol_data(s, A, rng);
  pol.reason = pd.reason;
  if (!pd.ok) return pol;
  int n = s.n(), G = s.C.order();
  QMat B(n, 0), D(0, 0);
  for (auto& fd : pd.parts) {
    auto& f = fd.f;
    std::vector<QMat> Pd;
    for (size_t ri = 0; ri < fd.reps.size(); ++ri) {
      int d = fd.reps[ri], m = f.dims[size_t(d)];
      QMat P(m, m);
      if (m > 0) {
        auto& N = fd.nulls[ri];
        bool found = false;
        for (int t = 0; t < 64 && !found && N.c > 0; ++t) {
          for (auto& x : P.v) x = 0;
          for (int k = 0; k < N.c; ++k) {
            long a = t == 0 ? (k == 0) : rand_int(rng, -5, 5);
            if (a)
              for (int i = 0; i < m * m; ++i) P.v[size_t(i)] += a * N(i, k);
          }
          found = det_rational(P) != 0;
        }
        if (!found) {
          pol.reason = "no non-degenerate iota-adjoint pairing on M_" + std::to_string(d) + " of a factor";
          return pol;
        }
      }
      Pd.push_back(P);
    }
    auto blocks = spread(fd, Pd, [](const QMat& m) { return m; });
    // assemble in the factor's own basis, which is ordered by component
    QMat Pf(f.n(), f.n());
    for (int c = 0; c < G; ++c)
      for (int i = 0; i < f.dims[size_t(c)]; ++i)
        for (int j = 0; j < f.dims[size_t(c)]; ++j) Pf(f.off(c) + i, f.off(c) + j) = blocks[size_t(c)](i, j);
    B = hcat(B, fd.B);
    QMat Z0(D.r, Pf.c), Z1(Pf.r, D.c);
    D = vcat(hcat(D, Z0), hcat(Z1, Pf));
  }
  QMat Bi = inverse(B);
  QMat P = Bi.transpose() * D * Bi;
  require(is_polarisation(s, P), Code::validation, "constructed pairing is not a polarisation");
  for (auto& fd : pd.parts) {
    pol.tilde_C = fd.tilde;
    pol.coset_reps = fd.reps;
    if (fd.f.n() > 0) break;
  }
  pol.ok = true;
  pol.P = P;
  return pol;
}

Q pairing_quotient(const GradedSpec& s, const QMat& P, int c, int cp) {
  return det_rational(s.block(P, c, c)) / det_rational(s.block(P, cp, cp));
}

GradedRegConst regconst_graded(const GradedSpec& s, int c, int cp, Rng& rng, Ring ring, const Z& p, bool random_link) {
  auto A = algebra_closure(s);
  auto pol = polarisable(s, A, rng);
  require(pol.ok, Code::domain, "module is not polarisable: " + pol.reason);
  auto L = linked(s, A, c, cp, rng, random_link);
  require(bool(L.witness), Code::domain,
          "M_" + std::to_string(c) + " and M_" + std::to_string(cp) + " are not linked: " + L.reason);
  GradedRegConst r;
  r.witness = *L.witness;
  QMat iT = s.block(element_matrix(s, iota(s, r.witness.elem)), cp, c);
  Q a = det_rational(r.witness.block), b = det_rational(iT);
  require(b != 0, Code::validation, "iota of the link is not invertible");
  r.value = a / b;
  r.cls = square_class(r.value, ring, p);
  return r;
}

namespace {

Cx cdet(Mat<Cx> M) {
  int n = M.r;
  Cx d(Real(1));
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (abs2(M(i, k)) > abs2(M(piv, k))) piv = i;
    if (abs2(M(piv, k)) == 0) return Cx();
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(M(k, j), M(piv, j));
      d = Cx(Real(0)) - d;
    }
    d = d * M(k, k);
    for (int i = k + 1; i < n; ++i) {
      Cx f = M(i, k) / M(k, k);
      for (int j = k; j < n; ++j) M(i, j) = M(i, j) - f * M(k, j);
    }
  }
  return d;
}

Mat<Cx> to_c(const QMat& m) {
  Mat<Cx> r(m.r, m.c);
  for (size_t i = 0; i < m.v.size(); ++i) r.v[i] = Cx(to_real(m.v[i]));
  return r;
}

Mat<Cx> operator*(const Mat<Cx>& a, const Mat<Cx>& b) {
  Mat<Cx> m(a.r, b.c);
  for (int i = 0; i < a.r; ++i)
    for (int k = 0; k < a.c; ++k)
      for (int j = 0; j < b.c; ++j) m(i, j) = m(i, j) + a(i, k) * b(k, j);
  return m;
}

}  // namespace

ComplexQuotient complex_polarisation_check(const GradedSpec& s, int c, int cp, const Q& exact, Rng& rng, int digits) {
  PrecisionScope ps{static_cast<unsigned>(digits)};
  auto A = algebra_closure(s);
  auto pd = pol_data(s, A, rng);
  require(pd.ok, Code::domain, "module is not polarisable: " + pd.reason);
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  Cx num(Real(1)), den(Real(1));
  for (auto& fd : pd.parts) {
    auto& f = fd.f;
    std::vector<Mat<Cx>> Pd;
    for (size_t ri = 0; ri < fd.reps.size(); ++ri) {
      int d = fd.reps[ri], m = f.dims[size_t(d)];
      Mat<Cx> P(m, m);
      if (m > 0) {
        auto& N = fd.nulls[ri];
        bool found = false;
        for (int t = 0; t < 16 && !found; ++t) {
          P = Mat<Cx>(m, m);
          for (int k = 0; k < N.c; ++k) {
            // irrational, non-real coefficients
            Real a = sqrt(Real(primes[rand_int(rng, 0, 11)])) * Real(rand_int(rng, 1, 5));
            Real b = sqrt(Real(primes[rand_int(rng, 0, 11)])) / Real(rand_int(rng, 1, 5));
            Cx z(a, rand_int(rng, 0, 1) ? b : Real(-b));
            for (int i = 0; i < m * m; ++i)
              if (N(i, k) != 0) P.v[size_t(i)] = P.v[size_t(i)] + z * Cx(to_real(N(i, k)));
          }
          found = cabs(cdet(P)) > Real(1e-30);
        }
        require(found, Code::undecided, "no non-degenerate complex pairing sampled");
      }
      Pd.push_back(P);
    }
    auto blocks = spread(fd, Pd, to_c);
    num = num * cdet(blocks[size_t(c)]);
    den = den * cdet(blocks[size_t(cp)]);
  }
  // P = B^-T D B^-1, so det(P | M_c) = det(D | M_c) / det(B_c)^2 with B_c the columns of B inside M_c
  QMat Bfull(s.n(), 0);
  for (auto& fd : pd.parts) Bfull = hcat(Bfull, fd.B);
  auto comp_det = [&](int cc) {
    std::vector<int> cols;
    int at = 0;
    for (auto& fd : pd.parts) {
      for (int i = 0; i < fd.f.dims[size_t(cc)]; ++i) cols.push_back(at + fd.f.off(cc) + i);
      at += fd.f.n();
    }
    QMat Bc(s.dims[size_t(cc)], int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < s.dims[size_t(cc)]; ++i) Bc(i, int(j)) = Bfull(s.off(cc) + i, cols[j]);
    return det_rational(Bc);
  };
  Q bc = comp_det(c), bcp = comp_det(cp);
  Cx q = num / den * Cx(to_real(bcp * bcp / (bc * bc)));
  Real res = cabs(q - Cx(to_real(exact)));
  ComplexQuotient out;
  out.re = fmt(q.re, 30);
  out.im = fmt(q.im, 30);
  out.residual = res.convert_to<double>();
  return out;
}

std::vector<GradedSpec> decompose_isotypic(const GradedSpec& s, Rng& rng) {
  auto A = algebra_closure(s);
  require_reduced(s, A);
  auto gen = generic_element(s, A, rng);
  std::vector<GradedSpec> out;
  for (auto& E : orbit_idempotents(gen)) out.push_back(restrict_to(s, E));
  return out;
}

namespace {

Z md(const Z& x, const Z& m) {
  Z r = x % m;
  if (r < 0) r += m;
  return r;
}

ZMat zmul_mod(const ZMat& a, const ZMat& b, const Z& m) {
  ZMat c = a * b;
  for (auto& x : c.v) x = md(x, m);
  return c;
}

ZMat to_z_mod(const QMat& a, const Z& m) {
  ZMat r(a.r, a.c);
  for (size_t i = 0; i < a.v.size(); ++i) {
    require(a.v[i].get_den() == 1, Code::domain, "p-local factors need an integral module");
    r.v[i] = md(a.v[i].get_num(), m);
  }
  return r;
}

long zval(Z x, const Z& p) {
  long v = 0;
  while (x != 0 && x % p == 0) x /= p, ++v;
  return v;
}

Z inv_mod(const Z& a, const Z& m) {
  Z r;
  require(mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) != 0, Code::validation, "not a unit");
  return r;
}

// independent columns mod p
std::vector<int> pivots_mod_p(ZMat M, const Z& p) {
  std::vector<int> piv;
  int r = 0;
  for (int j = 0; j < M.c && r < M.r; ++j) {
    int i = r;
    while (i < M.r && md(M(i, j), p) == 0) ++i;
    if (i == M.r) continue;
    for (int k = 0; k < M.c; ++k) std::swap(M(r, k), M(i, k));
    Z inv = inv_mod(md(M(r, j), p), p);
    for (int t = r + 1; t < M.r; ++t) {
      Z f = md(M(t, j) * inv, p);
      if (f != 0)
        for (int k = 0; k < M.c; ++k) M(t, k) = md(M(t, k) - f * M(r, k), p);
    }
    piv.push_back(j);
    ++r;
  }
  return piv;
}

// determinant mod p^k by full pivoting on minimal valuation
Z det_mod(ZMat M, const Z& p, const Z& pk) {
  int n = M.r;
  Z d = 1;
  for (int k = 0; k < n; ++k) {
    int bi = -1, bj = -1;
    long bv = -1;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) {
        Z x = md(M(i, j), pk);
        if (x == 0) continue;
        long v = zval(x, p);
        if (bv < 0 || v < bv) bv = v, bi = i, bj = j;
      }
    if (bi < 0) return 0;
    if (bi != k) {
      for (int j = 0; j < n; ++j) std::swap(M(k, j), M(bi, j));
      d = -d;
    }
    if (bj != k) {
      for (int i = 0; i < n; ++i) std::swap(M(i, k), M(i, bj));
      d = -d;
    }
    Z pv = md(M(k, k), pk), pw = 1;
    for (long t = 0; t < bv; ++t) pw *= p;
    Z u = inv_mod(pv / pw, pk);
    d = md(d * pv, pk);
    for (int i = k + 1; i < n; ++i) {
      Z a = md(M(i, k), pk);
      if (a == 0) continue;
      Z f = md((a / pw) * u, pk);
      for (int j = k; j < n; ++j) M(i, j) = md(M(i, j) - f * M(k, j), pk);
    }
  }
  return md(d, pk);
}

// inverse of a matrix that is invertible mod p
ZMat inv_mod_mat(ZMat M, const Z& pk) {
  int n = M.r;
  ZMat I = ZMat::identity(n);
  for (int k = 0; k < n; ++k) {
    int i = k;
    Z dummy;
    while (i < n && mpz_invert(dummy.get_mpz_t(), Z(md(M(i, k), pk)).get_mpz_t(), pk.get_mpz_t()) == 0) ++i;
    require(i < n, Code::validation, "minor is not invertible mod p");
    for (int j = 0; j < n; ++j) std::swap(M(k, j), M(i, j)), std::swap(I(k, j), I(i, j));
    Z u = inv_mod(md(M(k, k), pk), pk);
    for (int j = 0; j < n; ++j) M(k, j) = md(M(k, j) * u, pk), I(k, j) = md(I(k, j) * u, pk);
    for (int t = 0; t < n; ++t) {
      if (t == k) continue;
      Z f = M(t, k);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) M(t, j) = md(M(t, j) - f * M(k, j), pk), I(t, j) = md(I(t, j) - f * I(k, j), pk);
    }
  }
  return I;
}

ZMat sub_cols(const ZMat& M, const std::vector<int>& js) {
  ZMat r(M.r, int(js.size()));
  for (size_t j = 0; j < js.size(); ++j)
    for (int i = 0; i < M.r; ++i) r(i, int(j)) = M(i, js[j]);
  return r;
}

ZMat sub_rows(const ZMat& M, const std::vector<int>& is) {
  ZMat r(int(is.size()), M.c);
  for (size_t i = 0; i < is.size(); ++i)
    for (int j = 0; j < M.c; ++j) r(int(i), j) = M(is[i], j);
  return r;
}

// det of X: E M_a -> E M_b in bases of columns of E (mod p^k)
std::pair<long, Z> restricted_det(const GradedSpec& s, const ZMat& E, const ZMat& X, int a, int b, const Z& p,
                                  const Z& pk) {
  auto blk = [&](const ZMat& m, int from, int to) { return hcg::block(m, s.off(to), s.off(from), s.dims[size_t(to)], s.dims[size_t(from)]); };
  ZMat Ea = blk(E, a, a), Eb = blk(E, b, b);
  auto ca = pivots_mod_p(Ea, p), cb = pivots_mod_p(Eb, p);
  require(ca.size() == cb.size(), Code::validation, "local factor has different ranks in the two components");
  if (ca.empty()) return {0, Z(1)};
  ZMat Ba = sub_cols(Ea, ca), Bb = sub_cols(Eb, cb);
  auto rows = pivots_mod_p(Bb.transpose(), p);
  ZMat img = zmul_mod(blk(X, a, b), Ba, pk);
  ZMat Y = zmul_mod(inv_mod_mat(sub_rows(Bb, rows), pk), sub_rows(img, rows), pk);
  require(zmul_mod(Bb, Y, pk) == img, Code::validation, "local factor is not stable");
  Z d = det_mod(Y, p, pk);
  require(d != 0, Code::precision, "p-adic precision exhausted in a local determinant");
  long v = zval(d, p);
  Z pw = 1;
  for (long t = 0; t < v; ++t) pw *= p;
  return {v, d / pw};
}

}  // namespace

LocalResult localize_p(const GradedSpec& s, int c, int cp, const Z& p, Rng& rng) {
  require(is_probable_prime(p), Code::domain, "localize: p is not prime");
  auto A = algebra_closure(s);
  for (auto& g : s.gens)
    for (auto& x : g.mat.v) require(x.get_den() == 1, Code::domain, "p-local factors need an integral module");
  auto pol = polarisable(s, A, rng);
  require(pol.ok, Code::domain, "module is not polarisable: " + pol.reason);
  auto L = linked(s, A, c, cp, rng);
  require(bool(L.witness), Code::domain, "components are not linked: " + L.reason);
  QMat Tq = element_matrix(s, L.witness->elem), iTq = element_matrix(s, iota(s, L.witness->elem));
  Q dT = det_rational(s.block(Tq, c, cp)), diT = det_rational(s.block(iTq, cp, c));
  LocalResult out;
  out.global = square_class(dT / diT, Ring::Zp, p);
  modp::u64 pw = modp::to_u64(p);
  auto gen = generic_element(s, A, rng, [&](const QVec& m) {
    for (auto& x : m)
      if (x.get_den() != 1) return false;
    ZVec mz;
    for (auto& x : m) mz.push_back(x.get_num());
    return modp::squarefree(modp::reduce(mz, pw), pw);
  });
  ZVec mz;
  for (auto& x : gen.minpoly) mz.push_back(x.get_num());
  auto mbar = modp::reduce(mz, pw);
  long k = std::max(padic_val(dT, p), padic_val(diT, p)) + (p == 2 ? 5 : 3);
  Z pk = 1;
  for (long t = 0; t < k; ++t) pk *= p;
  ZMat th = to_z_mod(gen.th, pk), ith = to_z_mod(gen.ith, pk);
  auto lift = [&](const modp::Poly& e, const ZMat& X) {
    int n = X.r;
    ZMat r(n, n);
    for (size_t i = e.size(); i-- > 0;) {
      r = zmul_mod(r, X, pk);
      for (int t = 0; t < n; ++t) r(t, t) = md(r(t, t) + Z(static_cast<unsigned long>(e[i])), pk);
    }
    for (int it = 0; it < 80; ++it) {
      ZMat r2 = zmul_mod(r, r, pk);
      if (r2 == r) return r;
      ZMat r3 = zmul_mod(r2, r, pk);
      for (size_t t = 0; t < r.v.size(); ++t) r.v[t] = md(3 * r2.v[t] - 2 * r3.v[t], pk);
    }
    fail(Code::validation, "idempotent lifting did not converge");
  };
  auto facs = modp::factor(mbar, pw);
  std::vector<ZMat> E, iE;
  std::vector<int> fdeg;
  for (auto& [g, e] : facs) {
    auto cof = modp::divmod(mbar, g, pw).first;
    // cof * (cof^-1 mod g)
    auto r0 = g, r1 = modp::mod(cof, g, pw);
    modp::Poly s0{}, s1{1};
    while (modp::deg(r1) > 0) {
      auto [q, r] = modp::divmod(r0, r1, pw);
      auto s2 = modp::sub(s0, modp::mul(q, s1, pw), pw);
      r0 = r1, r1 = r, s0 = s1, s1 = s2;
    }
    modp::u64 ic = modp::invm(r1[0], pw);
    for (auto& x : s1) x = modp::mulm(x, ic, pw);
    auto ebar = modp::mod(modp::mul(cof, s1, pw), mbar, pw);
    E.push_back(lift(ebar, th));
    iE.push_back(lift(ebar, ith));
    fdeg.push_back(modp::deg(g));
  }
  std::vector<char> used(E.size(), 0);
  for (size_t i = 0; i < E.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    ZMat tot = E[i];
    LocalFactor f;
    f.factor_degrees.push_back(fdeg[i]);
    size_t j = 0;
    while (j < E.size() && !(E[j] == iE[i])) ++j;
    require(j < E.size(), Code::validation, "iota does not permute the local idempotents");
    if (!used[j]) {
      used[j] = 1;
      f.factor_degrees.push_back(fdeg[j]);
      for (size_t t = 0; t < tot.v.size(); ++t) tot.v[t] = md(tot.v[t] + E[j].v[t], pk);
    }
    auto [va, ua] = restricted_det(s, tot, to_z_mod(Tq, pk), c, cp, p, pk);
    auto [vb, ub] = restricted_det(s, tot, to_z_mod(iTq, pk), cp, c, p, pk);
    f.cls.ring = Ring::Zp;
    f.cls.p = p;
    f.cls.rep = 0;
    f.cls.val = va - vb;
    if (p == 2) f.cls.unit = int(md(ua * ub, 8).get_si());
    else f.cls.unit = legendre(md(ua, p), p) * legendre(md(ub, p), p);
    out.factors.push_back(f);
  }
  return out;
}

GradedSpec direct_sum(const GradedSpec& a, const GradedSpec& b) {
  require(a.C.d == b.C.d && a.gens.size() == b.gens.size(), Code::validation, "direct sum: specs do not match");
  for (size_t i = 0; i < a.gens.size(); ++i)
    require(a.gens[i].degree == b.gens[i].degree && a.gens[i].partner == b.gens[i].partner, Code::validation,
            "direct sum: generator lists do not match");
  GradedSpec s;
  s.C = a.C;
  int G = a.C.order();
  for (int c = 0; c < G; ++c) s.dims.push_back(a.dims[size_t(c)] + b.dims[size_t(c)]);
  std::vector<int> ia, ib;
  for (int c = 0; c < G; ++c) {
    for (int i = 0; i < a.dims[size_t(c)]; ++i) ia.push_back(s.off(c) + i);
    for (int i = 0; i < b.dims[size_t(c)]; ++i) ib.push_back(s.off(c) + a.dims[size_t(c)] + i);
  }
  for (size_t g = 0; g < a.gens.size(); ++g) {
    QMat m(s.n(), s.n());
    for (int i = 0; i < a.n(); ++i)
      for (int j = 0; j < a.n(); ++j) m(ia[size_t(i)], ia[size_t(j)]) = a.gens[g].mat(i, j);
    for (int i = 0; i < b.n(); ++i)
      for (int j = 0; j < b.n(); ++j) m(ib[size_t(i)], ib[size_t(j)]) = b.gens[g].mat(i, j);
    s.gens.push_back({a.gens[g].label, a.gens[g].degree, m, a.gens[g].partner});
  }
  return s;
}

QVec min_poly(const QMat& X) {
  int n = X.r;
  Echelon e;
  QMat P = QMat::identity(n);
  for (int k = 0;; ++k) {
    QVec c;
    if (!e.insert(P.v, &c)) {
      QVec m(size_t(k) + 1);
      for (int i = 0; i < k; ++i) m[size_t(i)] = -c[size_t(i)];
      m[size_t(k)] = 1;
      return m;
    }
    P = P * X;
  }
}

QVec char_poly(const QMat& X) {
  int n = X.r;
  QVec c(size_t(n) + 1);
  c[size_t(n)] = 1;
  QMat M(n, n);
  for (int k = 1; k <= n; ++k) {
    M = X * M;
    for (int i = 0; i < n; ++i) M(i, i) += c[size_t(n - k + 1)];
    QMat XM = X * M;
    Q tr = 0;
    for (int i = 0; i < n; ++i) tr += XM(i, i);
    c[size_t(n - k)] = -tr / k;
  }
  return c;
}

}  // namespace hcg
