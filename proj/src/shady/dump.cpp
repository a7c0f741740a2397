#include "shady/dump.hpp"

#include "harness/scenario.hpp"
#include "lattice/linalg.hpp"

namespace hcg {

using json = nlohmann::json;

ZMat Dump::kmat() const {
  ZMat K(m, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < m; ++i) K(i, j) = basis[j].k[i];
  return K;
}
QMat Dump::tmat() const {
  QMat T(m, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < m; ++i) T(i, j) = basis[j].t[i];
  return T;
}
QMat Dump::emat() const {
  QMat E(m, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < m; ++i) E(i, j) = basis[j].err[i];
  return E;
}

ZVec Dump::k_of(const ZVec& x) const {
  ZVec k(m, 0);
  for (int j = 0; j < r; ++j)
    if (x[j] != 0)
      for (int i = 0; i < m; ++i) k[i] += x[j] * basis[j].k[i];
  return k;
}
QVec Dump::t_of(const ZVec& x) const {
  QVec t(m, 0);
  for (int j = 0; j < r; ++j)
    if (x[j] != 0)
      for (int i = 0; i < m; ++i) t[i] += Q(x[j]) * basis[j].t[i];
  return t;
}
QVec Dump::err_of(const ZVec& x) const {
  QVec e(m, 0);
  for (int j = 0; j < r; ++j)
    if (x[j] != 0)
      for (int i = 0; i < m; ++i) e[i] += Q(abs(x[j])) * basis[j].err[i];
  return e;
}

void Dump::sigma_data(const ZVec& k, const QVec& t, ZVec& k2, QVec& t2) const {
  k2 = k;
  t2 = t;
  for (auto& p : places) {
    switch (p.kind) {
      case PlaceKind::real_ramified:
        k2[p.emb[0]] = -k[p.emb[0]];
        break;
      case PlaceKind::real_split:
        std::swap(k2[p.emb[0]], k2[p.emb[1]]);
        std::swap(t2[p.emb[0]], t2[p.emb[1]]);
        break;
      case PlaceKind::complex:
        k2[p.emb[0]] = p.sigma_sign * k[p.emb[1]];
        k2[p.emb[1]] = p.sigma_sign * k[p.emb[0]];
        t2[p.emb[0]] = t[p.emb[1]];
        t2[p.emb[1]] = t[p.emb[0]];
        break;
    }
  }
}

static const json& need(const json& j, const char* key, const std::string& where) {
  require(j.is_object() && j.contains(key), Code::validation, where + ": missing \"" + key + "\"");
  return j.at(key);
}

static Z jz(const json& x, const std::string& where) {
  require(x.is_string() || x.is_number_integer(), Code::validation, where + ": expected an integer");
  return x.is_string() ? parse_z(x.get<std::string>()) : Z(x.get<long>());
}

Dump parse_dump(const json& j, const std::string& where) {
  Dump d;
  require(need(j, "schema", where) == "hcg-1", Code::validation, where + ": schema is not hcg-1");
  const json& F = need(j, "field_F", where);
  d.F_label = F.value("label", "");
  if (F.contains("poly")) d.F_poly = json_zpoly(F.at("poly"));
  const json& L = need(j, "field_L", where);
  d.L_label = L.value("label", "");
  if (L.contains("poly")) d.L_poly = json_zpoly(L.at("poly"));
  if (j.contains("conductor_bound")) d.conductor_bound = parse_z(j.at("conductor_bound").value("norm", "1"));
  d.r = need(j, "rank", where).get<int>();
  require(d.r >= 0, Code::validation, where + ": negative rank");
  if (j.contains("torsion"))
    for (auto& x : j.at("torsion").value("invariants", json::array())) d.torsion.push_back(jz(x, where));
  d.precision = j.value("precision", 0);
  const json& places = need(j, "places", where);
  std::vector<int> seen;
  for (auto& p : places) {
    PlaceTag t;
    t.label = p.value("label", "");
    std::string kind = need(p, "kind", where).get<std::string>();
    if (kind == "F-real-ramified-in-L") t.kind = PlaceKind::real_ramified;
    else if (kind == "F-real-split") t.kind = PlaceKind::real_split;
    else if (kind == "F-complex") t.kind = PlaceKind::complex;
    else fail(Code::validation, where + ": unknown place kind " + kind);
    t.ramified_in_D = p.value("ramified_in_D", false);
    for (auto& e : need(p, "embeddings", where)) t.emb.push_back(e.get<int>());
    size_t want = t.kind == PlaceKind::real_ramified ? 1 : 2;
    require(t.emb.size() == want, Code::validation, where + ": place " + t.label + " has the wrong number of embeddings");
    if (t.kind == PlaceKind::complex) {
      t.sigma_sign = need(p, "sigma_sign", where).get<int>();
      require(t.sigma_sign == 1 || t.sigma_sign == -1, Code::validation, where + ": sigma_sign must be +-1");
    }
    require(!(t.kind == PlaceKind::complex && t.ramified_in_D), Code::validation,
            where + ": complex place " + t.label + " marked ramified in D");
    for (int e : t.emb) seen.push_back(e);
    d.places.push_back(t);
  }
  d.m = int(seen.size());
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < d.m; ++i)
    require(seen[i] == i, Code::validation, where + ": embedding classes are not a partition of 0..m-1");
  const json& basis = need(j, "basis", where);
  require(int(basis.size()) == d.r, Code::validation, where + ": basis size differs from rank");
  for (auto& b : basis) {
    BasisChar c;
    c.label = b.value("label", "");
    for (auto& x : need(b, "k", where)) c.k.push_back(jz(x, where));
    for (auto& x : need(b, "t", where)) {
      c.t.push_back(parse_q(need(x, "value", where).get<std::string>()));
      Q e = parse_q(need(x, "err", where).get<std::string>());
      require(e > 0, Code::validation, where + ": t error bounds must be positive");
      c.err.push_back(e);
    }
    require(int(c.k.size()) == d.m && int(c.t.size()) == d.m, Code::validation,
            where + ": character " + c.label + " has the wrong number of (k, t) entries");
    if (b.contains("conductor")) c.cond_norm = parse_z(b.at("conductor").value("norm", "1"));
    d.basis.push_back(c);
  }
  const json& S = need(j, "sigma_matrix", where);
  require(int(S.size()) == d.r, Code::validation, where + ": sigma_matrix has the wrong shape");
  d.sigma = ZMat(d.r, d.r);
  for (int i = 0; i < d.r; ++i) {
    require(int(S[i].size()) == d.r, Code::validation, where + ": sigma_matrix has the wrong shape");
    for (int k = 0; k < d.r; ++k) d.sigma(i, k) = jz(S[i][k], where);
  }
  const json& K = need(j, "s_kernel", where);
  d.s_kernel = ZMat(d.r, int(K.size()));
  for (size_t c = 0; c < K.size(); ++c) {
    require(int(K[c].size()) == d.r, Code::validation, where + ": s_kernel vector of the wrong length");
    for (int i = 0; i < d.r; ++i) d.s_kernel(i, int(c)) = jz(K[c][i], where);
  }
  return d;
}

Dump load_dump(const std::filesystem::path& p) { return parse_dump(load_json(p), p.filename().string()); }

void validate_dump(const Dump& d) {
  ZMat I = ZMat::identity(d.r);
  require(d.sigma * d.sigma == I, Code::validation, "sigma_matrix is not an involution");
  if (d.s_kernel.c > 0) {
    ZMat img = d.sigma * d.s_kernel;
    for (int c = 0; c < img.c; ++c)
      require(lattice_coords(d.s_kernel, img.col(c)).has_value(), Code::validation, "s_kernel is not sigma-stable");
    for (int c = 0; c < d.s_kernel.c; ++c) {
      ZVec x = d.s_kernel.col(c);
      QVec t = d.t_of(x), e = d.err_of(x);
      for (int i = 0; i < d.m; ++i)
        require(abs(t[i]) <= e[i], Code::validation, "s_kernel vector has nonzero t at embedding " + std::to_string(i));
    }
  }
  // sigma on exponent vectors matches sigma on the (k, t) data
  for (int j = 0; j < d.r; ++j) {
    ZVec e(d.r, 0);
    e[j] = 1;
    ZVec k2;
    QVec t2;
    d.sigma_data(d.basis[j].k, d.basis[j].t, k2, t2);
    ZVec img = d.sigma.col(j);
    ZVec ki = d.k_of(img);
    QVec ti = d.t_of(img), ei = d.err_of(img);
    require(ki == k2, Code::validation, "sigma_matrix inconsistent with k data of " + d.basis[j].label);
    for (int i = 0; i < d.m; ++i)
      require(abs(ti[i] - t2[i]) <= ei[i] + d.basis[j].err[i], Code::validation,
              "sigma_matrix inconsistent with t data of " + d.basis[j].label);
  }
}

Dump conjugate_dump(const Dump& d) {
  Dump c = d;
  for (auto& b : c.basis)
    for (auto& k : b.k) k = -k;
  return c;
}

}  // namespace hcg
