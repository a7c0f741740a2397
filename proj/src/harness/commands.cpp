#include "harness/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "brauer/catalog.hpp"
#include "harness/jsonio.hpp"
#include "lattice/box.hpp"
#include "lattice/linalg.hpp"
#include "lattice/lll.hpp"
#include "nf/zeta.hpp"

namespace hcg {

namespace fs = std::filesystem;

Ring parse_ring(const std::string& s) {
  if (s == "Q") return Ring::Q;
  if (s == "Z") return Ring::Z;
  if (s == "Zp") return Ring::Zp;
  fail(Code::validation, "ring must be Q, Z or Zp, got " + s);
}

static std::string ring_name(Ring r) { return r == Ring::Q ? "Q" : (r == Ring::Z ? "Z" : "Zp"); }

// ---------------------------------------------------------------- graded-1

static int parse_degree(const Grading& C, const json& d, const std::string& where) {
  if (d.is_number_integer()) {
    int i = d.get<int>();
    require(i >= 0 && i < C.order(), Code::validation, where + ": degree out of range");
    return i;
  }
  require(d.is_array() && d.size() == C.d.size(), Code::validation, where + ": degree must be a tuple of length " +
                                                                        std::to_string(C.d.size()));
  std::vector<int> t;
  for (size_t i = 0; i < d.size(); ++i) {
    int x = d[i].get<int>() % C.d[i];
    t.push_back(x < 0 ? x + C.d[i] : x);
  }
  return C.index(t);
}

GradedJob parse_graded(const json& j) {
  require(j.is_object() && j.value("schema", "") == "graded-1", Code::validation, "expected schema graded-1");
  GradedJob job;
  GradedSpec& s = job.spec;
  for (auto& x : j.at("grading")) {
    require(x.get<int>() >= 1, Code::validation, "grading orders must be positive");
    s.C.d.push_back(x.get<int>());
  }
  require(!s.C.d.empty(), Code::validation, "empty grading");
  for (auto& x : j.at("dims")) s.dims.push_back(x.get<int>());
  require(int(s.dims.size()) == s.C.order(), Code::validation, "dims must list one dimension per grading element");
  std::map<std::string, int> idx;
  const json& gens = j.at("generators");
  for (auto& g : gens) {
    std::string label = g.at("label").get<std::string>();
    require(!idx.count(label), Code::validation, "duplicate generator label " + label);
    idx[label] = int(idx.size());
  }
  for (auto& g : gens) {
    Generator G;
    G.label = g.at("label").get<std::string>();
    G.degree = parse_degree(s.C, g.at("degree"), "generator " + G.label);
    G.mat = json_qmat(g.at("matrix"));
    require(G.mat.r == s.n() && G.mat.c == s.n(), Code::dimension, "generator " + G.label + ": matrix must be " +
                                                                         std::to_string(s.n()) + " x " + std::to_string(s.n()));
    std::string partner = g.value("iota_partner", G.label);
    require(idx.count(partner), Code::validation, "generator " + G.label + ": unknown iota partner " + partner);
    G.partner = idx.at(partner);
    s.gens.push_back(G);
  }
  for (auto& w : j.value("w_generators", json::array())) {
    std::string label = w.at("label").get<std::string>();
    QMat M = json_qmat(w.at("matrix"));
    require(M.r == s.n() && M.c == s.n(), Code::dimension, "w generator " + label + ": wrong size");
    add_w_generator(s, label, parse_degree(s.C, w.at("degree"), "w generator " + label), M);
  }
  validate_spec(s);
  if (j.contains("pair")) {
    require(j.at("pair").size() == 2, Code::validation, "pair must be [c, c']");
    job.c = parse_degree(s.C, j.at("pair")[0], "pair");
    job.cp = parse_degree(s.C, j.at("pair")[1], "pair");
  } else {
    require(s.C.order() >= 2, Code::validation, "pair is required");
  }
  job.ring = parse_ring(j.value("ring", "Q"));
  if (j.contains("p")) job.p = json_z(j.at("p"));
  require(job.ring != Ring::Zp || job.p >= 2, Code::validation, "ring Zp needs a prime p");
  if (j.contains("localize")) job.localize = json_z(j.at("localize"));
  job.complex_check = j.value("complex_check", false);
  return job;
}

// ---------------------------------------------------------------- brauer-1

FiniteGroup named_group(const std::string& name) {
  for (auto& g : small_groups())
    if (name == g.name) return g.G;
  auto num = [&](size_t from) {
    require(name.size() > from && std::all_of(name.begin() + from, name.end(), ::isdigit), Code::validation,
            "unknown group " + name);
    int n = std::stoi(name.substr(from));
    require(n >= 1 && n <= 64, Code::validation, "group parameter out of range in " + name);
    return n;
  };
  if (name == "SL2(3)") return sl2_3();
  if (name == "Q8") return quaternion_group();
  if (name.rfind("Dic", 0) == 0) return dicyclic_group(num(3));
  if (name[0] == 'C') return cyclic_group(num(1));
  if (name[0] == 'D') return dihedral_group(num(1));
  if (name[0] == 'S') {
    int n = num(1);
    require(n <= 5, Code::validation, "symmetric groups up to S5");
    return symmetric_group(n);
  }
  if (name[0] == 'A') {
    int n = num(1);
    require(n <= 5, Code::validation, "alternating groups up to A5");
    return alternating_group(n);
  }
  fail(Code::validation, "unknown group " + name);
}

static Subgroup parse_subgroup(const FiniteGroup& G, const json& h) {
  auto elem = [&](const json& x) {
    int g = x.get<int>();
    require(g >= 0 && g < G.order, Code::validation, "group element index out of range");
    return g;
  };
  if (h.is_string()) {
    if (h == "trivial") return {0};
    if (h == "whole") {
      Subgroup all(static_cast<size_t>(G.order));
      for (int i = 0; i < G.order; ++i) all[i] = i;
      return all;
    }
    fail(Code::validation, "subgroup must be \"trivial\", \"whole\" or an object");
  }
  require(h.is_object(), Code::validation, "subgroup must be an object");
  if (h.contains("gens")) {
    std::vector<int> gens;
    for (auto& x : h.at("gens")) gens.push_back(elem(x));
    return generated(G, gens);
  }
  if (h.contains("class")) {
    auto cls = subgroup_classes(G);
    int i = h.at("class").get<int>();
    require(i >= 0 && i < int(cls.size()), Code::validation, "subgroup class index out of range");
    return cls[i];
  }
  if (h.contains("elements")) {
    Subgroup H;
    for (auto& x : h.at("elements")) H.push_back(elem(x));
    std::sort(H.begin(), H.end());
    check_subgroup(G, H);
    return H;
  }
  fail(Code::validation, "subgroup needs gens, class or elements");
}

static GSetSum parse_gset(const FiniteGroup& G, const json& j) {
  require(j.is_array(), Code::validation, "G-set must be an array of subgroups");
  GSetSum S;
  for (auto& h : j) S.push_back(parse_subgroup(G, h));
  return S;
}

static RationalRep parse_rep(const FiniteGroup& G, const json& r) {
  if (r.is_string()) {
    if (r == "trivial") return trivial_rep(G);
    if (r == "regular") return regular_rep(G);
    fail(Code::validation, "unknown representation " + r.get<std::string>());
  }
  require(r.is_object() && r.size() == 1, Code::validation, "representation must be a one-key object");
  auto& [k, v] = *r.items().begin();
  if (k == "trivial") return trivial_rep(G, v.get<int>());
  if (k == "permutation") return permutation_rep(G, parse_subgroup(G, v));
  if (k == "augmentation") return augmentation_rep(G, parse_subgroup(G, v));
  if (k == "sign") return sign_rep(G, parse_subgroup(G, v));
  if (k == "sum") {
    require(v.is_array() && !v.empty(), Code::validation, "sum needs a non-empty array");
    RationalRep V = parse_rep(G, v[0]);
    for (size_t i = 1; i < v.size(); ++i) V = direct_sum(V, parse_rep(G, v[i]));
    return V;
  }
  if (k == "matrices") {
    require(v.is_array() && int(v.size()) == G.order, Code::validation, "one matrix per group element");
    RationalRep V;
    for (auto& m : v) V.rho.push_back(json_qmat(m));
    V.degree = V.rho[0].r;
    check_rep(G, V);
    return V;
  }
  fail(Code::validation, "unknown representation kind " + k);
}

BrauerJob parse_brauer(const json& j) {
  require(j.is_object() && j.value("schema", "") == "brauer-1", Code::validation, "expected schema brauer-1");
  BrauerJob job;
  const json& g = j.at("group");
  if (g.contains("name")) {
    job.group_name = g.at("name").get<std::string>();
    job.G = named_group(job.group_name);
  } else if (g.contains("permutations")) {
    std::vector<std::vector<int>> gens;
    for (auto& p : g.at("permutations")) gens.push_back(p.get<std::vector<int>>());
    job.G = perm_group(gens);
    job.group_name = "permutation group of order " + std::to_string(job.G.order);
  } else if (g.contains("table")) {
    std::vector<std::vector<int>> t;
    for (auto& row : g.at("table")) t.push_back(row.get<std::vector<int>>());
    job.G = make_group(t);
    job.group_name = "group of order " + std::to_string(job.G.order);
  } else {
    fail(Code::validation, "group needs name, permutations or table");
  }
  const json& rel = j.at("relation");
  if (rel.is_string()) {
    require(rel == "find", Code::validation, "relation must be \"find\" or {S1, S2}");
    job.relations = brauer_relations(job.G);
    job.found = true;
  } else {
    job.relations.push_back({parse_gset(job.G, rel.at("S1")), parse_gset(job.G, rel.at("S2"))});
  }
  job.V = parse_rep(job.G, j.value("rep", json("trivial")));
  if (j.contains("pairing")) {
    QMat P = json_qmat(j.at("pairing"));
    check_pairing(job.G, job.V, P);
    job.pairing = P;
  }
  job.ring = parse_ring(j.value("ring", "Q"));
  if (j.contains("p")) job.p = json_z(j.at("p"));
  require(job.ring != Ring::Zp || job.p >= 2, Code::validation, "ring Zp needs a prime p");
  return job;
}

// ---------------------------------------------------------------- commands

namespace {

struct Ctx {
  const json& req;
  const Config& cfg;
  json prov = json::array();

  fs::path file(const char* key) {
    require(req.contains(key) && req.at(key).is_string(), Code::validation, std::string("missing \"") + key + "\"");
    fs::path p = req.at(key).get<std::string>();
    require(fs::exists(p), Code::io, "missing file " + p.string());
    prov.push_back({{"file", short_name(p)}, {"fnv1a64", file_digest(p)}});
    return p;
  }
  json load(const char* key) { return load_json(file(key)); }
  Scenario scenario() {
    Scenario sc = load_scenario(file("scenario"));
    for (auto& e : sc.extensions)
      for (auto& p : {e.dump, e.sset})
        if (p && fs::exists(*p)) prov.push_back({{"file", short_name(*p)}, {"fnv1a64", file_digest(*p)}});
    return sc;
  }
  Dump dump() {
    Dump d = load_dump(file("dump"));
    validate_dump(d);
    return d;
  }
  std::pair<ShadyContext, CertContext> contexts() {
    if (!req.contains("scenario")) return {ShadyContext{}, CertContext{}};
    Scenario sc = scenario();
    return {shady_context(sc), cert_context(sc)};
  }
};

std::vector<std::string> strs(const std::vector<Z>& v) {
  std::vector<std::string> s;
  for (auto& x : v) s.push_back(x.get_str());
  return s;
}

json class_json(const SquareClass& c) {
  json j = {{"ring", ring_name(c.ring)}, {"class", c.str()}, {"trivial", c.is_trivial()}};
  if (c.ring == Ring::Zp) j["p"] = c.p.get_str(), j["valuation"] = c.val, j["unit"] = c.unit;
  else j["representative"] = c.rep.get_str();
  return j;
}

json family_json(const Family& f) {
  json ker = json::array();
  for (int c = 0; c < f.ker.c; ++c) ker.push_back(zvec_json(f.ker.col(c)));
  return {{"rep", zvec_json(f.rep)}, {"kpoint", zvec_json(f.kpoint)}, {"ker", ker},
          {"degrees", {f.deg_lo, f.deg_hi}}, {"degenerate", f.degenerate}};
}

json cert_json(const Certificate& c) {
  return {{"degree", c.degree},       {"lambda", decimal(c.lambda, 6)}, {"lambda_exact", c.lambda.get_str()},
          {"err", decimal(c.err, 9)}, {"psi", zvec_json(c.psi)},         {"lambda_expr", c.lambda_expr},
          {"conductor_square", c.conductor_square}, {"verdict", c.verdict}, {"rule", c.rule}};
}

std::pair<Kind, int> kind_degree(const json& req) {
  Kind k = parse_kind(req.value("kind", "omega-all"));
  int degree = req.value("degree", -1);
  if (degree >= 0 && k == Kind::omega_all) k = Kind::omega_i;
  require(k != Kind::omega_i || degree >= 0, Code::validation, "kind omega-i needs a degree");
  return {k, degree};
}

json cmd_volume(Ctx& C) {
  Scenario sc = C.scenario();
  auto V = covolume(sc.F, {sc.D_all_real, sc.delta_norm, sc.level_norm}, C.cfg.prime_bound);
  return {{"field", sc.field_label},
          {"volume", decimal(V.vol.value)},
          {"err", decimal(V.vol.err, 3)},
          {"zeta2", decimal(V.zeta.z.value, 12)},
          {"zeta2_bracket", {decimal(V.zeta.lower, 12), decimal(V.zeta.upper, 12)}},
          {"prime_bound", V.zeta.bound},
          {"bracketed_primes", strs(V.zeta.bracketed_primes)},
          {"rule", "|d_F|^{3/2} zeta_F(2) / (2^{2r1+4} pi^{2r1+2}), signature (r1,1) only"}};
}

json cmd_zeta2(Ctx& C) {
  NumberField F;
  std::string label;
  if (C.req.contains("scenario")) {
    Scenario sc = C.scenario();
    F = sc.F;
    label = sc.field_label;
  } else {
    require(C.req.contains("poly"), Code::validation, "zeta2 needs a scenario or a poly");
    F = parse_field(json_zpoly(C.req.at("poly")));
    label = "poly";
  }
  std::uint64_t bound = C.req.value("bound", C.cfg.prime_bound);
  auto z = zeta2(F, bound);
  return {{"field", label},
          {"zeta2", decimal(z.z.value, 15)},
          {"err", decimal(z.z.err, 3)},
          {"bracket", {decimal(z.lower, 15), decimal(z.upper, 15)}},
          {"prime_bound", z.bound},
          {"bracketed_primes", strs(z.bracketed_primes)}};
}

json cmd_sset(Ctx& C) {
  Scenario sc = C.scenario();
  int k = C.req.value("extension", -1);
  const ExtensionRef* e = nullptr;
  if (k >= 0) {
    require(k < int(sc.extensions.size()), Code::validation, "extension index out of range");
    e = &sc.extensions[k];
  } else {
    for (auto& x : sc.extensions)
      if (x.sset) {
        e = &x;
        break;
      }
  }
  require(e != nullptr, Code::validation, "no extension with an sset block");
  auto S = sset(load_sset_input(sc, *e));
  json r = {{"extension", e->label}, {"finite", S.finite}, {"base", strs(S.base)},
            {"candidates", strs(S.candidates)}, {"conservative", strs(S.conservative)}, {"rule", S.rule}};
  if (S.finite) r["primes"] = strs(S.primes);
  else r["witness"] = {{"h", S.witness_h}, {"modulus", S.witness_modulus}};
  return r;
}

json cmd_repequiv(Ctx& C) {
  Scenario sc = C.scenario();
  auto in = repequiv_input(sc);
  auto R = repequiv(in);
  json ext = json::array();
  for (auto& e : in.extensions) ext.push_back({{"label", e.label}, {"real_ramified", e.real_ramified}});
  return {{"verdict", R.verdict}, {"rule", R.rule}, {"reasons", R.reasons}, {"extensions", ext}};
}

json cmd_classify(Ctx& C) {
  Dump d = C.dump();
  auto [sctx, cctx] = C.contexts();
  auto [k, degree] = kind_degree(C.req);
  auto R = classify_shady(d, k, sctx, degree);
  json fam = json::array();
  for (auto& f : R.families) fam.push_back(family_json(f));
  json r = {{"kind", kind_name(k)},   {"exists", R.exists}, {"families", fam},
            {"coords", R.coords},     {"rule", R.rule},     {"level_check", R.level_check},
            {"structural_block", R.structural_block}};
  if (degree >= 0) r["degree"] = degree;
  r["minus_rank"] = minus_subgroup(d).c;
  if (R.exists && R.finite()) {
    json m = json::array();
    for (auto& x : R.finite_members()) m.push_back(zvec_json(x));
    r["finite_members"] = m;
  }
  int n = C.req.value("eigenvalues", 0);
  if (n > 0 && R.exists) {
    json ev = json::array();
    for (auto& c : first_eigenvalues(d, R, size_t(n)))
      ev.push_back({{"value", decimal(c.value, 6)},
                    {"interval", {decimal(c.lo, 9), decimal(c.hi, 9)}},
                    {"multiplicity", c.members.size()},
                    {"exact", c.exact}});
    r["eigenvalues"] = ev;
  }
  return r;
}

json cmd_certify(Ctx& C) {
  Dump d = C.dump();
  auto [sctx, cctx] = C.contexts();
  require(C.req.contains("degree"), Code::validation, "certify-noniso needs a degree");
  int degree = C.req.at("degree").get<int>();
  auto c = non_isospectral_certificate(d, sctx, cctx, degree);
  if (!c) return {{"degree", degree}, {"found", false}, {"verdict", "no certificate"}};
  json r = cert_json(*c);
  r["found"] = true;
  return r;
}

json cmd_count(Ctx& C) {
  Dump d = C.dump();
  auto [sctx, cctx] = C.contexts();
  auto [k, degree] = kind_degree(C.req);
  require(C.req.contains("T"), Code::validation, "count needs T");
  Q T = json_q(C.req.at("T"));
  auto R = classify_shady(d, k, sctx, degree);
  return {{"kind", kind_name(k)}, {"T", T.get_str()}, {"count", count_upto(d, R, T)}, {"rule", R.rule}};
}

json element_json(const GradedSpec& s, const LinkWitness& w) {
  return {{"from", s.C.tuple(w.c)}, {"to", s.C.tuple(w.cp)}, {"element", element_str(s, w.elem)},
          {"block", qmat_json(w.block)}};
}

json cmd_regconst(Ctx& C) {
  GradedJob job = parse_graded(C.req.contains("file") ? C.load("file") : C.req.at("input"));
  const GradedSpec& s = job.spec;
  Rng rng(C.cfg.seed);
  Algebra A = algebra_closure(s);
  Polarisation P = polarisable(s, A, rng);
  json r = {{"pair", {s.C.tuple(job.c), s.C.tuple(job.cp)}},
            {"algebra_dim", A.dim()},
            {"polarisable", P.ok}};
  if (!P.ok) {
    r["reason"] = P.reason;
    fail(Code::domain, "not polarisable: " + P.reason);
  }
  json tc = json::array();
  for (int c : P.tilde_C) tc.push_back(s.C.tuple(c));
  r["tilde_C"] = tc;
  auto R = regconst_graded(s, job.c, job.cp, rng, job.ring, job.p);
  r["value"] = R.value.get_str();
  r["class"] = class_json(R.cls);
  r["link"] = element_json(s, R.witness);
  r["rule"] = "det(T | M_c -> M_c') / det(iota T | M_c' -> M_c)";
  if (job.localize != 0) {
    auto L = localize_p(s, job.c, job.cp, job.localize, rng);
    json fs = json::array();
    for (auto& f : L.factors) fs.push_back({{"factor_degrees", f.factor_degrees}, {"class", class_json(f.cls)}});
    r["local"] = {{"p", job.localize.get_str()}, {"factors", fs}, {"global", class_json(L.global)}};
  }
  if (job.complex_check) {
    auto X = complex_polarisation_check(s, job.c, job.cp, R.value, rng, int(C.cfg.precision));
    r["complex_check"] = {{"re", X.re}, {"im", X.im}, {"residual", decimal((long double)X.residual, 3)}};
  }
  return r;
}

json gset_json(const GSetSum& S) {
  json a = json::array();
  for (auto& H : S) a.push_back(H);
  return a;
}

json cmd_brauer(Ctx& C) {
  BrauerJob job = parse_brauer(C.req.contains("file") ? C.load("file") : C.req.at("input"));
  Rng rng(C.cfg.seed);
  json rels = json::array();
  for (auto& [S1, S2] : job.relations) {
    auto chk = is_brauer_relation(job.G, S1, S2, rng);
    json x = {{"S1", gset_json(S1)}, {"S2", gset_json(S2)}, {"relation", chk.relation}, {"rule", chk.rule}};
    if (!chk.relation) {
      require(job.found, Code::domain, "not a Brauer relation: " + chk.rule);
      rels.push_back(x);
      continue;
    }
    auto R = regconst_brauer(job.G, S1, S2, job.V, job.pairing, rng, job.ring, job.p);
    x["value"] = R.value.get_str();
    x["class"] = class_json(R.cls);
    x["dim"] = R.dim;
    rels.push_back(x);
  }
  return {{"group", job.group_name}, {"order", job.G.order}, {"rep_degree", job.V.degree}, {"relations", rels}};
}

json cmd_lll(Ctx& C) {
  json j = C.req.contains("file") ? C.load("file") : C.req.at("input");
  require(j.value("schema", "") == "lattice-1", Code::validation, "expected schema lattice-1");
  ZMat B = json_zmat(j.at("B"));
  Q delta = j.contains("delta") ? json_q(j.at("delta")) : Q(99, 100);
  ZMat L = lll_reduce(hnf_basis(B), delta);
  bool same = true;
  if (j.contains("B_reduced")) same = same_lattice(L, json_zmat(j.at("B_reduced")));
  json r = {{"reduced", zmat_json(L)}, {"hnf", zmat_json(hnf_basis(B))}, {"rank", L.c},
            {"lll_reduced", is_lll_reduced(L, delta)}, {"delta", delta.get_str()}};
  if (j.contains("B_reduced")) {
    r["same_lattice_as_B_reduced"] = same;
    require(same, Code::mismatch, "LLL basis does not generate the lattice of B_reduced");
  }
  return r;
}

json cmd_box(Ctx& C) {
  json j = C.req.contains("file") ? C.load("file") : C.req.at("input");
  require(j.value("schema", "") == "lattice-1", Code::validation, "expected schema lattice-1");
  ZMat B = json_zmat(j.contains("B_reduced") ? j.at("B_reduced") : j.at("B"));
  ZVec shift = j.contains("shift") ? json_zvec(j.at("shift")) : ZVec(B.r, 0);
  json boxes = j.contains("boxes") ? j.at("boxes") : json::array({{{"box", j.at("box")}}});
  json out = json::array();
  for (auto& b : boxes) {
    Box box;
    for (auto& s : b.at("box")) box.push_back(json_zvec(s));
    auto pts = box_points(B, shift, box);
    json ps = json::array();
    for (auto& p : pts) ps.push_back(zvec_json(p));
    out.push_back({{"box", b.at("box")}, {"empty", pts.empty()}, {"points", ps}});
  }
  return {{"boxes", out}};
}

std::string flat_summary(const std::string& cmd, const json& r) {
  std::ostringstream o;
  o << cmd << ":";
  for (auto& [k, v] : r.items())
    if (v.is_primitive()) o << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
  if (r.contains("boxes"))
    for (size_t i = 0; i < r.at("boxes").size(); ++i) o << " box" << i << "_points=" << r.at("boxes")[i].at("points").size();
  o << "\n";
  return o.str();
}

}  // namespace

Outcome run_command(const std::string& command, const json& req, const Config& cfg) {
  Outcome out;
  json rep;
  try {
    if (command == "verify-example") {
      require(req.contains("id"), Code::validation, "verify-example needs an id");
      rep = verify_example(req.at("id").get<std::string>(), req.value("fixtures", "fixtures"), cfg);
    } else if (command == "run-suite") {
      json conf;
      if (req.contains("config_file")) conf = load_json(req.at("config_file").get<std::string>());
      else if (req.contains("config")) conf = req.at("config");
      rep = run_suite(req.value("fixtures", "fixtures"), conf, cfg);
    }
  } catch (const Error& e) {
    rep = json();
    rep["error"] = {{"code", code_name(e.code)}, {"message", e.what()}};
    rep["status"] = code_name(e.code);
    rep["exit_code"] = exit_code(e.code);
  } catch (const std::exception& e) {
    rep = json();
    rep["error"] = {{"code", "validation"}, {"message", e.what()}};
    rep["status"] = "validation";
    rep["exit_code"] = 3;
  }
  if (command == "verify-example" || command == "run-suite") {
    if (!rep.contains("schema")) {
      rep["schema"] = "hcg-report-1";
      rep["command"] = {{"name", command}, {"args", req}};
    }
    out.report = rep;
    out.exit_code = rep.at("exit_code").get<int>();
    out.summary = rep.contains("checks") || rep.contains("summary") ? summary_text(rep)
                                                                     : command + ": " + rep.at("status").get<std::string>() +
                                                                           ": " + rep.at("error").at("message").get<std::string>() + "\n";
    return out;
  }

  static const std::map<std::string, std::function<json(Ctx&)>> table = {
      {"volume", cmd_volume},     {"zeta2", cmd_zeta2},          {"sset", cmd_sset},
      {"repequiv", cmd_repequiv}, {"classify", cmd_classify},    {"certify-noniso", cmd_certify},
      {"count", cmd_count},       {"regconst", cmd_regconst},    {"brauer", cmd_brauer},
      {"lattice-lll", cmd_lll},   {"lattice-box", cmd_box}};
  rep["schema"] = "hcg-report-1";
  rep["command"] = {{"name", command},
                    {"args", req},
                    {"seed", cfg.seed},
                    {"precision", cfg.precision},
                    {"prime_bound", cfg.prime_bound}};
  Ctx C{req, cfg};
  Code code = Code::ok;
  try {
    auto it = table.find(command);
    require(it != table.end(), Code::validation, "unknown command " + command);
    rep["result"] = it->second(C);
  } catch (const Error& e) {
    code = e.code;
    rep["error"] = {{"code", code_name(e.code)}, {"message", e.what()}};
  } catch (const json::exception& e) {
    code = Code::validation;
    rep["error"] = {{"code", "validation"}, {"message", std::string("malformed input: ") + e.what()}};
  } catch (const std::exception& e) {
    code = Code::validation;
    rep["error"] = {{"code", "validation"}, {"message", e.what()}};
  }
  rep["provenance"] = C.prov;
  rep["status"] = code == Code::ok ? "pass" : code_name(code);
  rep["exit_code"] = exit_code(code);
  out.report = rep;
  out.exit_code = exit_code(code);
  out.summary = code == Code::ok ? flat_summary(command, rep.at("result"))
                                 : command + ": " + code_name(code) + ": " + rep.at("error").at("message").get<std::string>() + "\n";
  return out;
}

}  // namespace hcg
