#include "harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "harness/jsonio.hpp"
#include "lattice/box.hpp"
#include "lattice/linalg.hpp"
#include "lattice/lll.hpp"
#include "nf/poly.hpp"
#include "nf/zeta.hpp"

namespace hcg {

namespace fs = std::filesystem;

// acceptance tolerances
static const long double kVolumeRel = 1e-5L;
static const Q kEigenAbs(1, 1000);

int exit_code(Code c) {
  switch (c) {
    case Code::ok: return 0;
    case Code::mismatch: return 2;
    case Code::precision:
    case Code::undecided: return 4;
    default: return 3;
  }
}

Code status_code(const std::string& s) {
  if (s == "pass") return Code::ok;
  if (s == "mismatch") return Code::mismatch;
  if (s == "precision" || s == "undecided") return Code::precision;
  return Code::validation;
}

std::string decimal(const Q& x, int places) {
  Z scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  Q y = x * scale + Q(1, 2);
  Z n = y.get_num() / y.get_den();
  if (y < 0 && n * y.get_den() != y.get_num()) n -= 1;  // floor
  bool neg = n < 0;
  if (neg) n = -n;
  std::string s = n.get_str();
  if (places > 0) {
    if (int(s.size()) <= places) s.insert(0, places + 1 - s.size(), '0');
    s.insert(s.size() - places, ".");
  }
  return (neg ? "-" : "") + s;
}

std::string decimal(long double x, int sig) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", sig, x);
  return buf;
}

Verdict compose_verdict(const VerdictInputs& in) {
  Verdict v;
  if (!in.omega_all) {
    v.text = "i-isospectral for all i";
    v.rules.push_back("no Omega-shady character: the Hecke twists agree in every degree");
    return v;
  }
  std::vector<std::string> parts;
  if (!in.omega_0) {
    parts.push_back("0-isospectral");
    v.rules.push_back("no Omega0-shady character");
  } else if (in.cert0) {
    parts.push_back(in.cert0->verdict);
    v.rules.push_back(in.cert0->rule);
  } else {
    parts.push_back("0-isospectrality undecided");
    v.rules.push_back("Omega0-shady characters exist but no certificate was found");
  }
  if (in.h_bullet && in.h_bullet_pairs == 1) {
    parts.push_back("first Betti numbers differ by 1");
    v.rules.push_back("exactly one +- pair of H-shady characters");
  } else if (in.cert1) {
    parts.push_back(in.cert1->verdict);
    v.rules.push_back(in.cert1->rule);
  } else {
    parts.push_back("1-isospectrality undecided");
    v.rules.push_back("no degree-1 certificate");
  }
  if (!in.h_bullet && in.omega_0) {
    parts.push_back("regulator quotient rational");
    v.rules.push_back("no H-shady character: the regulator quotient is a rational number");
  }
  for (size_t i = 0; i < parts.size(); ++i) v.text += (i ? ", " : "") + parts[i];
  return v;
}

ShadyContext shady_context(const Scenario& sc) {
  ShadyContext c;
  c.level_norm = sc.level_norm;
  c.delta_D_norm = sc.delta_norm;
  c.rel_disc_norm = 0;
  for (auto& e : sc.extensions) {
    if (!e.sset) continue;
    json j = load_json(*e.sset);
    if (!j.contains("L_disc")) continue;
    Z Ld = parse_z(j.at("L_disc").get<std::string>());
    Z FF = sc.F.disc * sc.F.disc;
    if (Ld < 0) Ld = -Ld;
    require(Ld % FF == 0, Code::validation, "extension " + e.label + ": disc(F)^2 does not divide disc(L)");
    c.rel_disc_norm = Ld / FF;
    break;
  }
  return c;
}

CertContext cert_context(const Scenario& sc) {
  CertContext c;
  c.D_all_real_ramified = sc.D_all_real;
  c.delta_D_norm = sc.delta_norm;
  c.C_order = sc.C_order;
  c.level_norm = sc.level_norm;
  return c;
}

// index of the real root of F nearest the printed value
static int real_place_index(const NumberField& F, const Q& x, const std::string& where) {
  int best = -1;
  Q bd;
  for (size_t i = 0; i < F.real_roots.size(); ++i) {
    auto [lo, hi] = F.real_roots[i];
    Q d = x < lo ? lo - x : (x > hi ? x - hi : Q(0));
    if (best < 0 || d < bd) best = int(i), bd = d;
  }
  require(best >= 0 && bd < Q(1, 1000), Code::validation, where + ": F_root_re matches no real root of F");
  return best;
}

RepEquivInput repequiv_input(const Scenario& sc) {
  RepEquivInput in;
  in.r1 = sc.F.r1;
  in.D_real_ramified = sc.D_real;
  in.D_finite_ramified = sc.D_finite;
  std::vector<const json*> odd;
  for (auto& f : sc.level_factors)
    if (f.value("exponent", 1) % 2 == 1) odd.push_back(&f);
  in.odd_level_primes = int(odd.size());
  for (size_t k = 0; k < sc.extensions.size(); ++k) {
    auto& e = sc.extensions[k];
    RepEquivExtension x;
    x.label = e.label;
    x.chi_of_c = e.chi_of_c;
    x.finite_ramified = e.finite_ramified;
    if (e.radicand) {
      x.real_ramified = negative_real_places(sc.F, to_qpoly(*e.radicand));
    } else {
      require(e.dump.has_value(), Code::validation, "extension " + e.label + ": needs a radicand or a dump");
      json dj = load_json(*e.dump);
      for (auto& p : dj.at("places"))
        if (p.value("kind", "") == "F-real-ramified-in-L") {
          require(p.contains("F_root_re"), Code::validation, "dump place " + p.value("label", "?") + ": no F_root_re");
          x.real_ramified.push_back(real_place_index(sc.F, parse_q(p.at("F_root_re").get<std::string>()),
                                                     "dump place " + p.value("label", "?")));
        }
      std::sort(x.real_ramified.begin(), x.real_ramified.end());
    }
    for (auto* f : odd) {
      require(f->contains("split") && f->at("split").size() > k, Code::validation,
              "level factor without split data for extension " + e.label);
      x.odd_level_split.push_back(f->at("split").at(k).get<bool>());
    }
    in.extensions.push_back(x);
  }
  return in;
}

std::string short_name(const fs::path& p) {
  fs::path a = p.lexically_normal();
  return (a.parent_path().filename() / a.filename()).generic_string();
}

namespace {

std::string qstr(const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); }

void check_tagged(const json& e, const std::string& key, std::vector<std::string>& bad) {
  if (!e.is_object() || !e.contains("value") || !e.contains("source") ||
      (e.at("source") != "published" && e.at("source") != "derived"))
    bad.push_back(key);
}

struct Run {
  Scenario sc;
  const Config& cfg;
  std::optional<Dump> dump;
  ShadyContext sctx;
  CertContext cctx;
  std::map<std::pair<int, int>, ShadyReport> cache;
  std::map<int, std::optional<Certificate>> certs;
  json checks = json::array();

  Run(Scenario s, const Config& c) : sc(std::move(s)), cfg(c) {}

  const Dump& d() {
    require(dump.has_value(), Code::validation, "scenario " + sc.id + " has no dump");
    return *dump;
  }
  const ShadyReport& shady(Kind k, int degree = -1) {
    auto key = std::make_pair(int(k), degree);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, classify_shady(d(), k, sctx, degree)).first;
    return it->second;
  }
  const std::optional<Certificate>& cert(int degree) {
    auto it = certs.find(degree);
    if (it == certs.end()) it = certs.emplace(degree, non_isospectral_certificate(d(), sctx, cctx, degree)).first;
    return it->second;
  }

  // body fills ck["actual"] (and "rule") and returns whether it matches
  void check(const std::string& name, const json& exp, const std::function<bool(json&)>& body) {
    json ck;
    ck["name"] = name;
    if (exp.is_object()) {
      ck["expected"] = exp.value("value", json());
      ck["source"] = exp.value("source", "");
      if (!exp.value("note", "").empty()) ck["note"] = exp.at("note");
    }
    try {
      ck["status"] = body(ck) ? "pass" : "mismatch";
    } catch (const Error& e) {
      ck["status"] = code_name(e.code);
      ck["message"] = e.what();
    } catch (const std::exception& e) {
      ck["status"] = "validation";
      ck["message"] = e.what();
    }
    checks.push_back(ck);
  }
};

Kind kind_of(const json& v) { return parse_kind(v.get<std::string>()); }

void run_checks(Run& R, const json& E) {
  const Scenario& sc = R.sc;
  if (E.contains("volume"))
    R.check("volume", E.at("volume"), [&](json& ck) {
      long double want = std::stold(qstr(E.at("volume").at("value")));
      auto V = covolume(sc.F, {sc.D_all_real, sc.delta_norm, sc.level_norm}, R.cfg.prime_bound);
      long double rel = std::fabs(V.vol.value - want) / want;
      ck["actual"] = {{"value", decimal(V.vol.value)},
                      {"err", decimal(V.vol.err, 3)},
                      {"prime_bound", R.cfg.prime_bound},
                      {"relative_error", decimal(rel, 3)}};
      ck["tolerance"] = "relative 1e-5";
      ck["rule"] = "|d_F|^{3/2} zeta_F(2) / (2^{2r1+4} pi^{2r1+2})";
      return rel <= kVolumeRel;
    });
  if (E.contains("repequiv"))
    R.check("repequiv", E.at("repequiv"), [&](json& ck) {
      auto r = repequiv(repequiv_input(sc));
      ck["actual"] = r.verdict;
      ck["rule"] = r.rule;
      ck["reasons"] = r.reasons;
      return r.verdict == E.at("repequiv").at("value");
    });
  if (E.contains("minus_rank"))
    R.check("minus_rank", E.at("minus_rank"), [&](json& ck) {
      int r = minus_subgroup(R.d()).c;
      ck["actual"] = r;
      ck["rule"] = "rank of ker(1 + sigma)";
      return r == E.at("minus_rank").at("value").get<int>();
    });

  if (sc.raw.contains("printed_lattice")) {
    json src = {{"value", "printed B and B'"}, {"source", "published"}};
    const json& pl = sc.raw.at("printed_lattice");
    R.check("lattice.lll", src, [&](json& ck) {
      ZMat B = json_zmat(pl.at("B")), Bp = json_zmat(pl.at("B_reduced"));
      ZMat L = lll_reduce(hnf_basis(B));
      ck["actual"] = {{"lll", zmat_json(L)}, {"hnf", zmat_json(hnf_basis(L))}};
      ck["rule"] = "HNF of LLL(B) equals HNF of B'";
      return same_lattice(L, Bp);
    });
    R.check("lattice.k-projection", src, [&](json& ck) {
      ZMat Bp = json_zmat(pl.at("B_reduced"));
      std::vector<int> coords;
      if (sc.raw.contains("k_projection"))
        for (auto& x : sc.raw.at("k_projection")) coords.push_back(x.get<int>());
      else
        coords = default_k_coords(R.d());
      ZMat K = k_projection(R.d(), minus_subgroup(R.d()), coords);
      ck["actual"] = {{"coords", coords}, {"hnf", zmat_json(hnf_basis(K))}};
      ck["rule"] = "k-values of the minus subgroup at the boxed embeddings";
      return same_lattice(K, Bp);
    });
    if (sc.raw.contains("boxes"))
      for (size_t i = 0; i < sc.raw.at("boxes").size(); ++i) {
        const json& b = sc.raw.at("boxes")[i];
        json exp = {{"value", b}, {"source", "published"}};
        exp["value"].erase("box");
        R.check("box[" + std::to_string(i) + "]", exp, [&](json& ck) {
          ZMat Bp = json_zmat(pl.at("B_reduced"));
          Box box;
          for (auto& s : b.at("box")) box.push_back(json_zvec(s));
          auto pts = box_points(Bp, ZVec(Bp.r, 0), box);
          json ps = json::array();
          for (auto& p : pts) ps.push_back(zvec_json(p));
          ck["actual"] = {{"points", ps}};
          ck["box"] = b.at("box");
          ck["rule"] = "exact enumeration of lattice points in the box";
          bool ok = pts.empty() == b.at("empty").get<bool>();
          if (b.contains("contains"))
            ok = ok && std::find(pts.begin(), pts.end(), json_zvec(b.at("contains"))) != pts.end();
          return ok;
        });
      }
  }

  if (E.contains("shady"))
    for (auto& [kname, exp] : E.at("shady").items())
      R.check("shady." + kname, exp, [&, kname = kname, exp = exp](json& ck) {
        const json& v = exp.at("value");
        const ShadyReport& S = R.shady(parse_kind(kname));
        json act = {{"exists", S.exists}, {"families", S.families.size()}};
        json fam = json::array();
        for (auto& f : S.families) {
          json jf = {{"rep", zvec_json(f.rep)}, {"kpoint", zvec_json(f.kpoint)}};
          json ker = json::array();
          for (int c = 0; c < f.ker.c; ++c) ker.push_back(zvec_json(f.ker.col(c)));
          jf["ker"] = ker;
          fam.push_back(jf);
        }
        act["members"] = fam;
        if (S.exists && S.finite()) act["finite"] = S.finite_members().size();
        ck["actual"] = act;
        ck["rule"] = S.rule;
        if (!S.level_check.empty()) ck["level_check"] = S.level_check;
        bool ok = S.exists == v.at("exists").get<bool>();
        if (ok && v.contains("representative")) {
          ZVec rep = json_zvec(v.at("representative"));
          ZVec neg = rep;
          for (auto& x : neg) x = -x;
          ok = in_solution_set(S, rep) && in_solution_set(S, neg);
        }
        if (ok && v.contains("line")) {
          ZMat L(int(v.at("line").size()), 1);
          L.set_col(0, json_zvec(v.at("line")));
          ok = std::all_of(S.families.begin(), S.families.end(),
                           [&](const Family& f) { return same_lattice(f.ker, L); });
        }
        if (ok && v.contains("finite")) {
          std::set<ZVec> want, got;
          for (auto& x : v.at("finite")) {
            ZVec a = json_zvec(x), b = a;
            for (auto& y : b) y = -y;
            want.insert(a);
            want.insert(b);
          }
          ok = S.finite();
          if (ok)
            for (auto& x : S.finite_members()) got.insert(x);
          ok = ok && got == want;
        }
        return ok;
      });

  if (E.contains("eigenvalues"))
    R.check("eigenvalues", E.at("eigenvalues"), [&](json& ck) {
      const json& v = E.at("eigenvalues").at("value");
      int degree = v.value("degree", -1);
      Kind k = kind_of(v.at("kind"));
      if (degree >= 0 && k == Kind::omega_all) k = Kind::omega_i;
      const ShadyReport& S = R.shady(k, degree);
      auto want = v.at("values");
      auto ev = first_eigenvalues(R.d(), S, want.size());
      json got = json::array();
      bool ok = ev.size() == want.size();
      for (size_t i = 0; i < ev.size(); ++i) {
        got.push_back(decimal(ev[i].value, 6));
        if (i < want.size()) ok = ok && abs(ev[i].value - parse_q(want[i].get<std::string>())) <= kEigenAbs;
      }
      ck["actual"] = got;
      ck["tolerance"] = "absolute 1e-3";
      ck["rule"] = S.rule;
      return ok;
    });

  if (E.contains("certificates"))
    R.check("certificates", E.at("certificates"), [&](json& ck) {
      json got = json::array();
      std::map<int, Q> have;
      for (int i : {0, 1}) {
        auto& c = R.cert(i);
        if (!c) continue;
        have[i] = c->lambda;
        got.push_back({{"degree", i},
                       {"lambda", decimal(c->lambda, 6)},
                       {"err", decimal(c->err, 9)},
                       {"lambda_expr", c->lambda_expr},
                       {"psi", zvec_json(c->psi)},
                       {"verdict", c->verdict},
                       {"rule", c->rule}});
      }
      ck["actual"] = got;
      ck["tolerance"] = "absolute 1e-3";
      std::map<int, Q> want;
      for (auto& c : E.at("certificates").at("value"))
        want[c.at("degree").get<int>()] = parse_q(c.at("lambda").get<std::string>());
      if (want.size() != have.size()) return false;
      for (auto& [i, l] : want)
        if (!have.count(i) || abs(have[i] - l) > kEigenAbs) return false;
      return true;
    });

  if (E.contains("count"))
    R.check("count", E.at("count"), [&](json& ck) {
      const json& v = E.at("count").at("value");
      const ShadyReport& S = R.shady(kind_of(v.at("kind")));
      long n = count_upto(R.d(), S, parse_q(qstr(v.at("T"))));
      ck["actual"] = n;
      ck["rule"] = "members with lambda <= T, counted with multiplicity";
      return n == v.at("count").get<long>();
    });

  if (E.contains("sset"))
    R.check("sset", E.at("sset"), [&](json& ck) {
      const json& v = E.at("sset").at("value");
      const ExtensionRef* e = nullptr;
      for (auto& x : sc.extensions)
        if (x.sset) {
          e = &x;
          break;
        }
      require(e != nullptr, Code::validation, "no extension with an sset block");
      auto S = sset(load_sset_input(sc, *e));
      json act = {{"finite", S.finite}};
      std::vector<std::string> ps, cons;
      for (auto& p : S.primes) ps.push_back(p.get_str());
      for (auto& p : S.conservative) cons.push_back(p.get_str());
      if (S.finite) act["primes"] = ps;
      if (!cons.empty()) act["conservative"] = cons;
      if (!S.finite) act["witness"] = {{"h", S.witness_h}, {"modulus", S.witness_modulus}};
      ck["actual"] = act;
      ck["rule"] = S.rule;
      bool ok = S.finite == v.at("finite").get<bool>();
      if (ok && v.contains("primes")) {
        std::vector<std::string> want;
        for (auto& p : v.at("primes")) want.push_back(qstr(p));
        ok = want == ps;
      }
      return ok;
    });

  if (E.contains("verdict"))
    R.check("verdict", E.at("verdict"), [&](json& ck) {
      VerdictInputs in;
      in.omega_all = R.shady(Kind::omega_all).exists;
      in.omega_0 = R.shady(Kind::omega_0).exists;
      const ShadyReport& H = R.shady(Kind::h_bullet);
      in.h_bullet = H.exists;
      in.h_bullet_pairs = !H.exists ? 0 : (H.finite() ? long(H.finite_members().size() / 2) : -1);
      if (in.omega_all) {
        if (in.omega_0) in.cert0 = R.cert(0);
        in.cert1 = R.cert(1);
      }
      auto V = compose_verdict(in);
      ck["actual"] = V.text;
      ck["rule"] = V.rules;
      return V.text == E.at("verdict").at("value");
    });
}

}  // namespace

json verify_scenario(const fs::path& path, const Config& cfg) {
  json rep;
  rep["schema"] = "hcg-report-1";
  rep["command"] = {{"name", "verify"},
                    {"scenario", short_name(path)},
                    {"seed", cfg.seed},
                    {"precision", cfg.precision},
                    {"prime_bound", cfg.prime_bound}};
  json prov = json::array();
  auto fail_with = [&](Code c, const std::string& msg) {
    rep["provenance"] = prov;
    rep["checks"] = json::array();
    rep["status"] = code_name(c);
    rep["error"] = {{"code", code_name(c)}, {"message", msg}};
    rep["exit_code"] = exit_code(c);
    return rep;
  };
  std::optional<Run> R;
  try {
    require(fs::exists(path), Code::io, "missing fixture " + short_name(path));
    prov.push_back({{"file", short_name(path)}, {"fnv1a64", file_digest(path)}});
    R.emplace(load_scenario(path), cfg);
    rep["command"]["id"] = R->sc.id;
    for (auto& e : R->sc.extensions) {
      for (auto& p : {e.dump, e.sset})
        if (p) {
          require(fs::exists(*p), Code::io, "missing fixture " + short_name(*p));
          prov.push_back({{"file", short_name(*p)}, {"fnv1a64", file_digest(*p)}});
        }
    }
    const json& E = R->sc.expected;
    require(E.is_object() && !E.empty(), Code::validation, "scenario " + R->sc.id + " has no expectations");
    std::vector<std::string> bad;
    for (auto& [k, v] : E.items()) {
      if (k == "shady") {
        for (auto& [kk, vv] : v.items()) check_tagged(vv, "shady." + kk, bad);
      } else {
        check_tagged(v, k, bad);
      }
    }
    if (!bad.empty()) {
      std::string msg = "untagged expectations:";
      for (auto& b : bad) msg += " " + b;
      fail(Code::validation, msg);
    }
    static const std::set<std::string> known = {"volume", "repequiv", "minus_rank", "shady", "eigenvalues",
                                                "certificates", "count", "sset", "verdict"};
    for (auto& [k, v] : E.items()) require(known.count(k), Code::validation, "unknown expectation " + k);
    for (auto& e : R->sc.extensions)
      if (e.dump) {
        auto d = load_dump(*e.dump);
        validate_dump(d);
        R->dump = std::move(d);
        break;
      }
    R->sctx = shady_context(R->sc);
    R->cctx = cert_context(R->sc);
  } catch (const Error& e) {
    return fail_with(e.code, e.what());
  } catch (const std::exception& e) {
    return fail_with(Code::validation, e.what());
  }
  run_checks(*R, R->sc.expected);
  rep["provenance"] = prov;
  rep["checks"] = R->checks;
  Code worst = Code::ok;
  json diff = json::array();
  for (auto& c : R->checks) {
    Code k = status_code(c.at("status"));
    if (k == Code::ok) continue;
    diff.push_back({{"name", c.at("name")},
                    {"status", c.at("status")},
                    {"expected", c.value("expected", json())},
                    {"actual", c.value("actual", json())}});
    if (c.contains("message")) diff.back()["message"] = c.at("message");
    // errors outrank mismatches
    if (k != Code::mismatch) {
      if (worst == Code::ok || worst == Code::mismatch) worst = k;
    } else if (worst == Code::ok) {
      worst = Code::mismatch;
    }
  }
  rep["diff"] = diff;
  int passed = 0;
  for (auto& c : R->checks) passed += c.at("status") == "pass";
  rep["passed"] = passed;
  rep["total"] = R->checks.size();
  rep["status"] = worst == Code::ok ? "pass" : (worst == Code::mismatch ? "mismatch" : code_name(worst));
  rep["exit_code"] = exit_code(worst);
  return rep;
}

static fs::path scenario_path(const std::string& id, const fs::path& fixtures) {
  if (id.find('/') != std::string::npos || (id.size() > 5 && id.substr(id.size() - 5) == ".json")) return id;
  return fixtures / "scenarios" / (id + ".json");
}

json verify_example(const std::string& id, const fs::path& fixtures, const Config& cfg) {
  json r = verify_scenario(scenario_path(id, fixtures), cfg);
  r["command"]["name"] = "verify-example";
  return r;
}

json run_suite(const fs::path& fixtures, const json& config, const Config& cfg) {
  std::vector<std::string> ids;
  if (config.is_null()) {
    fs::path dir = fixtures / "scenarios";
    require(fs::is_directory(dir), Code::io, "missing fixture directory " + short_name(dir));
    for (auto& e : fs::directory_iterator(dir)) {
      std::string f = e.path().filename().string();
      if (e.path().extension() == ".json" && f.find(".sset.") == std::string::npos) ids.push_back(e.path().stem().string());
    }
    std::sort(ids.begin(), ids.end());
  } else {
    require(config.is_object() && config.contains("scenarios") && config.at("scenarios").is_array(), Code::validation,
            "suite config needs a \"scenarios\" array");
    for (auto& s : config.at("scenarios")) ids.push_back(s.get<std::string>());
  }
  json rep;
  rep["schema"] = "hcg-report-1";
  rep["command"] = {{"name", "run-suite"},
                    {"scenarios", ids},
                    {"seed", cfg.seed},
                    {"precision", cfg.precision},
                    {"prime_bound", cfg.prime_bound}};
  json missing = json::array();
  std::vector<std::string> present;
  for (auto& id : ids) {
    fs::path p = scenario_path(id, fixtures);
    if (!fs::exists(p)) {
      missing.push_back(short_name(p));
      continue;
    }
    // referenced dump and sset files too
    try {
      auto sc = load_scenario(p);
      bool ok = true;
      for (auto& e : sc.extensions)
        for (auto& q : {e.dump, e.sset})
          if (q && !fs::exists(*q)) missing.push_back(short_name(*q)), ok = false;
      if (!ok) continue;
    } catch (const Error&) {
      // reported by the scenario run itself
    }
    present.push_back(id);
  }
  unsigned workers = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  std::vector<json> results(present.size());
  for (size_t start = 0; start < present.size(); start += workers) {
    std::vector<std::future<json>> fut;
    for (size_t i = start; i < std::min(present.size(), start + workers); ++i)
      fut.push_back(std::async(std::launch::async, [&, i] { return verify_example(present[i], fixtures, cfg); }));
    for (size_t i = 0; i < fut.size(); ++i) results[start + i] = fut[i].get();
  }
  json rows = json::array(), reports = json::array();
  int passed = 0;
  Code worst = missing.empty() ? Code::ok : Code::io;
  for (size_t i = 0; i < present.size(); ++i) {
    auto& r = results[i];
    bool ok = r.at("status") == "pass";
    passed += ok;
    rows.push_back({{"id", present[i]},
                    {"status", r.at("status")},
                    {"passed", r.value("passed", 0)},
                    {"total", r.value("total", 0)}});
    reports.push_back(r);
    Code k = status_code(r.at("status"));
    if (k == Code::ok) continue;
    if (k != Code::mismatch) {
      if (worst == Code::ok || worst == Code::mismatch) worst = k;
    } else if (worst == Code::ok) {
      worst = Code::mismatch;
    }
  }
  rep["missing"] = missing;
  rep["summary"] = rows;
  rep["reports"] = reports;
  rep["passed"] = passed;
  rep["total"] = present.size() + missing.size();
  rep["status"] = worst == Code::ok ? "pass" : (worst == Code::mismatch ? "mismatch" : code_name(worst));
  rep["exit_code"] = exit_code(worst);
  return rep;
}

std::string summary_text(const json& r) {
  std::ostringstream o;
  std::string name = r.at("command").value("name", "");
  auto one = [&](const json& x) {
    std::string id = x.at("command").value("id", x.at("command").value("scenario", ""));
    o << id << ": " << x.at("status").get<std::string>();
    if (x.contains("total")) o << " (" << x.value("passed", 0) << "/" << x.value("total", 0) << " checks)";
    o << "\n";
    if (x.contains("error")) o << "  error: " << x.at("error").at("message").get<std::string>() << "\n";
    for (auto& c : x.value("checks", json::array())) {
      std::string st = c.at("status");
      o << "  " << (st == "pass" ? "PASS " : "FAIL ") << c.at("name").get<std::string>();
      if (st != "pass") o << " [" << st << "]";
      if (c.contains("actual") && c.at("actual").is_string()) o << ": " << c.at("actual").get<std::string>();
      if (c.contains("actual") && c.at("actual").is_object() && c.at("actual").contains("value"))
        o << ": " << c.at("actual").at("value").get<std::string>();
      o << "\n";
      if (st != "pass") {
        o << "    expected " << c.value("expected", json()).dump() << "\n";
        if (c.contains("actual")) o << "    actual   " << c.at("actual").dump() << "\n";
        if (c.contains("message")) o << "    " << c.at("message").get<std::string>() << "\n";
      }
    }
  };
  if (name == "run-suite") {
    o << "scenario          status      checks\n";
    for (auto& row : r.at("summary")) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%-17s %-11s %d/%d\n", row.at("id").get<std::string>().c_str(),
                    row.at("status").get<std::string>().c_str(), row.at("passed").get<int>(),
                    row.at("total").get<int>());
      o << buf;
    }
    for (auto& m : r.at("missing")) o << "missing fixture: " << m.get<std::string>() << "\n";
    o << r.at("passed").get<int>() << "/" << r.at("total").get<int>() << " scenarios pass\n";
    for (auto& x : r.at("reports"))
      if (x.at("status") != "pass") one(x);
  } else {
    one(r);
  }
  return o.str();
}

}  // namespace hcg
