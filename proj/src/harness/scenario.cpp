#include "harness/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hcg {

namespace fs = std::filesystem;

json load_json(const fs::path& p) {
  std::ifstream in(p);
  require(bool(in), Code::io, "cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Code::validation, p.filename().string() + ": malformed JSON: " + e.what());
  }
}

std::string file_digest(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  require(bool(in), Code::io, "cannot open " + p.string());
  std::uint64_t h = 1469598103934665603ULL;
  char c;
  while (in.get(c)) {
    h ^= (unsigned char)c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

ZPoly json_zpoly(const json& j) {
  require(j.is_array(), Code::validation, "polynomial must be an array of integer strings");
  std::vector<std::string> s;
  for (auto& x : j) {
    require(x.is_string() || x.is_number_integer(), Code::validation, "polynomial coefficient must be an integer");
    s.push_back(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long long>()));
  }
  return zpoly(s);
}

static const json& need(const json& j, const char* key, const std::string& where) {
  require(j.is_object() && j.contains(key), Code::validation, where + ": missing \"" + key + "\"");
  return j.at(key);
}

Scenario load_scenario(const fs::path& p) {
  Scenario sc;
  sc.path = fs::absolute(p);
  sc.raw = load_json(p);
  const json& j = sc.raw;
  std::string where = p.filename().string();
  require(need(j, "schema", where) == "scenario-1", Code::validation, where + ": unknown schema");
  sc.id = need(j, "id", where).get<std::string>();
  const json& f = need(j, "field", where);
  sc.field_label = f.value("label", "");
  std::map<Z, std::vector<std::pair<int, int>>> over;
  if (f.contains("splitting_overrides"))
    for (auto& [k, v] : f.at("splitting_overrides").items()) {
      std::vector<std::pair<int, int>> fe;
      for (auto& x : v) fe.push_back({x.at(0).get<int>(), x.at(1).get<int>()});
      over[parse_z(k)] = fe;
    }
  Z index = f.contains("index") ? parse_z(f.at("index").get<std::string>()) : Z(1);
  sc.F = parse_field(json_zpoly(need(f, "poly", where)), index, over);
  sc.F.label = sc.field_label;
  if (f.contains("disc"))
    require(parse_z(f.at("disc").get<std::string>()) == sc.F.disc, Code::validation,
            where + ": asserted discriminant " + f.at("disc").get<std::string>() + " but computed " + sc.F.disc.get_str());
  if (f.contains("signature"))
    require(f.at("signature").at(0).get<int>() == sc.F.r1 && f.at("signature").at(1).get<int>() == sc.F.r2,
            Code::validation, where + ": asserted signature does not match");
  const json& D = need(j, "D", where);
  if (D.at("ramified_real").is_string()) {
    require(D.at("ramified_real") == "all", Code::validation, where + ": ramified_real must be \"all\" or a list");
    for (int i = 0; i < sc.F.r1; ++i) sc.D_real.push_back(i);
  } else {
    for (auto& x : D.at("ramified_real")) sc.D_real.push_back(x.get<int>());
    sc.D_all_real = int(sc.D_real.size()) == sc.F.r1;
  }
  for (auto& x : D.value("ramified_finite", json::array())) sc.D_finite.push_back(x.dump());
  sc.delta_norm = parse_z(D.value("delta_norm", "1"));
  require(sc.delta_norm >= 1, Code::validation, where + ": delta_norm must be positive");
  const json& L = need(j, "level", where);
  sc.level_norm = parse_z(L.value("norm", "1"));
  for (auto& x : L.value("factors", json::array())) sc.level_factors.push_back(x);
  const json& C = need(j, "C", where);
  sc.C_order = C.value("order", 0);
  sc.C_iso_order = C.value("C_iso_order", 0);
  fs::path dir = sc.path.parent_path();
  for (auto& e : need(j, "extensions", where)) {
    ExtensionRef x;
    x.label = e.value("label", "");
    if (e.contains("dump")) x.dump = (dir / e.at("dump").get<std::string>()).lexically_normal();
    if (e.contains("sset")) x.sset = (dir / e.at("sset").get<std::string>()).lexically_normal();
    if (e.contains("radicand")) x.radicand = json_zpoly(e.at("radicand"));
    x.chi_of_c = e.value("chi_of_c", 0);
    for (auto& y : e.value("finite_ramified", json::array())) x.finite_ramified.push_back(y.dump());
    sc.extensions.push_back(x);
  }
  if (j.contains("expected")) sc.expected = j.at("expected");
  return sc;
}

SSetInput load_sset_input(const Scenario& sc, const ExtensionRef& e) {
  require(e.sset.has_value(), Code::validation, "extension " + e.label + " has no sset block");
  json j = load_json(*e.sset);
  std::string where = e.sset->filename().string();
  SSetInput in;
  in.F_poly = sc.F.f;
  in.L_poly = json_zpoly(need(j, "L_poly", where));
  in.alpha_in_L = json_zpoly(need(j, "alpha_in_L", where));
  in.L_disc = parse_z(need(j, "L_disc", where).get<std::string>());
  for (auto& p : need(j, "L_disc_primes", where)) in.L_disc_primes.push_back(parse_z(p.get<std::string>()));
  in.class_group_exponent = j.value("class_group_exponent_F", 1);
  in.delta_level_norm = sc.delta_norm * sc.level_norm;
  for (auto& m : need(j, "moduli", where)) {
    SSetModulus M;
    M.label = m.value("label", "");
    for (auto& u : m.at("units")) M.units.push_back(json_zpoly(u));
    in.moduli.push_back(M);
  }
  in.ramified_primes_of_D = int(j.value("ramified_primes_of_D", json::array()).size());
  return in;
}

}  // namespace hcg
