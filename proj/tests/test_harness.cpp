#include <doctest.h>

#include <fstream>
#include <set>

#include "fixtures.hpp"
#include "harness/commands.hpp"

using namespace hcg;
namespace fs = std::filesystem;

namespace {

Config quick() {
  Config c;
  c.prime_bound = 100000;
  return c;
}

json run(const std::string& cmd, const json& req, int want_rc = 0) {
  auto o = run_command(cmd, req, quick());
  CHECK_MESSAGE(o.exit_code == want_rc, cmd << ": " << o.summary);
  CHECK(!o.summary.empty());
  return o.report;
}

Certificate cert(int degree) {
  Certificate c;
  c.degree = degree;
  c.verdict = "not " + std::to_string(degree) + "-isospectral";
  c.rule = "unique pair";
  return c;
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("hcg_harness_" + name);
  fs::remove_all(d);
  fs::copy(fixture(""), d, fs::copy_options::recursive);
  return d;
}

void write(const fs::path& p, const json& j) {
  std::ofstream o(p);
  o << j.dump(1);
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("verdict composition") {
  VerdictInputs none;
  CHECK(compose_verdict(none).text == "i-isospectral for all i");
  CHECK(compose_verdict(none).rules.size() == 1);

  VerdictInputs a;
  a.omega_all = true;
  a.cert1 = cert(1);
  CHECK(compose_verdict(a).text == "0-isospectral, not 1-isospectral");

  VerdictInputs b;
  b.omega_all = b.h_bullet = true;
  b.h_bullet_pairs = 1;
  CHECK(compose_verdict(b).text == "0-isospectral, first Betti numbers differ by 1");
  b.h_bullet_pairs = 2;
  CHECK(compose_verdict(b).text == "0-isospectral, 1-isospectrality undecided");

  VerdictInputs c;
  c.omega_all = c.omega_0 = true;
  c.cert0 = cert(0);
  c.cert1 = cert(1);
  auto v = compose_verdict(c);
  CHECK(v.text == "not 0-isospectral, not 1-isospectral, regulator quotient rational");
  CHECK(v.rules.size() == 3);
  c.cert0.reset();
  CHECK(compose_verdict(c).text == "0-isospectrality undecided, not 1-isospectral, regulator quotient rational");
}

TEST_CASE("decimal rendering and exit codes") {
  CHECK(decimal(Q(1, 3), 4) == "0.3333");
  CHECK(decimal(Q(2, 3), 4) == "0.6667");
  CHECK(decimal(Q(-1, 8), 2) == "-0.12");
  CHECK(decimal(Q(-5, 1000), 3) == "-0.005");
  CHECK(decimal(Q(7), 0) == "7");
  CHECK(decimal(0.25L) == "0.25");
  CHECK(exit_code(Code::ok) == 0);
  CHECK(exit_code(Code::mismatch) == 2);
  CHECK(exit_code(Code::validation) == 3);
  CHECK(exit_code(Code::io) == 3);
  CHECK(exit_code(Code::precision) == 4);
  CHECK(status_code("pass") == Code::ok);
  CHECK(status_code("domain") == Code::validation);
}

TEST_CASE("scenario contexts") {
  auto lv = load_scenario(fixture("scenarios/lv.json"));
  auto in = repequiv_input(lv);
  REQUIRE(in.extensions.size() == 1);
  CHECK(in.extensions[0].real_ramified.size() == 2);
  CHECK(repequiv(in).verdict == "representation equivalent");
  auto h = load_scenario(fixture("scenarios/hnot0.json"));
  auto hi = repequiv_input(h);
  CHECK(int(hi.extensions[0].real_ramified.size()) == h.F.r1);  // from the dump place tags
  CHECK(repequiv(hi).verdict == "inconclusive");
  CHECK(shady_context(h).rel_disc_norm == 1);
  CHECK(shady_context(lv).rel_disc_norm == 0);  // no sset block: unknown
  CHECK(cert_context(h).C_order == 2);
}

TEST_CASE("graded-1 parsing") {
  json j = load_json(fixture("inputs/graded-squares.json"));
  auto job = parse_graded(j);
  CHECK(job.spec.n() == 2);
  CHECK(job.localize == 2);
  CHECK(job.complex_check);
  auto bad = j;
  bad["dims"] = {1};
  CHECK_THROWS_AS(parse_graded(bad), Error);
  bad = j;
  bad["generators"][0]["iota_partner"] = "U";
  CHECK_THROWS_AS(parse_graded(bad), Error);
  bad = j;
  bad["generators"].push_back(j["generators"][0]);
  CHECK_THROWS_AS(parse_graded(bad), Error);
  bad = j;
  bad["generators"][0]["matrix"] = {{"1", "0"}, {"0", "1"}};  // degree 1 but supported on degree 0
  CHECK_THROWS_AS(parse_graded(bad), Error);
  bad = j;
  bad["ring"] = "R";
  CHECK_THROWS_AS(parse_graded(bad), Error);
  auto prod = parse_graded(load_json(fixture("inputs/graded-product.json")));
  CHECK(prod.spec.C.order() == 4);
  CHECK(prod.cp == prod.spec.C.index({1, 1}));
}

TEST_CASE("brauer-1 parsing") {
  auto job = parse_brauer(load_json(fixture("inputs/brauer-v4.json")));
  CHECK(job.G.order == 4);
  CHECK(job.found);
  CHECK(!job.relations.empty());
  CHECK(named_group("S4").order == 24);
  CHECK(named_group("D6").order == 12);
  CHECK(named_group("Dic3").order == 12);
  CHECK(named_group("SL2(3)").order == 24);
  CHECK_THROWS_AS(named_group("M11"), Error);
  json j = {{"schema", "brauer-1"},
            {"group", {{"name", "V4"}}},
            {"relation", {{"S1", {"trivial", "whole", "whole"}}, {"S2", {{{"gens", {1}}}, {{"gens", {2}}}, {{"gens", {3}}}}}}},
            {"rep", {{"sum", {"trivial", {{"sign", {{"gens", {1}}}}}}}}}};
  auto e = parse_brauer(j);
  CHECK(e.V.degree == 2);
  CHECK(e.relations[0].second.size() == 3);
  j["rep"] = {{"matrices", {{{"1"}}, {{"1"}}, {{"1"}}, {{"-1"}}}}};  // not a homomorphism
  CHECK_THROWS_AS(parse_brauer(j), Error);
}

TEST_CASE("commands") {
  auto r = run("regconst", {{"file", fixture("inputs/graded-squares.json").string()}});
  CHECK(r["result"]["value"] == "1/2");
  CHECK(r["result"]["class"]["representative"] == "2");
  CHECK(r["result"]["local"]["global"]["valuation"].get<long>() % 2 != 0);
  CHECK(r["result"].contains("complex_check"));
  CHECK(r["provenance"].size() == 1);
  auto p = run("regconst", {{"file", fixture("inputs/graded-product.json").string()}});
  CHECK(p["result"]["class"]["representative"] == "6");

  auto b = run("brauer", {{"file", fixture("inputs/brauer-v4.json").string()}});
  CHECK(b["result"]["relations"][0]["class"]["representative"] == "2");
  json notrel = {{"schema", "brauer-1"}, {"group", {{"name", "C2"}}}, {"relation", {{"S1", {"trivial"}}, {"S2", {"whole"}}}}};
  auto nb = run("brauer", {{"input", notrel}}, 3);
  CHECK(nb["status"] == "domain");

  auto l = run("lattice-lll", {{"file", fixture("inputs/lattice-zero-not-one.json").string()}});
  CHECK(l["result"]["same_lattice_as_B_reduced"] == true);
  auto bx = run("lattice-box", {{"file", fixture("inputs/lattice-zero-not-one.json").string()}});
  CHECK(bx["result"]["boxes"][0]["empty"] == true);
  CHECK(bx["result"]["boxes"][1]["empty"] == false);

  auto c = run("classify", {{"dump", fixture("dumps/zero-betti.json").string()}, {"kind", "h-bullet"}});
  CHECK(c["result"]["finite_members"].size() == 2);
  auto e = run("classify", {{"dump", fixture("dumps/zero-not-one.json").string()},
                            {"degree", 1},
                            {"eigenvalues", 2},
                            {"scenario", fixture("scenarios/zero-not-one.json").string()}});
  CHECK(e["result"]["eigenvalues"][0]["value"].get<std::string>().rfind("30.216", 0) == 0);
  auto ce = run("certify-noniso", {{"dump", fixture("dumps/hnot0.json").string()}, {"degree", 0}});
  CHECK(ce["result"]["verdict"] == "not 0-isospectral");
  auto cn = run("count", {{"dump", fixture("dumps/zero-not-one.json").string()}, {"T", "300"}});
  CHECK(cn["result"]["count"] == 4);
  auto rq = run("repequiv", {{"scenario", fixture("scenarios/lv.json").string()}});
  CHECK(rq["result"]["verdict"] == "representation equivalent");
  auto z = run("zeta2", {{"poly", {"0", "1"}}, {"bound", 1000}});
  CHECK(z["result"]["zeta2"].get<std::string>().rfind("1.64", 0) == 0);

  CHECK(run("frobnicate", json::object(), 3)["error"]["message"] == "unknown command frobnicate");
  CHECK(run("classify", {{"dump", "/no/such/file.json"}}, 3)["error"]["code"] == "io");
  CHECK(run("count", {{"dump", fixture("dumps/zero-not-one.json").string()}}, 3)["status"] == "validation");
}

TEST_CASE("reports are byte-stable and echo the seed") {
  Config a = quick();
  json req = {{"file", fixture("inputs/graded-squares.json").string()}};
  auto x = run_command("regconst", req, a), y = run_command("regconst", req, a);
  CHECK(x.report.dump() == y.report.dump());
  a.seed = 99;
  auto z = run_command("regconst", req, a);
  CHECK(z.report["command"]["seed"] == 99);
  CHECK(z.report["result"]["value"] == x.report["result"]["value"]);
  auto v1 = verify_example("zero-not-one", fixture(""), quick()), v2 = verify_example("zero-not-one", fixture(""), quick());
  CHECK(v1.dump() == v2.dump());
  for (auto& ck : v1["checks"])
    if (ck["name"] != "volume") CHECK_MESSAGE(ck["status"] == "pass", ck["name"]);
}

TEST_CASE("verify diffs and validation failures") {
  auto d = scratch("diff");
  json sc = load_json(d / "scenarios/zero-not-one.json");
  sc["expected"]["count"]["value"]["count"] = 5;
  sc["expected"]["minus_rank"]["value"] = 3;
  write(d / "scenarios/zero-not-one.json", sc);
  auto r = verify_example("zero-not-one", d, quick());
  CHECK(r["exit_code"] == 2);
  std::set<std::string> names;
  for (auto& x : r["diff"]) names.insert(x["name"]);
  CHECK(names.count("count"));
  CHECK(names.count("minus_rank"));
  for (auto& x : r["diff"])
    if (x["name"] == "count") CHECK(x["actual"] == 4);

  sc["expected"]["count"]["source"] = "folklore";
  write(d / "scenarios/zero-not-one.json", sc);
  auto u = verify_example("zero-not-one", d, quick());
  CHECK(u["exit_code"] == 3);
  CHECK(u["error"]["message"] == "untagged expectations: count");

  sc = load_json(fixture("scenarios/zero-not-one.json"));
  sc["expected"]["colour"] = {{"value", "blue"}, {"source", "derived"}};
  write(d / "scenarios/zero-not-one.json", sc);
  CHECK(verify_example("zero-not-one", d, quick())["error"]["message"] == "unknown expectation colour");

  json dump = load_json(fixture("dumps/zero-not-one.json"));
  std::swap(dump["sigma_matrix"][0], dump["sigma_matrix"][1]);
  write(d / "dumps/zero-not-one.json", dump);
  sc = load_json(fixture("scenarios/zero-not-one.json"));
  write(d / "scenarios/zero-not-one.json", sc);
  auto bad = verify_example("zero-not-one", d, quick());
  CHECK(bad["exit_code"] == 3);
  CHECK(bad["error"]["message"].get<std::string>().find("involution") != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("run-suite") {
  auto e = run_suite(fixture(""), {{"scenarios", json::array()}}, quick());
  CHECK(e["status"] == "pass");
  CHECK(e["total"] == 0);
  CHECK(e["exit_code"] == 0);
  auto m = run_suite(fixture(""), {{"scenarios", {"lv", "nope", "other"}}}, quick());
  CHECK(m["exit_code"] == 3);
  CHECK(m["missing"] == json({"scenarios/nope.json", "scenarios/other.json"}));
  CHECK(m["summary"].size() == 1);
  CHECK(m["total"] == 3);
  Config one = quick(), two = quick();
  one.jobs = 1, two.jobs = 2;
  json cfg = {{"scenarios", {"zero-betti", "lv", "small-iso"}}};
  auto a = run_suite(fixture(""), cfg, one), b = run_suite(fixture(""), cfg, two);
  CHECK(a.dump() == b.dump());  // merge order is the input order
  CHECK(a["summary"][0]["id"] == "zero-betti");
  CHECK(summary_text(a).find("scenario") != std::string::npos);
  CHECK_THROWS_AS(run_suite(fixture(""), {{"ids", json::array()}}, quick()), Error);
}

}  // TEST_SUITE
