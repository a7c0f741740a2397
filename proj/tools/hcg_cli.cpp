// command-line front end; talks to the library only through hcg/hcg.h
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcg/hcg.h"

using json = nlohmann::json;

int main(int argc, char** argv) {
  CLI::App app{"Hecke character shady analysis, regulator constants and example verification"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1, prime_bound = 10000000;
  unsigned precision = 60, jobs = 0;
  bool as_json = false;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--precision", precision, "working precision in decimal digits")->capture_default_str();
  app.add_option("--prime-bound", prime_bound, "Euler product prime bound")->capture_default_str();
  app.add_option("--jobs", jobs, "run-suite workers (0: all cores)");
  app.add_flag("--json", as_json, "print the JSON report instead of the summary");

  std::string command;
  json req = json::object();
  std::string path, kind = "omega-all", scenario, fixtures = "fixtures", config, T;
  int degree = -1, eigen = 0, extension = -1;
  std::uint64_t bound = 0;

  auto dump_cmd = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("dump", path, "hcg-1 dump")->required()->check(CLI::ExistingFile);
    s->add_option("--scenario", scenario, "scenario supplying level and discriminant data")->check(CLI::ExistingFile);
    return s;
  };
  auto* classify = dump_cmd("classify", "shady characters of a kind");
  classify->add_option("--kind", kind, "l2, omega-all, omega-0, h-bullet, omega-i")->capture_default_str();
  classify->add_option("--degree", degree, "cohomological degree (omega-i)");
  classify->add_option("--eigenvalues", eigen, "also list the first n eigenvalues");
  auto* certify = dump_cmd("certify-noniso", "search for a non-isospectrality certificate");
  certify->add_option("--degree", degree, "degree")->required();
  auto* count = dump_cmd("count", "number of shady characters with eigenvalue at most T");
  count->add_option("--kind", kind, "shady kind")->capture_default_str();
  count->add_option("--degree", degree, "degree (omega-i)");
  count->add_option("--T", T, "eigenvalue bound")->required();

  auto file_cmd = [&](const char* name, const char* help, const char* what) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("input", path, what)->required()->check(CLI::ExistingFile);
    return s;
  };
  file_cmd("regconst", "regulator constant of a graded module", "graded-1 file");
  file_cmd("brauer", "regulator constants of Brauer relations", "brauer-1 file");
  file_cmd("volume", "covolume of the arithmetic group", "scenario-1 file");
  auto* zeta = file_cmd("zeta2", "Dedekind zeta at 2", "scenario-1 file");
  zeta->add_option("--bound", bound, "prime bound (defaults to --prime-bound)");
  auto* ss = file_cmd("sset", "finiteness of the exceptional prime set", "scenario-1 file");
  ss->add_option("--extension", extension, "extension index");
  file_cmd("repequiv", "representation equivalence test", "scenario-1 file");

  auto* lattice = app.add_subcommand("lattice", "exact lattice tools");
  lattice->require_subcommand(1);
  auto* lll = lattice->add_subcommand("lll", "LLL-reduce the columns of B");
  lll->add_option("input", path, "lattice-1 file")->required()->check(CLI::ExistingFile);
  auto* box = lattice->add_subcommand("box", "lattice points in boxes");
  box->add_option("input", path, "lattice-1 file")->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify-example", "run a scenario against its expectations");
  std::string id;
  verify->add_option("id", id, "lv, small-iso, zero-not-one, zero-betti, hnot0 or a scenario path")->required();
  verify->add_option("--fixtures", fixtures, "fixture directory")->capture_default_str();
  auto* suite = app.add_subcommand("run-suite", "verify every scenario");
  suite->add_option("--fixtures", fixtures, "fixture directory")->capture_default_str();
  suite->add_option("--config", config, "suite config {\"scenarios\": [...]}")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  CLI::App* sub = app.get_subcommands().front();
  command = sub->get_name();
  if (command == "lattice") command = "lattice-" + sub->get_subcommands().front()->get_name();

  if (command == "classify" || command == "certify-noniso" || command == "count") {
    req["dump"] = path;
    if (!scenario.empty()) req["scenario"] = scenario;
    if (command != "certify-noniso") req["kind"] = kind;
    if (degree >= 0) req["degree"] = degree;
    if (eigen > 0) req["eigenvalues"] = eigen;
    if (command == "count") req["T"] = T;
  } else if (command == "regconst" || command == "brauer" || command == "lattice-lll" || command == "lattice-box") {
    req["file"] = path;
  } else if (command == "volume" || command == "zeta2" || command == "sset" || command == "repequiv") {
    req["scenario"] = path;
    if (bound) req["bound"] = bound;
    if (extension >= 0) req["extension"] = extension;
  } else if (command == "verify-example") {
    req["id"] = id;
    req["fixtures"] = fixtures;
  } else if (command == "run-suite") {
    req["fixtures"] = fixtures;
    if (!config.empty()) req["config_file"] = config;
  }

  hcg_context* ctx = nullptr;
  if (hcg_context_new(&ctx) != HCG_OK) return 3;
  if (hcg_set_seed(ctx, seed) != HCG_OK || hcg_set_precision(ctx, precision) != HCG_OK ||
      hcg_set_prime_bound(ctx, prime_bound) != HCG_OK || hcg_set_jobs(ctx, jobs) != HCG_OK) {
    std::fprintf(stderr, "error: %s\n", hcg_last_error(ctx));
    hcg_context_free(ctx);
    return 3;
  }
  hcg_report* rep = nullptr;
  hcg_status st = hcg_run_json(ctx, command.c_str(), req.dump().c_str(), &rep);
  int rc = 3;
  if (rep) {
    std::fputs(as_json ? hcg_report_json(rep) : hcg_report_summary(rep), stdout);
    if (as_json) std::fputc('\n', stdout);
    rc = hcg_report_exit_code(rep);
    hcg_report_free(rep);
  } else {
    std::fprintf(stderr, "error (%s): %s\n", hcg_status_name(st), hcg_last_error(ctx));
  }
  hcg_context_free(ctx);
  return rc;
}
