#pragma once
// scenario verification against tagged expectations, and the suite driver
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "harness/scenario.hpp"
#include "shady/classify.hpp"

namespace hcg {

struct Config {
  std::uint64_t seed = 1;
  unsigned precision = 60;  // decimal digits for floating work
  std::uint64_t prime_bound = 10000000;
  unsigned jobs = 0;  // run-suite workers, 0: hardware concurrency
};

// 0 pass, 2 mismatch, 3 validation (and io, domain, ...), 4 precision
int exit_code(Code c);
Code status_code(const std::string& status);

// decimal rendering of an exact rational, rounded half up
std::string decimal(const Q& x, int places);
std::string decimal(long double x, int sig = 10);

struct VerdictInputs {
  bool omega_all = false;
  bool omega_0 = false;
  bool h_bullet = false;
  long h_bullet_pairs = -1;  // -1: infinitely many
  std::optional<Certificate> cert0, cert1;
};
struct Verdict {
  std::string text;
  std::vector<std::string> rules;  // one per clause
};
Verdict compose_verdict(const VerdictInputs& in);

// analysis context derived from a scenario (first extension with a dump)
ShadyContext shady_context(const Scenario& sc);
CertContext cert_context(const Scenario& sc);
RepEquivInput repequiv_input(const Scenario& sc);

// provenance entry name: "<parent>/<file>"
std::string short_name(const std::filesystem::path& p);

// report JSON with "checks", "status", "exit_code"; never throws for computational failures
json verify_scenario(const std::filesystem::path& scenario, const Config& cfg);
json verify_example(const std::string& id, const std::filesystem::path& fixtures, const Config& cfg);

// config: {"scenarios": [id or path, ...]}; null config means every scenario under fixtures/scenarios
json run_suite(const std::filesystem::path& fixtures, const json& config, const Config& cfg);

std::string summary_text(const json& report);

}  // namespace hcg
