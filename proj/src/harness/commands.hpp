#pragma once
// every CLI subcommand as a JSON request -> JSON report
#include <string>

#include "brauer/brauer.hpp"
#include "graded/graded.hpp"
#include "harness/verify.hpp"

namespace hcg {

struct Outcome {
  json report;
  std::string summary;
  int exit_code = 0;
};

// known: verify-example, run-suite, volume, zeta2, sset, repequiv, classify, certify-noniso, count,
// regconst, brauer, lattice-lll, lattice-box.  Never throws.
Outcome run_command(const std::string& command, const json& request, const Config& cfg);

// "graded-1" input
struct GradedJob {
  GradedSpec spec;
  int c = 0, cp = 1;
  Ring ring = Ring::Q;
  Z p = 0;
  Z localize = 0;  // 0: no p-local factorisation
  bool complex_check = false;
};
GradedJob parse_graded(const json& j);

// "brauer-1" input
struct BrauerJob {
  std::string group_name;
  FiniteGroup G;
  std::vector<std::pair<GSetSum, GSetSum>> relations;
  bool found = false;  // relations came from brauer_relations
  RationalRep V;
  std::optional<QMat> pairing;
  Ring ring = Ring::Q;
  Z p = 0;
};
BrauerJob parse_brauer(const json& j);
FiniteGroup named_group(const std::string& name);

Ring parse_ring(const std::string& s);

}  // namespace hcg
