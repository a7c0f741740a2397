#pragma once
#include <string>
#include <vector>

#include "core/num.hpp"

namespace hcg {

struct RepEquivExtension {
  std::string label;
  std::vector<int> real_ramified;    // real places of F ramified in L (sorted indices)
  std::vector<std::string> finite_ramified;
  std::vector<bool> odd_level_split;  // per odd-exponent prime of N: split in L?
  int chi_of_c = 0;                   // -1: primes in class c-bar are inert in L
};

struct RepEquivInput {
  int r1 = 0;
  std::vector<int> D_real_ramified;
  std::vector<std::string> D_finite_ramified;
  int odd_level_primes = 0;
  std::vector<RepEquivExtension> extensions;
};

struct RepEquivResult {
  std::string verdict;  // "representation equivalent" | "inconclusive"
  std::string rule;
  std::vector<std::string> reasons;  // per extension, which clause decides it
};

RepEquivResult repequiv(const RepEquivInput& in);

}  // namespace hcg
