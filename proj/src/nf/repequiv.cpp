#include "nf/repequiv.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace hcg {

RepEquivResult repequiv(const RepEquivInput& in) {
  RepEquivResult R;
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  for (int i : in.D_real_ramified) require(i >= 0 && i < in.r1, Code::validation, "D real place index out of range");
  if (!in.D_finite_ramified.empty()) {
    R.verdict = "representation equivalent";
    R.rule = "LV(i)(a) fails: D ramified at a finite place";
    return R;
  }
  bool any = false;
  for (auto& e : in.extensions) {
    require(int(e.odd_level_split.size()) == in.odd_level_primes, Code::validation,
            "extension " + e.label + ": split data missing for level primes");
    require(e.chi_of_c == 1 || e.chi_of_c == -1, Code::validation, "extension " + e.label + ": chi_of_c must be +-1");
    for (int i : e.real_ramified) require(i >= 0 && i < in.r1, Code::validation, "L real place index out of range");
    std::string why;
    if (!e.finite_ramified.empty()) why = "ramified at a finite place";
    else if (sorted(e.real_ramified) != sorted(in.D_real_ramified))
      why = "ramified at " + std::to_string(e.real_ramified.size()) + " real places, D at " +
            std::to_string(in.D_real_ramified.size());
    else if (std::find(e.odd_level_split.begin(), e.odd_level_split.end(), false) != e.odd_level_split.end())
      why = "an odd-exponent level prime is not split";
    else if (e.chi_of_c != -1)
      why = "primes in the class of c are not inert";
    if (why.empty()) {
      any = true;
      R.reasons.push_back(e.label + ": satisfies LV(i)(b)");
    } else {
      R.reasons.push_back(e.label + ": " + why);
    }
  }
  if (any) {
    R.verdict = "inconclusive";
    R.rule = "LV(i) holds for some L; shady analysis required";
  } else {
    R.verdict = "representation equivalent";
    R.rule = "LV(i)(b) fails for every L, so LV(ii)";
  }
  return R;
}

}  // namespace hcg
