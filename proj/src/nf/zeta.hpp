#pragma once
#include <cstdint>
#include <vector>

#include "nf/field.hpp"

namespace hcg {

struct Interval {
  long double value = 0, err = 0;  // value +- err
};

struct Zeta2Result {
  Interval z;
  long double lower = 0, upper = 0;  // rigorous bracket (up to long double rounding, bounded in err)
  std::uint64_t bound = 0;
  std::vector<Z> bracketed_primes;  // p | index with no override
};

// F = Q is allowed (poly x)
Zeta2Result zeta2(const NumberField& F, std::uint64_t prime_bound);

// local Euler factor prod (1 - p^{-2f})^{-1} from a splitting
long double euler_factor2(const Splitting& s);

struct VolumeConfig {
  bool D_all_real_ramified = true;
  Z delta_D_norm = 1;
  Z level_norm = 1;
};

struct VolumeResult {
  Interval vol;
  Zeta2Result zeta;
};

// |d_F|^{3/2} zeta_F(2) / (2^{2 r1 + 4} pi^{2 r1 + 2}); signature (r1, 1) only
VolumeResult covolume(const NumberField& F, const VolumeConfig& cfg, std::uint64_t prime_bound);

// degree-pattern of a squarefree monic f mod p (p < 2^32): count of irreducible factors per degree
std::vector<int> factor_degree_counts(const ZPoly& f, std::uint32_t p);

}  // namespace hcg
