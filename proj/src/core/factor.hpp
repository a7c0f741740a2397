#pragma once
#include <utility>
#include <vector>

#include "core/num.hpp"

namespace hcg {

bool is_probable_prime(const Z& n);
// factorisation of |n|, primes ascending; n != 0
std::vector<std::pair<Z, int>> factor(const Z& n);
std::vector<Z> prime_divisors(const Z& n);
// signed squarefree kernel: n = s * m^2 with s squarefree
Z squarefree_part(const Z& n);
// small primes up to bound (sieve)
std::vector<uint32_t> primes_upto(uint32_t bound);

}  // namespace hcg
