#pragma once
#include <optional>
#include <string>
#include <vector>

#include "lattice/box.hpp"
#include "shady/dump.hpp"

namespace hcg {

enum class Kind { l2, omega_all, omega_0, h_bullet, omega_i };
Kind parse_kind(const std::string& s);
std::string kind_name(Kind k);

struct ShadyContext {
  Z level_norm = 1;
  Z delta_D_norm = 1;
  Z rel_disc_norm = 1;  // N(delta_{L/F}); 0 if unknown
};

// one coset x0 + ker of solutions sharing their boxed k-values
struct Family {
  ZVec kpoint;  // k at the boxed coordinates
  ZVec rep;     // exponent vector over the dump basis
  ZMat ker;     // r x q, free directions
  int deg_lo = 0, deg_hi = 0;
  bool degenerate = false;  // some free direction has t = 0 everywhere
};

struct ShadyReport {
  Kind kind;
  int degree = -1;
  bool exists = false;
  std::vector<Family> families;
  std::vector<int> coords;  // boxed embedding classes
  std::string rule;
  std::string level_check;
  bool structural_block = false;  // decided by place data alone
  bool finite() const;
  std::vector<ZVec> finite_members() const;  // when finite
};

ZMat minus_subgroup(const Dump& d);  // r x d basis of ker(I + sigma)
// first embedding class of every place, in place order
std::vector<int> default_k_coords(const Dump& d);
ZMat k_projection(const Dump& d, const ZMat& sub, const std::vector<int>& coords);

ShadyReport classify_shady(const Dump& d, Kind kind, const ShadyContext& ctx, int degree = -1);
// does x satisfy the exact integer conditions of the kind (and t = 0 where required)?
bool is_shady(const Dump& d, Kind kind, const ZVec& x, int degree = -1, std::string* why = nullptr);
bool in_solution_set(const ShadyReport& R, const ZVec& x);

struct Lambda {
  ZVec x;
  Q value;  // at the central t values
  Q err;    // rigorous bound from the t errors
};

// per-place eigenvalues and total; throws naming the place if x is not Omega-admissible
struct CasimirResult {
  std::vector<Q> per_place, per_place_err;
  Q total, err;
};
CasimirResult casimir_lambda(const Dump& d, const ZVec& x);

// all members of the report's families with lambda <= T, sorted by (value, x)
std::vector<Lambda> enumerate_upto(const Dump& d, const ShadyReport& R, const Q& T);
// distinct eigenvalues (clusters) in increasing order, the first n of them
struct Cluster {
  Q lo, hi;  // interval hull
  Q value;   // central value of the first member
  std::vector<ZVec> members;
  bool exact = true;  // members provably share the eigenvalue
};
std::vector<Cluster> cluster(const Dump& d, const std::vector<Lambda>& ls);
std::vector<Cluster> first_eigenvalues(const Dump& d, const ShadyReport& R, size_t n, Q T0 = 16, Q Tmax = Q(1000000));
long count_upto(const Dump& d, const ShadyReport& R, const Q& T);

struct CertContext {
  bool D_all_real_ramified = true;
  Z delta_D_norm = 1;
  int C_order = 2;
  Z level_norm = 1;
};

struct Certificate {
  int degree = 0;
  Q lambda, err;
  ZVec psi;  // one of the pair
  std::string lambda_expr;
  bool conductor_square = true;
  std::string verdict, rule;
};

std::optional<Certificate> non_isospectral_certificate(const Dump& d, const ShadyContext& ctx, const CertContext& cc,
                                                       int degree, Q Tmax = Q(100000));

}  // namespace hcg
