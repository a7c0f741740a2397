#pragma once
// hcg-1 Hecke character group dumps
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/num.hpp"

namespace hcg {

enum class PlaceKind { real_ramified, real_split, complex };

struct PlaceTag {
  std::string label;
  PlaceKind kind;
  bool ramified_in_D = false;
  std::vector<int> emb;  // L-embedding classes above the place
  int sigma_sign = 1;    // complex places: Psi^sigma at emb[0] is (s k, t) of emb[1]
};

struct BasisChar {
  std::string label;
  ZVec k;
  std::vector<Q> t, err;
  Z cond_norm = 1;
};

struct Dump {
  std::string F_label, L_label;
  ZVec F_poly, L_poly;
  Z conductor_bound = 1;
  int r = 0;    // rank
  int m = 0;    // number of L-embedding classes
  std::vector<Z> torsion;
  std::vector<PlaceTag> places;
  std::vector<BasisChar> basis;
  ZMat sigma;     // r x r, sigma(x) = sigma * x
  ZMat s_kernel;  // r x s, columns
  int precision = 0;

  ZMat kmat() const;  // m x r
  QMat tmat() const;  // m x r
  QMat emat() const;  // m x r error bounds
  ZVec k_of(const ZVec& x) const;
  QVec t_of(const ZVec& x) const;
  QVec err_of(const ZVec& x) const;
  // k and t of sigma applied to the character data (not the exponent vector)
  void sigma_data(const ZVec& k, const QVec& t, ZVec& k2, QVec& t2) const;
};

Dump parse_dump(const nlohmann::json& j, const std::string& where = "dump");
Dump load_dump(const std::filesystem::path& p);
// the invariant battery: sigma involution, s_kernel sigma-stable, t of s_kernel zero,
// numeric sigma consistency.  Throws a validation error naming the failed check.
void validate_dump(const Dump& d);
// k -> -k everywhere (the other choice of embedding representatives)
Dump conjugate_dump(const Dump& d);

}  // namespace hcg
