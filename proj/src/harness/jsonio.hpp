#pragma once
// integer vectors and matrices <-> JSON (numbers when they fit, decimal strings otherwise)
#include <json.hpp>

#include "core/num.hpp"

namespace hcg {

using json = nlohmann::json;

inline json zvec_json(const ZVec& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
  return a;
}

inline Z json_z(const json& x) {
  require(x.is_string() || x.is_number_integer(), Code::validation, "expected an integer, got " + x.dump());
  return x.is_string() ? parse_z(x.get<std::string>()) : Z(x.get<long>());
}

inline Q json_q(const json& x) {
  require(x.is_string() || x.is_number_integer(), Code::validation, "expected a rational string, got " + x.dump());
  return x.is_string() ? parse_q(x.get<std::string>()) : Q(x.get<long>());
}

inline ZVec json_zvec(const json& j) {
  require(j.is_array(), Code::validation, "expected an integer array");
  ZVec v;
  for (auto& x : j) v.push_back(json_z(x));
  return v;
}

template <class T, class F>
Mat<T> json_mat(const json& rows, F conv) {
  require(rows.is_array(), Code::validation, "matrix must be an array of rows");
  if (rows.empty()) return Mat<T>();
  require(rows[0].is_array(), Code::validation, "matrix must be an array of rows");
  Mat<T> M(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < M.r; ++i) {
    require(rows[i].is_array() && int(rows[i].size()) == M.c, Code::validation, "matrix rows differ in length");
    for (int j = 0; j < M.c; ++j) M(i, j) = conv(rows[i][j]);
  }
  return M;
}
inline ZMat json_zmat(const json& rows) { return json_mat<Z>(rows, json_z); }
inline QMat json_qmat(const json& rows) { return json_mat<Q>(rows, json_q); }

inline json zmat_json(const ZMat& M) {
  json a = json::array();
  for (int i = 0; i < M.r; ++i) a.push_back(zvec_json(M.row(i)));
  return a;
}

inline json qmat_json(const QMat& M) {
  json a = json::array();
  for (int i = 0; i < M.r; ++i) {
    json row = json::array();
    for (int j = 0; j < M.c; ++j) row.push_back(M(i, j).get_str());
    a.push_back(row);
  }
  return a;
}

}  // namespace hcg
