#pragma once
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nf/field.hpp"
#include "nf/repequiv.hpp"
#include "nf/sset.hpp"

namespace hcg {

using json = nlohmann::json;

json load_json(const std::filesystem::path& p);
std::string file_digest(const std::filesystem::path& p);  // FNV-1a 64, hex

struct ExtensionRef {
  std::string label;
  std::optional<std::filesystem::path> dump;
  std::optional<std::filesystem::path> sset;
  std::optional<ZPoly> radicand;
  int chi_of_c = 0;
  std::vector<std::string> finite_ramified;
};

struct Scenario {
  std::string id;
  std::filesystem::path path;
  json raw;
  NumberField F;
  std::string field_label;
  bool D_all_real = true;
  std::vector<int> D_real;  // resolved indices
  std::vector<std::string> D_finite;
  Z delta_norm = 1, level_norm = 1;
  std::vector<json> level_factors;
  int C_order = 0, C_iso_order = 0;
  std::vector<ExtensionRef> extensions;
  json expected;  // may be null
};

Scenario load_scenario(const std::filesystem::path& p);
SSetInput load_sset_input(const Scenario& sc, const ExtensionRef& e);

ZPoly json_zpoly(const json& j);

}  // namespace hcg
