#pragma once
#include <filesystem>
#include <string>

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(HCG_SOURCE_DIR) / "fixtures" / rel;
}
