#pragma once
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace mrpgen::testing {

inline std::filesystem::path
fixture(const std::string& name)
{
  return std::filesystem::path(MRPGEN_FIXTURE_DIR) / name;
}

// Non-comment, non-empty lines split on whitespace.
inline std::vector<std::vector<std::string>>
read_table(const std::string& name)
{
  std::ifstream in(fixture(name));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ss(line);
    std::vector<std::string> row;
    std::string tok;
    while (ss >> tok) {
      row.push_back(tok);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace mrpgen::testing
