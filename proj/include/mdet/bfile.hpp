#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"

namespace mdet {

// two-column sequence format: one "index value" pair per line, LF endings
inline void write_bfile(const std::vector<std::pair<i64, Int>>& terms, std::ostream& os) {
  for (const auto& [index, value] : terms) os << index << " " << value << "\n";
}

inline std::vector<std::pair<i64, Int>> read_bfile(std::istream& is) {
  std::vector<std::pair<i64, Int>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    i64 index = 0;
    std::string value_token, extra;
    if (!(ls >> index >> value_token) || (ls >> extra))
      throw std::invalid_argument("b-file parse: line " + std::to_string(lineno) +
                                  " is not \"index value\"");
    Int value;
    try {
      value = Int(value_token);
    } catch (const std::exception&) {
      throw std::invalid_argument("b-file parse: bad value on line " + std::to_string(lineno));
    }
    out.emplace_back(index, std::move(value));
  }
  return out;
}

inline std::vector<std::pair<i64, Int>> read_bfile_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_bfile(in);
}

}  // namespace mdet
