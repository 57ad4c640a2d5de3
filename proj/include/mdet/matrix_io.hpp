#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "matrix.hpp"

namespace mdet {

// Text form: header "n <dim>", then one line "<row> <col> <value>" per
// nonzero, 1-based, sorted by (col, row). LF endings, single spaces.
inline void write_matrix(const SparseColMatrix& m, std::ostream& os) {
  os << "n " << m.n << "\n";
  for (i64 c = 1; c <= m.n; ++c)
    for (const auto& e : m.column(c)) os << e.row << " " << c << " " << e.value << "\n";
}

inline void write_matrix_file(const SparseColMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_matrix(m, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

// reference parser; accepts the triples in any order, rejects duplicates,
// out-of-range indices and values outside {-1, +1}
inline SparseColMatrix read_matrix(std::istream& is) {
  std::string tag;
  i64 n = -1;
  if (!(is >> tag >> n) || tag != "n" || n < 0)
    throw std::invalid_argument("matrix parse: bad header, expected \"n <dim>\"");
  SparseColMatrix m(n);
  i64 r = 0, c = 0;
  long long v = 0;
  while (is >> r >> c >> v) {
    if (r < 1 || r > n || c < 1 || c > n)
      throw std::invalid_argument("matrix parse: index outside [1, n]");
    if (v != 1 && v != -1)
      throw std::invalid_argument("matrix parse: value outside {-1, +1}");
    m.column(c).push_back({r, static_cast<int>(v)});
  }
  if (!is.eof()) throw std::invalid_argument("matrix parse: malformed entry line");
  for (auto& col : m.cols)
    std::sort(col.begin(), col.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.row < b.row; });
  validate(m);  // catches duplicate rows as non-increasing
  return m;
}

inline SparseColMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_matrix(in);
}

}  // namespace mdet
