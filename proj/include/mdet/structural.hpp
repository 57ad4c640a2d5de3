#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "det.hpp"
#include "matrix.hpp"

namespace mdet {

// the input is outside the P - Q shape; the structural engine must not run
struct StructuralMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// M = P - Q with P the +1 entries (a permutation matrix) and Q the magnitudes
// of the -1 entries (at most one per column)
struct SplitForm {
  i64 n = 0;
  std::vector<i64> perm;       // perm[c-1] = row of the +1 in column c, a bijection
  std::vector<i64> minus_row;  // row of the -1 in column c, 0 when absent
};

// throws StructuralMismatchError unless every column holds exactly one +1 and
// at most one -1, with the +1 rows forming a bijection on [1, n]
inline SplitForm split_pq(const SparseColMatrix& m) {
  SplitForm f;
  f.n = m.n;
  f.perm.assign(static_cast<std::size_t>(m.n), 0);
  f.minus_row.assign(static_cast<std::size_t>(m.n), 0);
  std::vector<char> row_taken(static_cast<std::size_t>(m.n), 0);
  for (i64 c = 1; c <= m.n; ++c) {
    i64 plus = 0, minus = 0;
    for (const auto& e : m.column(c)) {
      if (e.value > 0) {
        if (plus)
          throw StructuralMismatchError("split_pq: two +1 entries in column " + std::to_string(c));
        plus = e.row;
      } else {
        if (minus)
          throw StructuralMismatchError("split_pq: two -1 entries in column " + std::to_string(c));
        minus = e.row;
      }
    }
    if (!plus)
      throw StructuralMismatchError("split_pq: no +1 entry in column " + std::to_string(c));
    if (row_taken[static_cast<std::size_t>(plus - 1)])
      throw StructuralMismatchError("split_pq: +1 rows are not a bijection, row " +
                                    std::to_string(plus) + " repeats");
    row_taken[static_cast<std::size_t>(plus - 1)] = 1;
    f.perm[static_cast<std::size_t>(c - 1)] = plus;
    f.minus_row[static_cast<std::size_t>(c - 1)] = minus;
  }
  return f;
}

// rebuilds P - Q; the round trip through split_pq must be the identity
inline SparseColMatrix reconstruct(const SplitForm& f) {
  SparseColMatrix m(f.n);
  for (i64 c = 1; c <= f.n; ++c) {
    const i64 plus = f.perm[static_cast<std::size_t>(c - 1)];
    const i64 minus = f.minus_row[static_cast<std::size_t>(c - 1)];
    if (minus == plus)
      throw std::invalid_argument("reconstruct: +1 and -1 collide in column " + std::to_string(c));
    auto& col = m.column(c);
    if (minus && minus < plus) col.push_back({minus, -1});
    col.push_back({plus, +1});
    if (minus && minus > plus) col.push_back({minus, -1});
  }
  return m;
}

// sign of the column -> row bijection, via cycle count
inline int permutation_sign(const std::vector<i64>& perm) {
  const i64 n = static_cast<i64>(perm.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  i64 cycles = 0;
  for (i64 s = 1; s <= n; ++s) {
    if (seen[static_cast<std::size_t>(s - 1)]) continue;
    ++cycles;
    i64 c = s;
    while (!seen[static_cast<std::size_t>(c - 1)]) {
      seen[static_cast<std::size_t>(c - 1)] = 1;
      c = perm[static_cast<std::size_t>(c - 1)];
      if (c < 1 || c > n) throw std::invalid_argument("permutation_sign: not a permutation");
    }
  }
  return (n - cycles) % 2 == 0 ? 1 : -1;
}

// O(n) determinant for split-able matrices. With M = P - Q and A = P^{-1}Q,
// det M = sign(P) * det(I - A). A has at most one unit entry per column, so
// det(I - A) is 0 when the functional graph c -> perm^{-1}(minus_row(c))
// contains a cycle and 1 otherwise.
inline DetResult det_structural(const SparseColMatrix& m) {
  const SplitForm f = split_pq(m);
  const i64 n = f.n;
  std::vector<i64> perm_inv(static_cast<std::size_t>(n) + 1, 0);
  for (i64 c = 1; c <= n; ++c) perm_inv[static_cast<std::size_t>(f.perm[c - 1])] = c;
  std::vector<i64> next(static_cast<std::size_t>(n) + 1, 0);  // 0 = no successor
  for (i64 c = 1; c <= n; ++c)
    if (f.minus_row[c - 1]) next[static_cast<std::size_t>(c)] = perm_inv[f.minus_row[c - 1]];

  // 0 = unvisited, 1 = on the current walk, 2 = finished
  std::vector<char> state(static_cast<std::size_t>(n) + 1, 0);
  std::vector<i64> walk;
  bool cyclic = false;
  for (i64 s = 1; s <= n && !cyclic; ++s) {
    if (state[static_cast<std::size_t>(s)]) continue;
    walk.clear();
    i64 c = s;
    while (c && state[static_cast<std::size_t>(c)] == 0) {
      state[static_cast<std::size_t>(c)] = 1;
      walk.push_back(c);
      c = next[static_cast<std::size_t>(c)];
    }
    if (c && state[static_cast<std::size_t>(c)] == 1) cyclic = true;
    for (i64 v : walk) state[static_cast<std::size_t>(v)] = 2;
  }
  Int value = cyclic ? Int(0) : Int(permutation_sign(f.perm));
  return {std::move(value), Engine::structural, Certification::certified, {}};
}

// Walks d = 1, 2, ... and yields det_structural(build_m(d)) for each d
// without rebuilding the matrix. The -1 block of the family only ever gains
// entries as d grows, each column exactly once, so a union-find pointing at
// chain terminals detects the first cycle in near-constant amortized time.
class FamilyDetScan {
 public:
  explicit FamilyDetScan(i64 d_max) : d_max_(d_max) {
    if (d_max < 1) throw std::invalid_argument("FamilyDetScan: d_max must be >= 1");
    parent_.resize(static_cast<std::size_t>(2 * d_max) + 1);
    for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<i64>(i);
  }

  i64 current_d() const { return d_; }

  // first d whose matrix is singular, 0 when none seen so far
  i64 first_cycle_d() const { return first_cycle_d_; }

  // advance from d to d+1; returns det M(d+1), one of -1, 0, +1
  int advance() {
    if (d_ >= d_max_) throw std::logic_error("FamilyDetScan: advanced past d_max");
    const i64 d = ++d_;
    // even column 2d carries its -1 at row d-1 from birth
    if (d >= 2) add_edge(2 * d, plus_column_of_row(d - 1));
    // odd column 2b-1 gains its -1 at row 3b+1 once 3b+1 <= 2d
    if ((2 * d - 2) % 3 == 0) {
      const i64 b = (2 * d - 2) / 3;
      if (b >= 1) add_edge(2 * b - 1, plus_column_of_row(3 * b + 1));
    }
    if ((2 * d - 1) % 3 == 0) {
      const i64 b = (2 * d - 1) / 3;
      if (b >= 1) add_edge(2 * b - 1, plus_column_of_row(3 * b + 1));
    }
    if (cyclic_) return 0;
    return d % 2 == 0 ? 1 : -1;  // sign of d transpositions
  }

 private:
  // the +1 entries pair rows 2b-1 <-> 2b, so the column holding +1 in row r
  // is r+1 for odd r and r-1 for even r
  static i64 plus_column_of_row(i64 r) { return r % 2 != 0 ? r + 1 : r - 1; }

  i64 find(i64 x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }

  // new graph edge u -> v; u never had an out-edge before
  void add_edge(i64 u, i64 v) {
    if (cyclic_) return;
    const i64 terminal = find(v);
    if (terminal == u) {
      cyclic_ = true;
      first_cycle_d_ = d_;
      return;
    }
    parent_[static_cast<std::size_t>(u)] = terminal;
  }

  i64 d_ = 0;
  i64 d_max_ = 0;
  i64 first_cycle_d_ = 0;
  bool cyclic_ = false;
  std::vector<i64> parent_;
};

}  // namespace mdet
