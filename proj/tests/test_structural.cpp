#include <catch2/catch_amalgamated.hpp>

#include <mdet/crt.hpp>
#include <mdet/matrix.hpp>
#include <mdet/structural.hpp>

using namespace mdet;

TEST_CASE("split_pq reconstruction is exact across the family", "[structural]") {
  for (i64 d = 1; d <= 300; ++d) {
    const SparseColMatrix m = build_m(d);
    CHECK(reconstruct(split_pq(m)) == m);
  }
}

TEST_CASE("structural engine agrees with certified CRT across the family", "[structural]") {
  for (i64 d = 1; d <= 300; ++d) {
    const SparseColMatrix m = build_m(d);
    const Int s = det_structural(m).value;
    const Int c = det_crt(m, CrtMode::certified()).value;
    REQUIRE(s == c);
  }
}

TEST_CASE("incremental family scan equals the per-d structural engine", "[structural]") {
  FamilyDetScan scan(3000);
  for (i64 d = 1; d <= 3000; ++d) {
    const int incremental = scan.advance();
    REQUIRE(scan.current_d() == d);
    REQUIRE(Int(incremental) == det_structural(build_m(d)).value);
  }
  CHECK(scan.first_cycle_d() == 0);
}

TEST_CASE("family scan spot checks deep into the range", "[structural]") {
  FamilyDetScan scan(100000);
  i64 next_check = 0;
  std::vector<i64> checkpoints = {9999, 10000, 23456, 50000, 99991, 100000};
  for (i64 d = 1; d <= 100000; ++d) {
    const int v = scan.advance();
    if (next_check < static_cast<i64>(checkpoints.size()) &&
        d == checkpoints[static_cast<std::size_t>(next_check)]) {
      REQUIRE(Int(v) == det_structural(build_m(d)).value);
      ++next_check;
    }
  }
  CHECK(next_check == static_cast<i64>(checkpoints.size()));
}

TEST_CASE("family scan rejects bad ranges and over-advancing", "[structural]") {
  CHECK_THROWS_AS(FamilyDetScan(0), std::invalid_argument);
  FamilyDetScan scan(2);
  scan.advance();
  scan.advance();
  CHECK_THROWS_AS(scan.advance(), std::logic_error);
}

TEST_CASE("split_pq mismatch diagnostics", "[structural]") {
  // no +1 in a column
  DenseMatrix no_plus(2);
  no_plus.at(1, 1) = -1;
  no_plus.at(2, 2) = 1;
  CHECK_THROWS_AS(split_pq(to_sparse(no_plus)), StructuralMismatchError);

  // +1 rows collide: not a bijection
  DenseMatrix collide(2);
  collide.at(1, 1) = 1;
  collide.at(1, 2) = 1;
  CHECK_THROWS_AS(split_pq(to_sparse(collide)), StructuralMismatchError);

  // two -1 entries in one column
  DenseMatrix two_minus(3);
  two_minus.at(1, 1) = 1;
  two_minus.at(2, 1) = -1;
  two_minus.at(3, 1) = -1;
  two_minus.at(2, 2) = 1;
  two_minus.at(3, 3) = 1;
  CHECK_THROWS_AS(split_pq(to_sparse(two_minus)), StructuralMismatchError);
}

TEST_CASE("permutation sign by cycle count", "[structural]") {
  CHECK(permutation_sign({1, 2, 3}) == 1);
  CHECK(permutation_sign({2, 1}) == -1);
  CHECK(permutation_sign({2, 1, 4, 3}) == 1);
  CHECK(permutation_sign({2, 3, 1}) == 1);  // 3-cycle is even
  CHECK_THROWS_AS(permutation_sign({1, 5}), std::invalid_argument);
}

TEST_CASE("structural determinant detects the cycle sign cases", "[structural]") {
  // column 1 -> row 2 (+1) and row 1 (-1); column 2 -> row 1 (+1), no -1:
  // A's graph has the single edge 1 -> 2 twice removed, acyclic
  DenseMatrix m(2);
  m.at(2, 1) = 1;
  m.at(1, 1) = -1;
  m.at(1, 2) = 1;
  const auto r = det_structural(to_sparse(m));
  CHECK(r.value == -1);  // sign of the transposition, no cycle
  CHECK(r.engine == Engine::structural);

  // make it cyclic: column 2 also feeds back
  DenseMatrix c(2);
  c.at(2, 1) = 1;
  c.at(1, 1) = -1;
  c.at(1, 2) = 1;
  c.at(2, 2) = -1;
  CHECK(det_structural(to_sparse(c)).value == 0);
}
