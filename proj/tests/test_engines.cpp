#include <catch2/catch_amalgamated.hpp>

#include <mdet/bareiss.hpp>
#include <mdet/crt.hpp>
#include <mdet/laplace.hpp>
#include <mdet/matrix.hpp>
#include <mdet/modular.hpp>
#include <mdet/primes.hpp>
#include <mdet/structural.hpp>

using namespace mdet;

static DenseMatrix identity(i64 n) {
  DenseMatrix m(n);
  for (i64 i = 1; i <= n; ++i) m.at(i, i) = 1;
  return m;
}

TEST_CASE("laplace oracle basics", "[engines]") {
  DenseMatrix swap2(2);
  swap2.at(1, 2) = 1;
  swap2.at(2, 1) = 1;
  CHECK(det_laplace(swap2).value == -1);
  CHECK(det_laplace(identity(3)).value == 1);
  CHECK(det_laplace(to_dense(build_m(2))).value == 1);
  CHECK(det_laplace(DenseMatrix(0)).value == 1);  // empty product
  CHECK(det_laplace(to_dense(build_m(6))).value == 1);  // n = 12, at the guard
  CHECK_THROWS_AS(det_laplace(DenseMatrix(13)), std::invalid_argument);
}

TEST_CASE("bareiss on the family and degenerate inputs", "[engines]") {
  CHECK(det_bareiss(to_dense(build_m(1))).value == -1);
  CHECK(det_bareiss(to_dense(build_m(1))).value == det_laplace(to_dense(build_m(1))).value);
  CHECK(det_bareiss(to_dense(build_m(3))).value == -1);
  CHECK(det_bareiss(to_dense(build_m(3))).value == det_laplace(to_dense(build_m(3))).value);

  DenseMatrix repeated(3);
  for (i64 c = 1; c <= 3; ++c) {
    repeated.at(1, c) = c;
    repeated.at(2, c) = c;  // row 2 = row 1
    repeated.at(3, c) = 1;
  }
  CHECK(det_bareiss(repeated).value == 0);

  CHECK(det_bareiss(DenseMatrix(0)).value == 1);
  DenseMatrix one(1);
  one.at(1, 1) = -7;
  CHECK(det_bareiss(one).value == -7);

  const auto r = det_bareiss(to_dense(build_m(2)));
  CHECK(r.engine == Engine::bareiss);
  CHECK(r.certification == Certification::certified);
}

TEST_CASE("modular determinant residues", "[engines]") {
  CHECK(det_mod_p(build_m(2), 7) == 1);   // det +1
  CHECK(det_mod_p(build_m(1), 5) == 4);   // det -1
  const SparseColMatrix id3 = to_sparse(identity(3));
  for (u64 p : {2ull, 3ull, 97ull, (1ull << 61) - 1}) CHECK(det_mod_p(id3, p) == 1 % p);
  CHECK_THROWS_AS(det_mod_p(build_m(1), 0), std::invalid_argument);
  CHECK_THROWS_AS(det_mod_p(build_m(1), 1), std::invalid_argument);
  CHECK_THROWS_AS(det_mod_p(build_m(1), u64(1) << 62), std::invalid_argument);

  // singular input: residue 0 is the legitimate answer
  DenseMatrix z(2);
  z.at(1, 1) = 1;
  z.at(2, 1) = 1;
  CHECK(det_mod_p(to_sparse(z), 11) == 0);
}

TEST_CASE("hadamard bound on column norms", "[engines]") {
  CHECK(hadamard_bound(build_m(1)) == 1);
  CHECK(hadamard_bound(build_m(2)) == 2);  // norms sqrt2,1,1,sqrt2
  CHECK(hadamard_bound(to_sparse(identity(5))) == 1);
  CHECK(hadamard_bound(SparseColMatrix(3)) == 0);  // empty columns
  CHECK(hadamard_bound(SparseColMatrix(0)) == 1);  // empty product
}

TEST_CASE("crt engine certified mode", "[engines]") {
  const SparseColMatrix m = build_m(2);
  const DetResult r = det_crt(m, CrtMode::certified());
  CHECK(r.value == 1);
  CHECK(r.value == det_bareiss(to_dense(m)).value);
  CHECK(r.engine == Engine::modular_crt);
  CHECK(r.certification == Certification::certified);
  REQUIRE(!r.prime_trace.empty());
  Int modulus = 1;
  for (const auto& pr : r.prime_trace) {
    CHECK(is_prime(pr.prime));
    CHECK(pr.residue < pr.prime);
    modulus *= pr.prime;
  }
  CHECK(modulus > 2 * hadamard_bound(m) + 1);
  // primes are pairwise distinct
  for (std::size_t i = 0; i < r.prime_trace.size(); ++i)
    for (std::size_t j = i + 1; j < r.prime_trace.size(); ++j)
      CHECK(r.prime_trace[i].prime != r.prime_trace[j].prime);

  CHECK(det_crt(SparseColMatrix(0), CrtMode::certified()).value == 1);
  CHECK(det_crt(build_m(200), CrtMode::certified()).value == 1);  // = (-1)^200
}

TEST_CASE("crt engine probabilistic mode", "[engines]") {
  const SparseColMatrix m = build_m(5);
  const DetResult a = det_crt(m, CrtMode::probabilistic(5, 42));
  const DetResult b = det_crt(m, CrtMode::probabilistic(5, 42));
  CHECK(a.value == -1);
  REQUIRE(a.prime_trace.size() == 5);
  CHECK(a.prime_trace == b.prime_trace);  // reproducible given the seed
  for (const auto& pr : a.prime_trace) {
    CHECK(pr.prime >= kPrimeWindowLo);
    CHECK(pr.prime < kPrimeWindowHi);
    CHECK(is_prime(pr.prime));
  }
  // five ~2^60 primes dwarf this Hadamard bound, so the label upgrades
  CHECK(a.certification == Certification::certified);
  CHECK_THROWS_AS(det_crt(m, CrtMode::probabilistic(0, 1)), std::invalid_argument);
}

TEST_CASE("prime machinery", "[engines]") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(!is_prime(1));
  CHECK(!is_prime(561));  // Carmichael
  CHECK(is_prime((u64(1) << 61) - 1));
  CHECK(certified_prime(0) < kPrimeWindowHi);
  CHECK(is_prime(certified_prime(0)));
  CHECK(certified_prime(1) < certified_prime(0));
  CHECK(is_prime(certified_prime(7)));
  const auto ps = sample_primes(8, 123);
  CHECK(ps == sample_primes(8, 123));
  CHECK(ps != sample_primes(8, 124));
}

TEST_CASE("conjectured value", "[engines]") {
  CHECK(conjectured_value(1) == -1);
  CHECK(conjectured_value(2) == 1);
  CHECK(conjectured_value(200) == 1);
  CHECK_THROWS_AS(conjectured_value(0), std::invalid_argument);
}

TEST_CASE("split form of the family", "[engines]") {
  const SplitForm f1 = split_pq(build_m(1));
  CHECK(f1.perm == std::vector<i64>{2, 1});
  CHECK(f1.minus_row == std::vector<i64>{0, 0});

  const SplitForm f2 = split_pq(build_m(2));
  CHECK(f2.perm == std::vector<i64>{2, 1, 4, 3});
  CHECK(f2.minus_row == std::vector<i64>{4, 0, 0, 1});

  // a column with two +1 entries is outside the supported shape
  DenseMatrix bad(2);
  bad.at(1, 1) = 1;
  bad.at(2, 1) = 1;
  bad.at(1, 2) = 1;
  CHECK_THROWS_AS(split_pq(to_sparse(bad)), StructuralMismatchError);
}

TEST_CASE("structural engine values", "[engines]") {
  CHECK(det_structural(build_m(1)).value == -1);
  CHECK(det_structural(build_m(1)).value == det_laplace(to_dense(build_m(1))).value);
  CHECK(det_structural(build_m(2)).value == 1);
  CHECK(det_structural(build_m(2)).value == det_laplace(to_dense(build_m(2))).value);

  // P = identity, Q a full 2-cycle: singular
  DenseMatrix cyc(2);
  cyc.at(1, 1) = 1;
  cyc.at(2, 2) = 1;
  cyc.at(1, 2) = -1;
  cyc.at(2, 1) = -1;
  CHECK(det_structural(to_sparse(cyc)).value == 0);
  CHECK(det_bareiss(cyc).value == 0);
}
