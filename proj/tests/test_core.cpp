#include <doctest.h>

#include "alphatoep/core.hpp"
#include "alphatoep/rng.hpp"

using namespace alphatoep;

TEST_SUITE("core") {

TEST_CASE("lex_rank basics") {
  CHECK(lex_rank(MultiIndex{0, 0, 0}, MultiIndex{3, 4, 5}) == 0);
  CHECK(lex_rank(MultiIndex{7}, MultiIndex{11}) == 7);

  // Enumerate the box (2,3) in row-major order and compare position by position.
  MultiIndex n{2, 3};
  long long pos = 0;
  for (long long i = 0; i < 2; ++i)
    for (long long j = 0; j < 3; ++j) {
      CHECK(lex_rank(MultiIndex{i, j}, n) == pos);
      CHECK(lex_unrank(pos, n) == MultiIndex{i, j});
      ++pos;
    }
  CHECK(lex_rank(MultiIndex{1, 2}, n) == 5);
  CHECK(lex_unrank(5, n) == MultiIndex{1, 2});

  CHECK_THROWS_AS(lex_rank(MultiIndex{2, 0}, n), std::domain_error);
  CHECK_THROWS_AS(lex_rank(MultiIndex{0, -1}, n), std::domain_error);
  CHECK_THROWS_AS(lex_unrank(6, n), std::domain_error);
  CHECK_THROWS_AS(lex_unrank(-1, n), std::domain_error);
}

TEST_CASE("lex_rank and lex_unrank are mutually inverse") {
  for (const MultiIndex& n :
       {MultiIndex{17}, MultiIndex{4, 5}, MultiIndex{2, 3, 4}, MultiIndex{3, 3, 3, 3}, MultiIndex{10, 10, 10, 10}}) {
    for (long long pos = 0; pos < product(n); ++pos) CHECK(lex_rank(lex_unrank(pos, n), n) == pos);
    MultiIndex idx = zeros(n.dims());
    long long pos = 0;
    do {
      CHECK(lex_unrank(pos++, n) == idx);
    } while (next_in_box(idx, n));
    CHECK(pos == product(n));
  }
}

TEST_CASE("mod_vec") {
  CHECK(mod_vec(MultiIndex{-3}, MultiIndex{5}) == MultiIndex{2});
  CHECK(mod_vec(MultiIndex{0, 0}, MultiIndex{2, 3}) == MultiIndex{0, 0});
  CHECK(mod_vec(MultiIndex{7, -1}, MultiIndex{5, 3}) == MultiIndex{2, 2});

  // Periodicity: adding any multiple of n componentwise does not change the residue.
  SplitMix64 rng(42);
  MultiIndex n{5, 3, 7};
  for (int trial = 0; trial < 50; ++trial) {
    MultiIndex r = zeros(3), t = zeros(3);
    for (int k = 0; k < 3; ++k) {
      r[k] = static_cast<long long>(rng.next_u64() % 41) - 20;
      t[k] = static_cast<long long>(rng.next_u64() % 9) - 4;
    }
    CHECK(mod_vec(add(r, hadamard(t, n)), n) == mod_vec(r, n));
  }
}

TEST_CASE("hadamard") {
  CHECK(hadamard(ones(3), MultiIndex{4, 5, 6}) == MultiIndex{4, 5, 6});
  CHECK(hadamard(zeros(2), MultiIndex{7, -2}) == MultiIndex{0, 0});
  CHECK(hadamard(MultiIndex{1, 2, 0}, MultiIndex{4, 5, 6}) == MultiIndex{4, 10, 0});
  CHECK_THROWS_AS(hadamard(MultiIndex{1}, MultiIndex{1, 2}), std::domain_error);
}

TEST_CASE("dense matrix helpers") {
  DenseMatrix I = DenseMatrix::identity(3);
  CHECK(max_abs_diff(I * I, I) == 0.0);

  DenseMatrix A(2, 3);
  A(0, 0) = {1.0, 2.0};
  A(1, 2) = {0.0, -1.0};
  DenseMatrix Ah = A.conj_transpose();
  CHECK(Ah.rows() == 3);
  CHECK(Ah(0, 0) == cdbl{1.0, -2.0});
  CHECK(Ah(2, 1) == cdbl{0.0, 1.0});
  CHECK(A.all_finite());
  CHECK(A.frobenius_norm() == doctest::Approx(std::sqrt(6.0)));

  DenseMatrix B(2, 2);
  B(0, 1) = 1.0;
  DenseMatrix K = kron(B, I);
  CHECK(K.rows() == 6);
  CHECK(K(0, 3) == cdbl{1.0, 0.0});
  CHECK(K(2, 5) == cdbl{1.0, 0.0});
  CHECK(K(0, 0) == cdbl{0.0, 0.0});
}

}  // TEST_SUITE
