#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "alphatoep/rng.hpp"
#include "alphatoep/spectra.hpp"
#include "alphatoep/structured.hpp"

using namespace alphatoep;

namespace {

double l1_norm(const std::vector<cdbl>& a) {
  double s = 0.0;
  for (const cdbl& z : a) s += std::abs(z);
  return s;
}

void check_spectrum_shape(const SpectrumResult& spec) {
  for (size_t i = 0; i + 1 < spec.values.size(); ++i) CHECK(spec.values[i] >= spec.values[i + 1]);
  for (double v : spec.values) CHECK(v >= 0.0);
  const size_t total = spec.values.size();
  for (long long i = 0; i < spec.structural_zero_count; ++i)
    CHECK(spec.values[total - 1 - static_cast<size_t>(i)] == 0.0);
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("circulant eigenvalues") {
  std::vector<cdbl> constant{cdbl{3.0, -1.0}, 0.0, 0.0, 0.0};
  for (const cdbl& e : circulant_eigs(constant, 4)) CHECK(std::abs(e - cdbl{3.0, -1.0}) < 1e-14);

  std::vector<cdbl> shift{0.0, 1.0};
  std::vector<cdbl> eigs2 = circulant_eigs(shift, 2);
  CHECK(std::abs(eigs2[0] - 1.0) < 1e-14);
  CHECK(std::abs(eigs2[1] + 1.0) < 1e-14);

  // Eigenpair residuals: C f_j = lambda_j f_j with f_j the DFT columns.
  std::vector<cdbl> a = random_coeffs(8, 123);
  DenseMatrix C = circulant(a, MultiIndex{8}).matrix;
  DenseMatrix F = fourier_matrix(MultiIndex{8});
  std::vector<cdbl> eigs = circulant_eigs(a, 8);
  for (long long j = 0; j < 8; ++j) {
    double resid = 0.0;
    for (long long r = 0; r < 8; ++r) {
      cdbl acc{};
      for (long long k = 0; k < 8; ++k) acc += C(r, k) * F(k, j);
      resid = std::max(resid, std::abs(acc - eigs[static_cast<size_t>(j)] * F(r, j)));
    }
    CHECK(resid < 1e-10);
  }
}

TEST_CASE("svd oracle basics") {
  SpectrumResult id = svd_oracle(DenseMatrix::identity(5));
  for (double v : id.values) CHECK(v == doctest::Approx(1.0));

  DenseMatrix D(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = -4.0;
  SpectrumResult d = svd_oracle(D);
  CHECK(d.values[0] == doctest::Approx(4.0));
  CHECK(d.values[1] == doctest::Approx(3.0));

  DenseMatrix N(2, 2);
  N(0, 1) = 1.0;
  SpectrumResult nil = svd_oracle(N);
  CHECK(nil.values[0] == doctest::Approx(1.0));
  CHECK(nil.values[1] == 0.0);

  // Rectangular orientation: values match the conjugate transpose.
  DenseMatrix R(2, 5);
  SplitMix64 rng(9);
  for (long long r = 0; r < 2; ++r)
    for (long long c = 0; c < 5; ++c) R(r, c) = rng.next_complex();
  SpectrumResult wide = svd_oracle(R);
  SpectrumResult tall = svd_oracle(R.conj_transpose());
  CHECK(wide.values.size() == 2);
  CHECK(multiset_max_deviation(wide.values, tall.values) < 1e-12);

  // Frobenius consistency on a random complex matrix.
  DenseMatrix M(7, 7);
  for (long long r = 0; r < 7; ++r)
    for (long long c = 0; c < 7; ++c) M(r, c) = rng.next_complex();
  SpectrumResult spec = svd_oracle(M);
  double sum_sq = 0.0;
  for (double v : spec.values) sum_sq += v * v;
  const double frob_sq = M.frobenius_norm() * M.frobenius_norm();
  CHECK(std::abs(sum_sq - frob_sq) < 1e-10 * frob_sq);
}

TEST_CASE("alpha circulant closed form") {
  // alpha = 1: moduli of the circulant eigenvalues.
  std::vector<cdbl> a = random_coeffs(9, 31);
  SpectrumResult s1 = alpha_circulant_singvals(a, 9, 1);
  std::vector<double> moduli;
  for (const cdbl& e : circulant_eigs(a, 9)) moduli.push_back(std::abs(e));
  CHECK(multiset_max_deviation(s1.values, moduli) < 1e-12);
  CHECK(s1.structural_zero_count == 0);

  std::vector<cdbl> ones4{1.0, 1.0, 0.0, 0.0};
  SpectrumResult s42 = alpha_circulant_singvals(ones4, 4, 2);
  CHECK(s42.values[0] == doctest::Approx(2.0));
  CHECK(s42.values[1] == doctest::Approx(2.0));
  CHECK(s42.values[2] == 0.0);
  CHECK(s42.values[3] == 0.0);
  CHECK(s42.structural_zero_count == 2);
  SpectrumResult s42_oracle = svd_oracle(alpha_circulant(ones4, MultiIndex{4}, MultiIndex{2}).matrix);
  CHECK(multiset_max_deviation(s42.values, s42_oracle.values) < 1e-10);

  std::vector<cdbl> a53 = random_coeffs(5, 32);
  SpectrumResult closed = alpha_circulant_singvals(a53, 5, 3);
  SpectrumResult oracle = svd_oracle(alpha_circulant(a53, MultiIndex{5}, MultiIndex{3}).matrix);
  CHECK(multiset_max_deviation(closed.values, oracle.values) < 1e-10);
  check_spectrum_shape(closed);
}

TEST_CASE("symbol route agrees with the diagonal fold") {
  // n=4, alpha=2, a=(1,1,0,0): sigma_0 = sqrt(|p(0)|^2 + |p(pi)|^2) = 2.
  std::vector<cdbl> ones4{1.0, 1.0, 0.0, 0.0};
  SpectrumResult sym = alpha_circulant_singvals_symbol(ones4, 4, 2);
  CHECK(sym.values[0] == doctest::Approx(2.0));

  // coprime case reduces to |p| sampled on the full grid
  std::vector<cdbl> a = random_coeffs(7, 33);
  SpectrumResult sym7 = alpha_circulant_singvals_symbol(a, 7, 3);
  std::vector<double> moduli;
  for (const cdbl& e : circulant_eigs(a, 7)) moduli.push_back(std::abs(e));
  CHECK(multiset_max_deviation(sym7.values, moduli) < 1e-10);

  for (long long n = 2; n <= 24; ++n)
    for (long long alpha = 1; alpha < n; ++alpha) {
      std::vector<cdbl> r = random_coeffs(n, static_cast<uint64_t>(n * 37 + alpha));
      CHECK(multiset_max_deviation(alpha_circulant_singvals(r, n, alpha).values,
                                   alpha_circulant_singvals_symbol(r, n, alpha).values) < 1e-10);
    }
}

TEST_CASE("frobenius consistency of the closed form") {
  for (long long n : {4LL, 6LL, 9LL, 12LL}) {
    for (long long alpha = 0; alpha <= n; ++alpha) {
      std::vector<cdbl> a = random_coeffs(n, static_cast<uint64_t>(500 + n * 10 + alpha));
      SpectrumResult spec = alpha_circulant_singvals(a, n, alpha);
      DenseMatrix A = alpha_circulant(a, MultiIndex{n}, MultiIndex{alpha}).matrix;
      double sum_sq = 0.0;
      for (double v : spec.values) sum_sq += v * v;
      const double frob_sq = A.frobenius_norm() * A.frobenius_norm();
      CHECK(std::abs(sum_sq - frob_sq) <= 1e-10 * std::max(1.0, frob_sq));
    }
  }
}

TEST_CASE("gram square root") {
  CHECK(max_abs_diff(gram_sqrt({DenseMatrix::identity(4)}), DenseMatrix::identity(4)) < 1e-12);

  DenseMatrix scalar(1, 1);
  scalar(0, 0) = 2.0;
  CHECK(std::abs(gram_sqrt({scalar})(0, 0) - 2.0) < 1e-12);

  SplitMix64 rng(77);
  std::vector<DenseMatrix> blocks;
  for (int b = 0; b < 2; ++b) {
    DenseMatrix B(3, 3);
    for (long long r = 0; r < 3; ++r)
      for (long long c = 0; c < 3; ++c) B(r, c) = rng.next_complex();
    blocks.push_back(std::move(B));
  }
  DenseMatrix root = gram_sqrt(blocks);
  DenseMatrix gram(3, 3);
  for (const DenseMatrix& B : blocks) gram = gram + B.conj_transpose() * B;
  CHECK(max_abs_diff(root * root, gram) < 1e-10);
  CHECK(max_abs_diff(root, root.conj_transpose()) < 1e-12);
}

TEST_CASE("hermitian machinery") {
  SplitMix64 rng(78);
  DenseMatrix M(5, 5);
  for (long long r = 0; r < 5; ++r)
    for (long long c = 0; c < 5; ++c) M(r, c) = rng.next_complex();
  DenseMatrix H = M.conj_transpose() * M;

  auto [evals, U] = hermitian_eig(H);
  DenseMatrix L(5, 5);
  for (long long i = 0; i < 5; ++i) L(i, i) = evals[static_cast<size_t>(i)];
  CHECK(max_abs_diff(U * L * U.conj_transpose(), H) < 1e-10);
  CHECK(max_abs_diff(U * U.conj_transpose(), DenseMatrix::identity(5)) < 1e-12);

  DenseMatrix root = hermitian_sqrt(H);
  CHECK(max_abs_diff(root * root, H) < 1e-10);
}

TEST_CASE("degenerate shift reduction") {
  // one level, alpha = 0: single value sqrt(n) * ||a||_2
  std::vector<cdbl> a = random_coeffs(6, 55);
  SpectrumResult zero = alpha_circulant_singvals(a, 6, 0);
  double norm2 = 0.0;
  for (const cdbl& z : a) norm2 += std::norm(z);
  CHECK(zero.values[0] == doctest::Approx(std::sqrt(6.0 * norm2)));
  for (size_t i = 1; i < 6; ++i) CHECK(zero.values[i] == 0.0);
  CHECK(zero.structural_zero_count == 5);
  SpectrumResult zero_oracle = svd_oracle(alpha_circulant(a, MultiIndex{6}, MultiIndex{0}).matrix);
  CHECK(multiset_max_deviation(zero.values, zero_oracle.values) < 1e-10);

  // 3-level circulant with alpha=(1,2,0): sqrt(n3) scaling of the block Gram values
  MultiIndex n{2, 3, 4};
  std::vector<cdbl> a3 = random_coeffs(product(n), 56);
  SymbolSpec s3 = symbol_from_box_array(a3, n);
  SpectrumResult red = zero_alpha_reduction(s3, n, MultiIndex{1, 2, 0}, MatrixKind::AlphaCirculant);
  SpectrumResult oracle = svd_oracle(alpha_circulant(a3, n, MultiIndex{1, 2, 0}).matrix);
  CHECK(multiset_max_deviation(red.values, oracle.values) < 1e-10);
  CHECK(red.structural_zero_count == 24 - 6);
  check_spectrum_shape(red);

  // 3-level Toeplitz with alpha=(0,1,2): sqrt(n1) scaling
  SymbolSpec st(3);
  SplitMix64 rng(57);
  for (long long j1 = 0; j1 <= 1; ++j1)
    for (long long j2 = -2; j2 <= 2; ++j2)
      for (long long j3 = -6; j3 <= 3; ++j3) st.set(MultiIndex{j1, j2, j3}, rng.next_complex());
  SpectrumResult redt = zero_alpha_reduction(st, n, MultiIndex{0, 1, 2}, MatrixKind::AlphaToeplitz);
  SpectrumResult oraclet = svd_oracle(alpha_toeplitz(st, n, MultiIndex{0, 1, 2}).matrix);
  CHECK(multiset_max_deviation(redt.values, oraclet.values) < 1e-10);
  CHECK(redt.structural_zero_count == 24 - 12);

  CHECK_THROWS_AS(zero_alpha_reduction(s3, n, MultiIndex{1, 1, 1}, MatrixKind::AlphaCirculant), std::domain_error);
}

TEST_CASE("single nonzero shift component") {
  MultiIndex n{3, 4};
  std::vector<cdbl> a = random_coeffs(product(n), 60);
  SpectrumResult formula = single_nonzero_alpha_singvals(a, n, 1, 2);
  SpectrumResult oracle = svd_oracle(alpha_circulant(a, n, MultiIndex{0, 2}).matrix);
  CHECK(multiset_max_deviation(formula.values, oracle.values) < 1e-10);
  SpectrumResult red = zero_alpha_reduction(symbol_from_box_array(a, n), n, MultiIndex{0, 2}, MatrixKind::AlphaCirculant);
  CHECK(multiset_max_deviation(formula.values, red.values) < 1e-10);

  MultiIndex n2{2, 4};
  std::vector<cdbl> a2 = random_coeffs(product(n2), 61);
  SpectrumResult f2 = single_nonzero_alpha_singvals(a2, n2, 1, 1);
  SpectrumResult o2 = svd_oracle(alpha_circulant(a2, n2, MultiIndex{0, 1}).matrix);
  CHECK(multiset_max_deviation(f2.values, o2.values) < 1e-10);

  // nonzero component in the middle level
  MultiIndex n3{2, 3, 2};
  std::vector<cdbl> a3 = random_coeffs(product(n3), 62);
  SpectrumResult f3 = single_nonzero_alpha_singvals(a3, n3, 1, 2);
  SpectrumResult o3 = svd_oracle(alpha_circulant(a3, n3, MultiIndex{0, 2, 0}).matrix);
  CHECK(multiset_max_deviation(f3.values, o3.values) < 1e-10);

  // alpha equal to the level size reduces to the fully degenerate case
  SpectrumResult f4 = single_nonzero_alpha_singvals(a2, n2, 1, 4);
  SpectrumResult o4 = svd_oracle(alpha_circulant(a2, n2, MultiIndex{0, 4}).matrix);
  CHECK(multiset_max_deviation(f4.values, o4.values) < 1e-10);
  CHECK(f4.structural_zero_count == product(n2) - 1);
}

TEST_CASE("multilevel strictly positive shifts") {
  // alpha = e: moduli of the multilevel eigenvalues
  MultiIndex n{2, 3};
  std::vector<cdbl> a = random_coeffs(product(n), 70);
  SpectrumResult closed = multilevel_alpha_circulant_singvals(a, n, MultiIndex{1, 1});
  std::vector<double> moduli;
  for (const cdbl& e : multilevel_circulant_eigs(a, n)) moduli.push_back(std::abs(e));
  CHECK(multiset_max_deviation(closed.values, moduli) < 1e-12);

  MultiIndex n46{4, 6};
  std::vector<cdbl> a46 = random_coeffs(product(n46), 71);
  SpectrumResult c46 = multilevel_alpha_circulant_singvals(a46, n46, MultiIndex{2, 3});
  SpectrumResult o46 = svd_oracle(alpha_circulant(a46, n46, MultiIndex{2, 3}).matrix);
  CHECK(multiset_max_deviation(c46.values, o46.values) < 1e-10);
  CHECK(c46.structural_zero_count == 24 - 2 * 2);

  // separable coefficients: values are products of the per-level values
  std::vector<cdbl> a1 = random_coeffs(4, 72);
  std::vector<cdbl> a2 = random_coeffs(6, 73);
  std::vector<cdbl> tensor(24);
  for (long long i = 0; i < 4; ++i)
    for (long long j = 0; j < 6; ++j) tensor[static_cast<size_t>(i * 6 + j)] = a1[static_cast<size_t>(i)] * a2[static_cast<size_t>(j)];
  SpectrumResult sep = multilevel_alpha_circulant_singvals(tensor, n46, MultiIndex{2, 3});
  std::vector<double> products;
  for (double v1 : alpha_circulant_singvals(a1, 4, 2).values)
    for (double v2 : alpha_circulant_singvals(a2, 6, 3).values) products.push_back(v1 * v2);
  CHECK(multiset_max_deviation(sep.values, products) < 1e-10);

  // per-level reduction mod n_k applies before the fold
  SpectrumResult big = multilevel_alpha_circulant_singvals(a46, n46, MultiIndex{6, 9});
  SpectrumResult bigo = svd_oracle(alpha_circulant(a46, n46, MultiIndex{6, 9}).matrix);
  CHECK(multiset_max_deviation(big.values, bigo.values) < 1e-10);
}

TEST_CASE("permutation invariance of multilevel spectra") {
  MultiIndex n{2, 3, 4};
  std::vector<cdbl> a = random_coeffs(product(n), 80);
  for (const MultiIndex& alpha : {MultiIndex{1, 2, 3}, MultiIndex{2, 1, 2}, MultiIndex{1, 2, 0}}) {
    StructuredMatrix A = alpha_circulant(a, n, alpha);
    SpectrumResult base = svd_oracle(A.matrix);
    for (const std::vector<int>& perm : {std::vector<int>{2, 0, 1}, {1, 0, 2}, {2, 1, 0}}) {
      StructuredMatrix P = permute_levels(A, perm);
      CHECK(multiset_max_deviation(svd_oracle(P.matrix).values, base.values) < 1e-10);
    }
  }
}

TEST_CASE("closed form dispatcher") {
  MultiIndex n{6};
  std::vector<cdbl> a = random_coeffs(6, 90);
  SymbolSpec s = symbol_from_box_array(a, n);
  SpectrumResult viaDispatch = closed_form_singvals(s, n, MultiIndex{4}, MatrixKind::AlphaCirculant);
  CHECK(multiset_max_deviation(viaDispatch.values, alpha_circulant_singvals(a, 6, 4).values) < 1e-12);

  CHECK_THROWS_AS(closed_form_singvals(s, n, MultiIndex{2}, MatrixKind::AlphaToeplitz), std::domain_error);

  SpectrumResult toep = closed_form_singvals(s, n, MultiIndex{0}, MatrixKind::AlphaToeplitz);
  CHECK(toep.provenance == Provenance::Reduction);
}

TEST_CASE("closed form against the oracle across the sweep") {
  for (long long n = 2; n <= 16; ++n)
    for (long long alpha = 0; alpha <= n + 3; ++alpha) {
      std::vector<cdbl> a = random_coeffs(n, static_cast<uint64_t>(n * 997 + alpha));
      SpectrumResult closed = alpha_circulant_singvals(a, n, alpha);
      SpectrumResult oracle = svd_oracle(alpha_circulant(a, MultiIndex{n}, MultiIndex{alpha}).matrix);
      CHECK(multiset_max_deviation(closed.values, oracle.values) <= 1e-10 * std::max(1.0, l1_norm(a)));
      check_spectrum_shape(closed);
    }
}

}  // TEST_SUITE
