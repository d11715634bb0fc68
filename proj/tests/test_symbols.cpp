#include <doctest.h>

#include <cmath>
#include <numbers>

#include "alphatoep/rng.hpp"
#include "alphatoep/symbols.hpp"

using namespace alphatoep;

namespace {

SymbolSpec random_symbol(int d, long long degree, uint64_t seed) {
  SplitMix64 rng(seed);
  SymbolSpec s(d);
  MultiIndex box(std::vector<long long>(static_cast<size_t>(d), 2 * degree + 1));
  MultiIndex idx = zeros(d);
  do {
    MultiIndex j = idx;
    for (int k = 0; k < d; ++k) j[k] -= degree;
    s.set(j, rng.next_complex());
  } while (next_in_box(idx, box));
  return s;
}

}  // namespace

TEST_SUITE("symbols") {

TEST_CASE("eval_symbol") {
  CHECK(eval_symbol(symbol_1d({{0, 1.0}}), {0.7}) == cdbl{1.0, 0.0});
  CHECK(std::abs(eval_symbol(symbol_1d({{0, 1.0}, {1, 1.0}}), {0.0}) - 2.0) < 1e-15);

  SymbolSpec laplace = builtin_symbol("laplace1d");
  const double x = std::numbers::pi / 2.0;
  CHECK(std::abs(eval_symbol(laplace, {x}) - (2.0 - 2.0 * std::cos(x))) < 1e-15);
}

TEST_CASE("fourier coefficients from samples") {
  SampledSymbol constant{1, [](const std::vector<double>&) { return cdbl{1.0, 0.0}; }, {}};
  SymbolSpec c = fourier_coeffs_from_samples(constant, MultiIndex{2});
  CHECK(std::abs(c.get(MultiIndex{0}) - 1.0) < 1e-12);
  for (long long j = -2; j <= 2; ++j)
    if (j != 0) CHECK(std::abs(c.get(MultiIndex{j})) < 1e-12);

  SampledSymbol lap{1, [](const std::vector<double>& x) { return cdbl{2.0 - 2.0 * std::cos(x[0]), 0.0}; }, {}};
  SymbolSpec l = fourier_coeffs_from_samples(lap, MultiIndex{1});
  CHECK(std::abs(l.get(MultiIndex{0}) - 2.0) < 1e-12);
  CHECK(std::abs(l.get(MultiIndex{1}) - (-1.0)) < 1e-12);
  CHECK(std::abs(l.get(MultiIndex{-1}) - (-1.0)) < 1e-12);

  // Non-polynomial sampler: compare against the same quadrature at twice the
  // resolution as an independent reference.
  auto expcos = [](const std::vector<double>& x) { return cdbl{std::exp(std::cos(x[0])), 0.0}; };
  SymbolSpec coarse = fourier_coeffs_from_samples({1, expcos, MultiIndex{64}}, MultiIndex{3});
  SymbolSpec fine = fourier_coeffs_from_samples({1, expcos, MultiIndex{128}}, MultiIndex{3});
  for (long long j = -3; j <= 3; ++j)
    CHECK(std::abs(coarse.get(MultiIndex{j}) - fine.get(MultiIndex{j})) < 1e-12);

  SampledSymbol hinted{1, expcos, MultiIndex{4}};
  CHECK_THROWS_AS(fourier_coeffs_from_samples(hinted, MultiIndex{3}), std::invalid_argument);
}

TEST_CASE("autocorrelate") {
  SymbolSpec unit = autocorrelate(symbol_1d({{0, 1.0}}));
  CHECK(unit.coeffs.size() == 1);
  CHECK(unit.get(MultiIndex{0}) == cdbl{1.0, 0.0});

  // Oracle: direct convolution with the reversed conjugate, written out.
  SymbolSpec s = symbol_1d({{0, 1.0}, {1, 1.0}});
  SymbolSpec ac = autocorrelate(s);
  CHECK(ac.get(MultiIndex{-1}) == cdbl{1.0, 0.0});
  CHECK(ac.get(MultiIndex{0}) == cdbl{2.0, 0.0});
  CHECK(ac.get(MultiIndex{1}) == cdbl{1.0, 0.0});

  SymbolSpec lap_ac = autocorrelate(builtin_symbol("laplace1d"));
  CHECK(lap_ac.get(MultiIndex{-2}) == cdbl{1.0, 0.0});
  CHECK(lap_ac.get(MultiIndex{-1}) == cdbl{-4.0, 0.0});
  CHECK(lap_ac.get(MultiIndex{0}) == cdbl{6.0, 0.0});
  CHECK(lap_ac.get(MultiIndex{1}) == cdbl{-4.0, 0.0});
  CHECK(lap_ac.get(MultiIndex{2}) == cdbl{1.0, 0.0});
}

TEST_CASE("autocorrelation evaluates to |f|^2") {
  SplitMix64 rng(7);
  for (int d = 1; d <= 2; ++d) {
    SymbolSpec s = random_symbol(d, 2, 100 + static_cast<uint64_t>(d));
    SymbolSpec ac = autocorrelate(s);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<double> x(static_cast<size_t>(d));
      for (double& xi : x) xi = (2.0 * rng.next_unit() - 1.0) * std::numbers::pi;
      const double direct = std::norm(eval_symbol(s, x));
      CHECK(std::abs(eval_symbol(ac, x).real() - direct) < 1e-12);
      CHECK(std::abs(eval_symbol(ac, x).imag()) < 1e-12);
    }
  }
}

TEST_CASE("folded square symbol") {
  SymbolSpec shift = builtin_symbol("shift1");
  SymbolSpec folded = folded_square_symbol(shift, MultiIndex{2});
  CHECK(folded.coeffs.size() == 1);
  CHECK(folded.get(MultiIndex{0}) == cdbl{2.0, 0.0});

  SymbolSpec s = random_symbol(1, 3, 11);
  SymbolSpec stride1 = folded_square_symbol(s, MultiIndex{1});
  SymbolSpec ac = autocorrelate(s);
  CHECK(stride1.coeffs.size() == ac.coeffs.size());
  for (const auto& [j, c] : ac.coeffs) CHECK(std::abs(stride1.get(j) - c) == 0.0);

  SymbolSpec lap_folded = folded_square_symbol(builtin_symbol("laplace1d"), MultiIndex{2});
  CHECK(lap_folded.get(MultiIndex{-1}) == cdbl{1.0, 0.0});
  CHECK(lap_folded.get(MultiIndex{0}) == cdbl{6.0, 0.0});
  CHECK(lap_folded.get(MultiIndex{1}) == cdbl{1.0, 0.0});
  CHECK(lap_folded.coeffs.size() == 3);

  CHECK_THROWS_AS(folded_square_symbol(s, MultiIndex{0}), std::domain_error);
}

TEST_CASE("fold identity against pointwise averaging") {
  SplitMix64 rng(13);
  auto check_fold = [&](const SymbolSpec& s, const MultiIndex& alpha) {
    SymbolSpec folded = folded_square_symbol(s, alpha);
    const int d = s.d;
    const double alpha_hat = static_cast<double>(product(alpha));
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(static_cast<size_t>(d));
      for (double& xi : x) xi = (2.0 * rng.next_unit() - 1.0) * std::numbers::pi;
      double avg = 0.0;
      MultiIndex j = zeros(d);
      do {
        std::vector<double> y(static_cast<size_t>(d));
        for (int k = 0; k < d; ++k)
          y[static_cast<size_t>(k)] =
              (x[static_cast<size_t>(k)] + 2.0 * std::numbers::pi * static_cast<double>(j[k])) /
              static_cast<double>(alpha[k]);
        avg += std::norm(eval_symbol(s, y));
      } while (next_in_box(j, alpha));
      avg /= alpha_hat;
      CHECK(std::abs(eval_symbol(folded, x).real() - avg) < 1e-10);
    }
  };
  check_fold(random_symbol(1, 3, 21), MultiIndex{2});
  check_fold(random_symbol(1, 4, 22), MultiIndex{3});
  check_fold(random_symbol(1, 2, 23), MultiIndex{4});
  check_fold(random_symbol(2, 2, 24), MultiIndex{2, 3});
}

TEST_CASE("folded coefficients are Hermitian") {
  for (uint64_t seed : {31ULL, 32ULL, 33ULL}) {
    SymbolSpec folded = folded_square_symbol(random_symbol(1, 3, seed), MultiIndex{2});
    CHECK(std::abs(folded.get(MultiIndex{0}).imag()) < 1e-15);
    for (const auto& [j, c] : folded.coeffs) {
      MultiIndex neg = j;
      neg[0] = -j[0];
      CHECK(std::abs(folded.get(neg) - std::conj(c)) < 1e-15);
    }
  }
}

TEST_CASE("theta evaluation") {
  SymbolSpec lap = builtin_symbol("laplace1d");
  ThetaSymbol plain = make_theta(lap, MultiIndex{1});
  for (double x : {0.3, 1.1, -2.0})
    for (double t : {0.0, 0.5, 1.0})
      CHECK(std::abs(theta_eval(plain, {x}, {t}) - std::abs(2.0 - 2.0 * std::cos(x))) < 1e-12);

  ThetaSymbol shifted = make_theta(builtin_symbol("shift1"), MultiIndex{2});
  CHECK(theta_eval(shifted, {0.4}, {1.0}) == 0.0);
  CHECK(std::abs(theta_eval(shifted, {0.4}, {0.25}) - std::numbers::sqrt2) < 1e-12);
  // boundary t = 1/alpha stays on the nonzero branch
  CHECK(std::abs(theta_eval(shifted, {-1.0}, {0.5}) - std::numbers::sqrt2) < 1e-12);
}

TEST_CASE("wrap_coeffs aliases onto the box") {
  SymbolSpec lap = builtin_symbol("laplace1d");
  std::vector<cdbl> a = wrap_coeffs(lap, MultiIndex{6});
  CHECK(a[0] == cdbl{2.0, 0.0});
  CHECK(a[1] == cdbl{-1.0, 0.0});
  CHECK(a[5] == cdbl{-1.0, 0.0});
  CHECK(a[2] == cdbl{0.0, 0.0});
}

}  // TEST_SUITE
