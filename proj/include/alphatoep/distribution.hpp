#pragma once

#include <string>
#include <vector>

#include "alphatoep/core.hpp"
#include "alphatoep/spectra.hpp"
#include "alphatoep/symbols.hpp"

namespace alphatoep {

/// Continuous test function on [0, inf): hats and truncated Gaussian bumps
/// localize spectral mass, clamps give moment-like summaries (bounded, hence
/// admissible for bounded-spectrum families).
struct TestFunction {
  enum class Kind { Hat, GaussianBump, Clamp };

  Kind kind = Kind::Clamp;
  double p1 = 0.0;  // Hat/GaussianBump: center; Clamp: cap
  double p2 = 0.0;  // Hat: half-width; GaussianBump: scale
  double p3 = 0.0;  // GaussianBump: truncation radius

  static TestFunction hat(double center, double half_width);
  static TestFunction bump(double center, double scale, double radius);
  static TestFunction clamp(double cap);

  double operator()(double x) const;
  double sup_abs() const;  // sup over [0, inf)
  std::string id() const;
};

/// Mean of F over the spectrum: (1/min_dim) sum_j F(sigma_j).
double sigma_functional(const TestFunction& F, const SpectrumResult& spec, long long min_dim);

/// Limit functional of the distribution symbol theta: the averaged integral
/// of F(theta) over Q^d x [0,1]^d, with the box variable integrated
/// analytically (it only selects the branch weights 1/prod(alpha) and
/// 1 - 1/prod(alpha)). Periodic-grid quadrature refined x2 until successive
/// values differ by < 1e-9; non-convergence raises a numerical error.
double analytic_limit(const TestFunction& F, const ThetaSymbol& th);

enum class SpectrumMode { ClosedForm, Oracle };

struct DistributionRecord {
  MultiIndex n;
  long long n_hat = 0;
  std::vector<double> sigma_values;  // one per test function
  std::vector<double> abs_errors;
};

struct DistributionReport {
  std::string family;
  std::vector<std::string> function_ids;
  std::vector<double> limits;               // one per test function
  std::vector<DistributionRecord> records;  // sorted by n_hat ascending
  std::vector<bool> error_decreasing;       // first-to-last trend per function

  bool all_decreasing() const;
};

/// Convergence experiment for the matrix family generated by s with shift
/// alpha over the given sizes. Toeplitz kind uses the oracle (closed form
/// only exists through the degenerate reduction); circulant kind admits
/// closed-form spectra at any size. The trend flag treats errors at the
/// round-off floor (1e-9) as converged.
DistributionReport distribution_experiment(const SymbolSpec& s, const MultiIndex& alpha,
                                           const std::vector<MultiIndex>& sizes,
                                           const std::vector<TestFunction>& F_family, SpectrumMode mode,
                                           MatrixKind kind = MatrixKind::AlphaToeplitz);

/// |Sigma(F,A) - Sigma(F,B)| for spectra of equal dimension.
double equal_distribution_gap(const SpectrumResult& a, const SpectrumResult& b, const TestFunction& F);

struct GcdRegimeRecord {
  long long n = 0;
  long long g = 0;
  long long n_alpha = 0;
  long long structural_zeros = 0;
  double sigma_value = 0.0;  // mean of F over the closed-form spectrum
};

struct GcdRegimeReport {
  long long alpha = 0;
  std::vector<GcdRegimeRecord> records;

  double mean_sigma(long long gcd_class_min, long long gcd_class_max) const;
};

/// Circulant sweep splitting sizes by gcd(n, alpha): the gcd > 1 subsequence
/// collapses a 1 - 1/gcd fraction of the spectrum to structural zeros while
/// the coprime subsequence keeps a full permutation spectrum. Coefficients
/// are taken at indices 0..len-1 and extended by zero per size.
GcdRegimeReport gcd_regime_probe(const std::vector<cdbl>& a, long long alpha, const std::vector<long long>& sizes,
                                 const TestFunction& F);

std::vector<TestFunction> default_test_functions();

}  // namespace alphatoep
