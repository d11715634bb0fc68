#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "alphatoep/core.hpp"

namespace alphatoep {

/// Generating function represented by its finitely supported Fourier
/// coefficients: f(x) = sum_j coeffs[j] * e^{i<j,x>}, j a d-index.
struct SymbolSpec {
  int d = 1;
  std::map<MultiIndex, cdbl> coeffs;  // no stored exact-zero entries

  SymbolSpec() = default;
  explicit SymbolSpec(int dims) : d(dims) {}

  void set(const MultiIndex& j, cdbl value);
  cdbl get(const MultiIndex& j) const;  // 0 for absent indices
  double l1_norm() const;
};

/// One-level convenience constructor from (index, coefficient) pairs.
SymbolSpec symbol_1d(std::initializer_list<std::pair<long long, cdbl>> entries);

/// Builtin symbols exposed by the CLI.
SymbolSpec builtin_symbol(const std::string& name);  // "laplace1d" = 2-2cos x, "shift1" = 1+e^{ix}

/// View of a lexicographic coefficient array over the box [0,n) as a symbol.
SymbolSpec symbol_from_box_array(const std::vector<cdbl>& a, const MultiIndex& n);

cdbl eval_symbol(const SymbolSpec& s, const std::vector<double>& x);

/// 2pi-periodic sampled function; the grid hint gives the per-level
/// quadrature size (0 entries mean "use the default 4*(cutoff+1)").
struct SampledSymbol {
  int d = 1;
  std::function<cdbl(const std::vector<double>&)> sampler;
  MultiIndex grid_hint;
};

/// Fourier coefficients for |j_k| <= cutoff_k by the composite rectangle rule
/// on a uniform periodic grid. Exact for trigonometric polynomials of degree
/// < grid size - cutoff.
SymbolSpec fourier_coeffs_from_samples(const SampledSymbol& g, const MultiIndex& cutoff);

/// Coefficient sequence of |f|^2: out[k] = sum_j a_{j+k} conj(a_j).
SymbolSpec autocorrelate(const SymbolSpec& s);

/// Coefficient convolution, i.e. the symbol of the pointwise product.
SymbolSpec multiply_symbols(const SymbolSpec& a, const SymbolSpec& b);

/// Symbol whose coefficient at j is autocorrelate(s)[alpha o j]: the
/// alpha-fold average of |f|^2, computed exactly in coefficient space.
/// alpha must be strictly positive componentwise.
SymbolSpec folded_square_symbol(const SymbolSpec& s, const MultiIndex& alpha);

/// Distribution symbol theta(x,t): sqrt of the folded square on the block
/// t in [0, 1/alpha] (componentwise, boundary included), zero elsewhere.
struct ThetaSymbol {
  SymbolSpec base;   // coefficients of the folded square
  MultiIndex alpha;  // strictly positive
};

ThetaSymbol make_theta(const SymbolSpec& f, const MultiIndex& alpha);

double theta_eval(const ThetaSymbol& th, const std::vector<double>& x, const std::vector<double>& t);

/// First column of the circulant generated by s at size n: coefficients
/// aliased into the box [0,n) componentwise.
std::vector<cdbl> wrap_coeffs(const SymbolSpec& s, const MultiIndex& n);

}  // namespace alphatoep
