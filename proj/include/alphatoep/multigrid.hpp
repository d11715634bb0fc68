#pragma once

#include <vector>

#include "alphatoep/core.hpp"
#include "alphatoep/spectra.hpp"
#include "alphatoep/symbols.hpp"

namespace alphatoep {

/// Coarse-grid projection setup: fine circulant A_n = C_n(f) (f real
/// nonnegative, so A_n is PSD up to round-off), prolongation smoother
/// P_n = C_n(q), coarsening factor alpha (classically 2 with alpha | n).
struct ProjectionSetup {
  long long n = 0;
  long long alpha = 2;
  SymbolSpec f;
  SymbolSpec q;
};

/// Symbol of P^* A P in coefficient space: |q|^2 f, exact for trigonometric
/// polynomials.
SymbolSpec projected_symbol(const ProjectionSetup& setup);

/// Dense P^* A P, the matrix route used by the cross checks.
DenseMatrix galerkin_matrix(const ProjectionSetup& setup);

/// Max deviation of a square matrix from the circulant built on its first
/// column (0 for exactly circulant input).
double circulant_defect(const DenseMatrix& A);

/// Coarse-grid operator Ztilde^T P^* A P Ztilde of size n/alpha. Requires
/// alpha | n; the result is verified to be circulant.
StructuredMatrix project(const ProjectionSetup& setup);

/// Closed-form eigenvalues of the coarse operator: the alpha-fold average of
/// the projected symbol on the coarse grid, (1/alpha) sum_l g((x_j+2pi l)/alpha).
std::vector<double> projected_eigs(const ProjectionSetup& setup);

/// Closed-form singular values of (P^* A P)^{1/2} Ztilde:
/// (1/sqrt(alpha)) sqrt(sum_l g((x_j+2pi l)/alpha)) on the coarse grid.
SpectrumResult projector_singvals(const ProjectionSetup& setup);

/// Projection for arbitrary 1 <= alpha < n (divisibility not required).
/// Structure preservation is only guaranteed in the divisible case, so the
/// circulant defect is reported instead of enforced; coarsening is false
/// when gcd(n, alpha) = 1 (the projector is a full permutation).
struct GeneralProjection {
  StructuredMatrix coarse;
  double defect = 0.0;
  bool coarsening = false;
};

GeneralProjection project_general(const ProjectionSetup& setup);

/// Fold minima for a symbol with paired zeros at x0 and x0 + pi: the
/// two-fold average vanishes on the coarse grid (both branches hit zeros
/// simultaneously) while an alternative factor need not.
struct PathologyProbe {
  long long n = 0;
  double f_at_x0 = 0.0;
  double f_at_x0_plus_pi = 0.0;
  long long alt_alpha = 3;
  double min_fold_alpha2 = 0.0;
  double min_fold_alt = 0.0;
  bool alpha2_retains_zero = false;
};

PathologyProbe pathological_symmetry_probe(const SymbolSpec& f, double x0, long long n, long long alt_alpha = 3);

}  // namespace alphatoep
